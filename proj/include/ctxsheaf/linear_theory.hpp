// Copyright 2026 The ctxsheaf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file linear_theory.hpp
 * @brief R-linear equations fibred over contexts, theories of models,
 * All-vs-Nothing decisions and affine closures.
 *
 * Outcomes 0..k-1 are read as ring elements of Z/nZ, so a theory over Z/nZ
 * only applies to models with k <= n.
 */
#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ctxsheaf/errors.hpp"
#include "ctxsheaf/model.hpp"
#include "ctxsheaf/ring.hpp"
#include "ctxsheaf/scenario.hpp"

namespace ctxsheaf {

/// sum_m a(m) x_m = b over the measurements of one cover context, with
/// coefficients listed in the order of that context.
struct LinearEquation {
  std::size_t context = 0;
  Vector coefficients;
  Integer constant = 0;

  friend bool operator==(const LinearEquation&, const LinearEquation&) = default;
  friend bool operator<(const LinearEquation& a, const LinearEquation& b) {
    return std::tie(a.context, a.coefficients, a.constant) <
           std::tie(b.context, b.coefficients, b.constant);
  }
};

struct Theory {
  RingSpec ring;
  std::vector<LinearEquation> equations;

  /// Reduces coefficients, drops 0 = 0, sorts and removes duplicates.
  void canonicalize() {
    for (auto& eq : equations) {
      for (auto& a : eq.coefficients) a = ring.reduce(a);
      eq.constant = ring.reduce(eq.constant);
    }
    std::erase_if(equations, [](const LinearEquation& eq) {
      return eq.constant == 0 &&
             std::all_of(eq.coefficients.begin(), eq.coefficients.end(),
                         [](const Integer& a) { return a == 0; });
    });
    std::sort(equations.begin(), equations.end());
    equations.erase(std::unique(equations.begin(), equations.end()), equations.end());
  }

  std::size_t size() const { return equations.size(); }
};

/// "x + 2y = 1 (mod 3)" style rendering over the context labels.
inline std::string format_equation(const Scenario& scn, const RingSpec& ring,
                                   const LinearEquation& eq) {
  std::string out;
  const Domain& ctx = scn.context(eq.context);
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    const Integer& a = eq.coefficients.at(i);
    if (a == 0) continue;
    if (!out.empty()) out += " + ";
    if (a != 1) out += a.str() + "*";
    out += scn.measurements()[ctx[i]];
  }
  if (out.empty()) out = "0";
  out += " = " + eq.constant.str();
  if (ring.is_finite()) out += " (mod " + std::to_string(ring.modulus()) + ")";
  return out;
}

namespace detail {

inline void require_coercible(const Scenario& scn, const RingSpec& ring) {
  if (ring.is_finite() && scn.outcome_count() > ring.modulus())
    throw ValidationError("outcome alphabet of size " +
                          std::to_string(scn.outcome_count()) +
                          " is not contained in " + ring.name());
}

inline void require_finite(const RingSpec& ring, const char* what) {
  if (!ring.is_finite())
    throw UnsupportedRingError(std::string(what) + " requires a finite ring, got " +
                               ring.name());
}

inline Integer evaluate(const RingSpec& ring, const Vector& coefficients,
                        const Assignment& values) {
  Integer acc = 0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += coefficients[i] * values[i];
  return ring.reduce(acc);
}

/// Same scenario with outcome alphabet {0..n-1}.
inline Scenario with_outcome_count(const Scenario& scn, std::size_t n) {
  return Scenario(scn.measurements(), scn.cover(), n);
}

}  // namespace detail

/// s |= phi, evaluated on s restricted to the context of phi.
inline bool satisfies(const Scenario& scn, const RingSpec& ring, const Section& s,
                      const LinearEquation& eq) {
  const Domain& ctx = scn.context(eq.context);
  Section r = restrict_section(s, ctx);
  for (Outcome v : r.values)
    if (ring.is_finite() && v >= ring.modulus())
      throw ValidationError("outcome " + std::to_string(v) + " is not an element of " +
                            ring.name());
  return detail::evaluate(ring, eq.coefficients, r.values) == ring.reduce(eq.constant);
}

/// Generators of the equations satisfied by every section of each S(C):
/// per context, the solution module of { sum_i a_i s_i - b = 0 : s in S(C) }
/// in the unknowns (a_1, ..., a_m, b).
inline Theory theory_of_model(const EmpiricalModel& model, const RingSpec& ring) {
  detail::require_finite(ring, "theory_of_model");
  const Scenario& scn = model.scenario();
  detail::require_coercible(scn, ring);
  Theory th{ring, {}};
  for (std::size_t c = 0; c < scn.context_count(); ++c) {
    const std::size_t m = scn.context(c).size();
    const auto& sup = model.support(c);
    RingMatrix a(ring, sup.size(), m + 1);
    for (std::size_t r = 0; r < sup.size(); ++r) {
      for (std::size_t i = 0; i < m; ++i) a.set(r, i, sup[r][i]);
      a.set(r, m, -1);
    }
    for (const Vector& k : kernel_generators(a))
      th.equations.push_back({c, Vector(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(m)),
                              k[m]});
  }
  th.canonicalize();
  return th;
}

/// Sections over U in the scenario's alphabet satisfying every equation
/// whose context is contained in U.
inline std::vector<Section> solutions(const Theory& th, const Scenario& scn,
                                      const Domain& u) {
  detail::require_coercible(scn, th.ring);
  std::vector<const LinearEquation*> relevant;
  for (const auto& eq : th.equations)
    if (is_subset(scn.context(eq.context), u)) relevant.push_back(&eq);
  std::vector<Section> out;
  for (Section& s : sections_of(scn, u)) {
    bool ok = std::all_of(relevant.begin(), relevant.end(), [&](const LinearEquation* eq) {
      return satisfies(scn, th.ring, s, *eq);
    });
    if (ok) out.push_back(std::move(s));
  }
  return out;
}

/// S(C) = solutions of the theory on each cover context.
inline EmpiricalModel model_of_theory(const Theory& th, const Scenario& scn) {
  std::vector<std::vector<Assignment>> sup(scn.context_count());
  for (std::size_t c = 0; c < scn.context_count(); ++c) {
    for (Section& s : solutions(th, scn, scn.context(c))) sup[c].push_back(std::move(s.values));
    if (sup[c].empty())
      throw DegenerateModelError("theory has no solution on context " +
                                 scn.label(scn.context(c)));
  }
  return EmpiricalModel(scn, std::move(sup));
}

// ---------------------------------------------------------------------------
// All-vs-Nothing.

/// The theory as one system over the unknowns X.
inline LinearSystem global_system(const Theory& th, const Scenario& scn) {
  LinearSystem sys{RingMatrix(th.ring, th.equations.size(), scn.measurement_count()), {}};
  for (std::size_t r = 0; r < th.equations.size(); ++r) {
    const auto& eq = th.equations[r];
    const Domain& ctx = scn.context(eq.context);
    for (std::size_t i = 0; i < ctx.size(); ++i) sys.matrix.add(r, ctx[i], eq.coefficients[i]);
    sys.rhs.push_back(th.ring.reduce(eq.constant));
  }
  return sys;
}

struct AvnResult {
  bool avn = false;
  Theory theory;
  LinearSystem system;
  /// A global assignment X -> R satisfying the theory, when consistent.
  std::optional<Vector> solution;
  /// y with y*A = 0 and y*b != 0, when inconsistent.
  std::optional<Vector> witness;
};

namespace detail {

inline AvnResult decide_avn(Theory th, LinearSystem sys) {
  AvnResult out{false, std::move(th), std::move(sys), std::nullopt, std::nullopt};
  SolveResult res = solve_linear_system(out.system);
  if (res.solvable) {
    out.solution = std::move(res.solution);
  } else {
    out.avn = true;
    out.witness = inconsistency_witness(out.system);
    if (!out.witness)
      throw SelfCheckFailure("unsolvable system without an inconsistency witness");
  }
  return out;
}

}  // namespace detail

/// AvN_R(S): the R-linear theory of S has no global solution.
inline AvnResult is_avn(const EmpiricalModel& model, const RingSpec& ring) {
  Theory th = theory_of_model(model, ring);
  LinearSystem sys = global_system(th, model.scenario());
  return detail::decide_avn(std::move(th), std::move(sys));
}

/// AvN_R(S, s0): no solution of the theory extends s0.
inline AvnResult is_avn_at(const EmpiricalModel& model, const Section& s0,
                           const RingSpec& ring) {
  if (!model.locate(s0))
    throw PreconditionError("is_avn_at: section " + model.scenario().format_section(s0) +
                            " is not in the support of a context");
  Theory th = theory_of_model(model, ring);
  LinearSystem sys = global_system(th, model.scenario());
  RingMatrix a(ring, sys.matrix.rows() + s0.domain.size(), sys.matrix.cols());
  for (std::size_t r = 0; r < sys.matrix.rows(); ++r)
    for (std::size_t c = 0; c < sys.matrix.cols(); ++c) a.set(r, c, sys.matrix.at(r, c));
  for (std::size_t i = 0; i < s0.domain.size(); ++i) {
    a.set(sys.matrix.rows() + i, s0.domain[i], 1);
    sys.rhs.push_back(ring.reduce(s0.values[i]));
  }
  sys.matrix = std::move(a);
  return detail::decide_avn(std::move(th), std::move(sys));
}

// ---------------------------------------------------------------------------
// Affine closure.

/// aff(S) over Z/nZ: s_1 plus the additive subgroup generated by the
/// differences s_i - s_1. Every affine combination sum c_i s_i with
/// sum c_i = 1 equals s_1 + sum c_i (s_i - s_1), and conversely.
inline std::vector<Assignment> affine_closure(const std::vector<Assignment>& points,
                                              const RingSpec& ring) {
  detail::require_finite(ring, "affine_closure");
  if (points.empty()) return {};
  const auto n = static_cast<Outcome>(ring.modulus());
  const std::size_t m = points.front().size();
  auto add = [&](const Assignment& x, const Assignment& y) {
    Assignment z(m);
    for (std::size_t i = 0; i < m; ++i) z[i] = static_cast<Outcome>((x[i] + y[i]) % n);
    return z;
  };
  std::vector<Assignment> gens;
  for (const auto& p : points) {
    Assignment d(m);
    for (std::size_t i = 0; i < m; ++i)
      d[i] = static_cast<Outcome>((p[i] % n + n - points.front()[i] % n) % n);
    gens.push_back(std::move(d));
  }
  std::set<Assignment> group{Assignment(m, 0)};
  std::deque<Assignment> queue{Assignment(m, 0)};
  while (!queue.empty()) {
    Assignment x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Assignment y = add(x, g);
      if (group.insert(y).second) queue.push_back(std::move(y));
    }
  }
  Assignment base(m);
  for (std::size_t i = 0; i < m; ++i) base[i] = points.front()[i] % n;
  std::vector<Assignment> out;
  for (const auto& g : group) out.push_back(add(base, g));
  std::sort(out.begin(), out.end());
  return out;
}

/// Aff S over Z/nZ. The result lives over the alphabet {0..n-1}.
inline EmpiricalModel affine_closure_model(const EmpiricalModel& model,
                                           const RingSpec& ring) {
  if (ring.is_integers())
    throw UnsupportedRingError("affine closure over Z may be infinite");
  detail::require_coercible(model.scenario(), ring);
  std::vector<std::vector<Assignment>> sup;
  for (const auto& rows : model.supports()) sup.push_back(affine_closure(rows, ring));
  return EmpiricalModel(
      detail::with_outcome_count(model.scenario(), static_cast<std::size_t>(ring.modulus())),
      std::move(sup));
}

}  // namespace ctxsheaf
