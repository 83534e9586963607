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
 * @file cohomology.hpp
 * @brief Cech cochains of the presheaf F_R S of formal R-linear combinations
 * of supported sections, and the cohomological obstruction of a section.
 *
 * Cochain bases: q-simplices in canonical order, and within a simplex the
 * sections of S(|sigma|) in lexicographic order. S(|sigma|) is the image of
 * the support of the first context of sigma, which for no-signalling models
 * is the image of every context containing |sigma|.
 */
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxsheaf/errors.hpp"
#include "ctxsheaf/model.hpp"
#include "ctxsheaf/ring.hpp"
#include "ctxsheaf/scenario.hpp"

namespace ctxsheaf {

/// Weighted sections over a fixed domain; missing sections have weight 0.
struct FormalLinearCombination {
  RingSpec ring;
  Domain domain;
  std::map<Assignment, Integer> weights;

  /// Pushforward along restriction to a subdomain.
  FormalLinearCombination restrict_to(const Domain& target) const {
    auto pos = positions_in(target, domain);
    FormalLinearCombination out{ring, target, {}};
    for (const auto& [s, w] : weights) {
      Integer& acc = out.weights[project(s, pos)];
      acc = ring.reduce(acc + w);
    }
    std::erase_if(out.weights, [](const auto& kv) { return kv.second == 0; });
    return out;
  }

  Integer total() const {
    Integer acc = 0;
    for (const auto& kv : weights) acc += kv.second;
    return ring.reduce(acc);
  }

  friend bool operator==(const FormalLinearCombination&,
                         const FormalLinearCombination&) = default;
};

/// Canonical bases of the cochain groups C^0 .. C^{top}.
class CochainComplex {
 public:
  CochainComplex(const EmpiricalModel& model, std::size_t max_q)
      : nerve_(build_nerve(model.scenario(), max_q + 1)) {
    for (std::size_t q = 0; q < nerve_.layer_count(); ++q) {
      std::vector<std::vector<Assignment>> layer;
      std::vector<std::size_t> offsets;
      std::size_t total = 0;
      for (const Simplex& s : nerve_.simplices(q)) {
        offsets.push_back(total);
        layer.push_back(model.restriction_image(s.contexts.front(), s.intersection));
        total += layer.back().size();
      }
      bases_.push_back(std::move(layer));
      offsets_.push_back(std::move(offsets));
      dims_.push_back(total);
    }
  }

  const Nerve& nerve() const { return nerve_; }

  /// rank of C^q (0 when there are no q-simplices).
  std::size_t dimension(std::size_t q) const { return q < dims_.size() ? dims_[q] : 0; }

  const std::vector<Assignment>& sections(std::size_t q, std::size_t simplex) const {
    return bases_.at(q).at(simplex);
  }

  std::size_t index(std::size_t q, std::size_t simplex, const Assignment& s) const {
    const auto& secs = bases_.at(q).at(simplex);
    auto it = std::lower_bound(secs.begin(), secs.end(), s);
    if (it == secs.end() || *it != s)
      throw SelfCheckFailure("restricted section missing from the cochain basis");
    return offsets_[q][simplex] + static_cast<std::size_t>(it - secs.begin());
  }

  /// Matrix of delta^q : C^q -> C^{q+1}.
  RingMatrix coboundary(std::size_t q, const RingSpec& ring) const {
    RingMatrix d(ring, dimension(q + 1), dimension(q));
    const auto& upper = nerve_.simplices(q + 1);
    for (std::size_t si = 0; si < upper.size(); ++si) {
      const Simplex& sigma = upper[si];
      for (std::size_t j = 0; j < sigma.contexts.size(); ++j) {
        auto tau = nerve_.find(sigma.face(j));
        if (!tau) throw SelfCheckFailure("nerve is missing a face");
        const Simplex& face = nerve_.simplices(q)[*tau];
        auto pos = positions_in(sigma.intersection, face.intersection);
        const Integer sign = (j % 2 == 0) ? 1 : -1;
        const auto& secs = sections(q, *tau);
        for (std::size_t u = 0; u < secs.size(); ++u)
          d.add(index(q + 1, si, project(secs[u], pos)), offsets_[q][*tau] + u, sign);
      }
    }
    return d;
  }

 private:
  Nerve nerve_;
  std::vector<std::vector<std::vector<Assignment>>> bases_;
  std::vector<std::vector<std::size_t>> offsets_;
  std::vector<std::size_t> dims_;
};

namespace detail {

inline void require_no_signalling(const EmpiricalModel& model) {
  auto v = check_no_signalling(model);
  if (!v) {
    const Scenario& scn = model.scenario();
    throw PreconditionError(
        "cohomology requires a no-signalling model; " +
        scn.label(scn.context(v.witness->first_context)) + " and " +
        scn.label(scn.context(v.witness->second_context)) + " disagree at " +
        scn.format_section(v.witness->overlap_section));
  }
}

inline void require_connected(const Scenario& scn) {
  auto comps = connected_components(scn);
  if (comps.size() != 1)
    throw ComponentError("cover has " + std::to_string(comps.size()) +
                         " connected components; analyse each component separately");
}

/// Checks s0 in S(C0) and returns the row index.
inline std::size_t require_supported(const EmpiricalModel& model, std::size_t c0,
                                     const Section& s0) {
  const Scenario& scn = model.scenario();
  if (c0 >= scn.context_count()) throw PreconditionError("context index out of range");
  if (s0.domain != scn.context(c0) || !model.contains(c0, s0.values))
    throw PreconditionError("section " + scn.format_section(s0) +
                            " is not in the support of " + scn.label(scn.context(c0)));
  const auto& sup = model.support(c0);
  return static_cast<std::size_t>(std::lower_bound(sup.begin(), sup.end(), s0.values) -
                                  sup.begin());
}

}  // namespace detail

/// delta^q over R in the canonical bases.
inline RingMatrix coboundary_matrix(const EmpiricalModel& model, std::size_t q,
                                    const RingSpec& ring) {
  detail::require_no_signalling(model);
  return CochainComplex(model, q + 1).coboundary(q, ring);
}

/// The compatible-family system: unknowns r_C(s) for s in S(C), one
/// pushforward equality per 1-simplex and section of the overlap, and
/// r_{C0} = 1*s0.
inline LinearSystem obstruction_system(const EmpiricalModel& model, std::size_t c0,
                                       const Section& s0, const RingSpec& ring) {
  detail::require_no_signalling(model);
  detail::require_connected(model.scenario());
  const std::size_t row0 = detail::require_supported(model, c0, s0);
  CochainComplex cx(model, 0);
  RingMatrix d0 = cx.coboundary(0, ring);
  const std::size_t fix = model.support(c0).size();
  const std::size_t offset = cx.index(0, c0, model.support(c0).front());
  LinearSystem sys{RingMatrix(ring, d0.rows() + fix, d0.cols()), Vector(d0.rows() + fix, 0)};
  for (std::size_t r = 0; r < d0.rows(); ++r)
    for (std::size_t c = 0; c < d0.cols(); ++c) sys.matrix.set(r, c, d0.at(r, c));
  for (std::size_t k = 0; k < fix; ++k) {
    sys.matrix.set(d0.rows() + k, offset + k, 1);
    sys.rhs[d0.rows() + k] = (k == row0) ? 1 : 0;
  }
  return sys;
}

/// gamma(s0) = 0, i.e. 1*s0 extends to a compatible family of F_R S.
inline bool obstruction_vanishes(const EmpiricalModel& model, std::size_t c0,
                                 const Section& s0, const RingSpec& ring) {
  return solve_linear_system(obstruction_system(model, c0, s0, ring)).solvable;
}

/// Independent route through the relative complex: lift 1*s0 to a 0-cochain
/// c of F, so that delta^0 c is a relative 1-cocycle, then decide whether it
/// is the coboundary of a relative 0-cochain (one with p_C(z_C) = 0, where
/// p_C pushes F(C) forward to F(C ∩ C0), and to the weight sum when the
/// overlap is empty).
inline bool connecting_hom_check(const EmpiricalModel& model, std::size_t c0,
                                 const Section& s0, const RingSpec& ring) {
  detail::require_no_signalling(model);
  const Scenario& scn = model.scenario();
  detail::require_connected(scn);
  detail::require_supported(model, c0, s0);
  CochainComplex cx(model, 0);
  RingMatrix d0 = cx.coboundary(0, ring);
  if (d0.rows() == 0) return true;

  Vector lift(d0.cols(), 0);
  std::vector<Vector> relative;  // generators of the relative 0-cochains
  for (std::size_t c = 0; c < scn.context_count(); ++c) {
    const Domain& ctx = scn.context(c);
    const auto& sup = model.support(c);
    const std::size_t base = cx.index(0, c, sup.front());
    Domain meet = intersect(ctx, scn.context(c0));
    std::vector<Assignment> image;
    std::vector<std::size_t> image_of(sup.size(), 0);
    if (!meet.empty()) {
      image = model.restriction_image(c, meet);
      auto pos = positions_in(meet, ctx);
      for (std::size_t k = 0; k < sup.size(); ++k)
        image_of[k] = static_cast<std::size_t>(
            std::lower_bound(image.begin(), image.end(), project(sup[k], pos)) - image.begin());
    } else {
      image.resize(1);
    }
    // Lift: a section over C restricting to s0 on the overlap, weight one.
    Assignment target = meet.empty() ? Assignment{} : restrict_section(s0, meet).values;
    std::optional<std::size_t> pick;
    for (std::size_t k = 0; k < sup.size() && !pick; ++k)
      if (meet.empty() || image[image_of[k]] == target) pick = k;
    if (!pick) throw SelfCheckFailure("no lift of the fixed section to " + scn.label(ctx));
    lift[base + *pick] = 1;

    RingMatrix p(ring, image.size(), sup.size());
    for (std::size_t k = 0; k < sup.size(); ++k) p.set(image_of[k], k, 1);
    for (const Vector& g : kernel_generators(p)) {
      Vector full(d0.cols(), 0);
      for (std::size_t k = 0; k < sup.size(); ++k) full[base + k] = g[k];
      relative.push_back(std::move(full));
    }
  }

  Vector rhs = d0 * lift;
  RingMatrix a(ring, d0.rows(), relative.size());
  for (std::size_t j = 0; j < relative.size(); ++j) {
    Vector col = d0 * relative[j];
    for (std::size_t r = 0; r < d0.rows(); ++r) a.set(r, j, col[r]);
  }
  return solve_linear_system({a, rhs}).solvable;
}

// ---------------------------------------------------------------------------

struct SectionObstruction {
  std::size_t context;
  Assignment values;
  bool vanishes;
};

struct ObstructionReport {
  RingSpec ring;
  std::vector<SectionObstruction> sections;
  /// Some obstruction is non-zero.
  bool clc = false;
  /// Every obstruction is non-zero.
  bool csc = false;
  /// Size of the compatible-family system (rows x columns).
  std::size_t system_rows = 0, system_cols = 0;

  bool vanishes_at(std::size_t ctx, const Assignment& a) const {
    for (const auto& s : sections)
      if (s.context == ctx && s.values == a) return s.vanishes;
    throw PreconditionError("section is not in the support");
  }
};

inline ObstructionReport classify_cohomological(const EmpiricalModel& model,
                                                const RingSpec& ring) {
  ObstructionReport rep{ring, {}, false, true, 0, 0};
  const Scenario& scn = model.scenario();
  for (std::size_t c = 0; c < scn.context_count(); ++c)
    for (std::size_t r = 0; r < model.support(c).size(); ++r) {
      LinearSystem sys = obstruction_system(model, c, model.section(c, r), ring);
      rep.system_rows = sys.matrix.rows();
      rep.system_cols = sys.matrix.cols();
      bool v = solve_linear_system(sys).solvable;
      rep.sections.push_back({c, model.support(c)[r], v});
      if (!v) rep.clc = true;
      else rep.csc = false;
    }
  return rep;
}

struct MonotonicityCounterexample {
  std::size_t context;
  Assignment values;
};

/// For every supported section: vanishing over h.source implies vanishing
/// over h.target. Returns the first section where this fails.
inline std::optional<MonotonicityCounterexample> monotone_under_hom(
    const EmpiricalModel& model, const RingHom& h) {
  h.validate();
  if (h.source == h.target) return std::nullopt;
  const Scenario& scn = model.scenario();
  for (std::size_t c = 0; c < scn.context_count(); ++c)
    for (std::size_t r = 0; r < model.support(c).size(); ++r) {
      Section s = model.section(c, r);
      if (obstruction_vanishes(model, c, s, h.source) &&
          !obstruction_vanishes(model, c, s, h.target))
        return MonotonicityCounterexample{c, s.values};
    }
  return std::nullopt;
}

}  // namespace ctxsheaf
