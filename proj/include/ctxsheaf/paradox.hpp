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
 * @file paradox.hpp
 * @brief Propositional formulas over measurements, logical Bell
 * inequalities, liar cycles, the Specker triangle and model isomorphism.
 *
 * Outcome 0 reads as true and 1 as false.
 *
 * Formula grammar (lowest precedence first):
 *   iff  := or  ( ("<->" | "↔") or )*
 *   or   := and ( ("|" | "∨") and )*
 *   and  := not ( ("&" | "∧") not )*
 *   not  := ("!" | "~" | "¬") not | "(" iff ")" | identifier
 */
#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxsheaf/errors.hpp"
#include "ctxsheaf/model.hpp"
#include "ctxsheaf/scenario.hpp"

namespace ctxsheaf {

class Formula {
 public:
  enum class Kind { var, negation, conjunction, disjunction, biconditional };

  static Formula variable(MeasurementId m) {
    Formula f;
    f.kind_ = Kind::var;
    f.var_ = m;
    return f;
  }
  static Formula unary(Kind k, Formula a) {
    Formula f;
    f.kind_ = k;
    f.children_.push_back(std::move(a));
    return f;
  }
  static Formula binary(Kind k, Formula a, Formula b) {
    Formula f;
    f.kind_ = k;
    f.children_.push_back(std::move(a));
    f.children_.push_back(std::move(b));
    return f;
  }

  Kind kind() const { return kind_; }

  /// Truth under `value(m)`, with outcome 0 as true.
  template <typename Lookup>
  bool eval_with(Lookup&& value) const {
    switch (kind_) {
      case Kind::var: return value(var_) == 0;
      case Kind::negation: return !children_[0].eval_with(value);
      case Kind::conjunction: return children_[0].eval_with(value) && children_[1].eval_with(value);
      case Kind::disjunction: return children_[0].eval_with(value) || children_[1].eval_with(value);
      case Kind::biconditional:
        return children_[0].eval_with(value) == children_[1].eval_with(value);
    }
    return false;
  }

  bool eval(const Section& s) const {
    return eval_with([&](MeasurementId m) {
      auto v = s.value_at(m);
      if (!v) throw DomainError("formula variable outside the section domain");
      return *v;
    });
  }

  void collect(Domain& out) const {
    if (kind_ == Kind::var) out.push_back(var_);
    for (const auto& c : children_) c.collect(out);
  }

  Domain variables() const {
    Domain d;
    collect(d);
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
  }

  std::string str(const Scenario& scn) const {
    switch (kind_) {
      case Kind::var: return scn.measurements().at(var_);
      case Kind::negation: return "!" + children_[0].str(scn);
      case Kind::conjunction:
        return "(" + children_[0].str(scn) + " & " + children_[1].str(scn) + ")";
      case Kind::disjunction:
        return "(" + children_[0].str(scn) + " | " + children_[1].str(scn) + ")";
      case Kind::biconditional:
        return "(" + children_[0].str(scn) + " <-> " + children_[1].str(scn) + ")";
    }
    return {};
  }

 private:
  Kind kind_ = Kind::var;
  MeasurementId var_ = 0;
  std::vector<Formula> children_;
};

namespace detail {

class FormulaParser {
 public:
  FormulaParser(const Scenario& scn, std::string_view text) : scn_(scn), text_(text) {}

  Formula parse() {
    Formula f = parse_iff();
    skip();
    if (pos_ != text_.size()) fail("unexpected input");
    return f;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("formula '" + std::string(text_) + "': " + what + " at offset " +
                          std::to_string(pos_));
  }

  Formula parse_iff() {
    Formula f = parse_or();
    while (accept("<->") || accept("↔"))
      f = Formula::binary(Formula::Kind::biconditional, std::move(f), parse_or());
    return f;
  }
  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|") || accept("∨"))
      f = Formula::binary(Formula::Kind::disjunction, std::move(f), parse_and());
    return f;
  }
  Formula parse_and() {
    Formula f = parse_not();
    while (accept("&") || accept("∧"))
      f = Formula::binary(Formula::Kind::conjunction, std::move(f), parse_not());
    return f;
  }
  Formula parse_not() {
    if (accept("!") || accept("~") || accept("¬"))
      return Formula::unary(Formula::Kind::negation, parse_not());
    if (accept("(")) {
      Formula f = parse_iff();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a measurement");
    std::string name(text_.substr(start, pos_ - start));
    auto m = scn_.find_measurement(name);
    if (!m) fail("unknown measurement '" + name + "'");
    return Formula::variable(*m);
  }

  const Scenario& scn_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(const Scenario& scn, std::string_view text) {
  return detail::FormulaParser(scn, text).parse();
}

/// A formula attached to a cover context, optionally with its probability.
struct Proposition {
  std::size_t context = 0;
  Formula formula;
  std::optional<Rational> probability;
};

inline Proposition make_proposition(const Scenario& scn, std::size_t context,
                                    std::string_view text,
                                    std::optional<Rational> probability = std::nullopt) {
  Proposition p{context, parse_formula(scn, text), std::move(probability)};
  if (!is_subset(p.formula.variables(), scn.context(context)))
    throw ValidationError("formula '" + std::string(text) + "' uses measurements outside " +
                          scn.label(scn.context(context)));
  return p;
}

/// Probability of the proposition in its context row.
inline Rational proposition_probability(const ProbabilityTable& pt, const Proposition& p) {
  return event_probability(pt, p.context, [&](const Section& s) { return p.formula.eval(s); });
}

struct LogicalBellReport {
  bool jointly_satisfiable = false;
  Rational sum = 0;
  Rational bound = 0;
  /// max(0, sum - (N - 1)) when unsatisfiable.
  std::optional<Rational> violation;
  /// A boolean assignment satisfying every formula, when one exists.
  std::optional<Section> model;
};

/// Brute-force joint satisfiability over boolean values of the variables
/// involved, plus the inequality sum p_i <= N - 1 for unsatisfiable sets.
inline LogicalBellReport logical_bell_bound(const Scenario& scn,
                                            const std::vector<Proposition>& props) {
  Domain vars;
  for (const auto& p : props) {
    if (p.context >= scn.context_count())
      throw ValidationError("proposition refers to an unknown context");
    Domain v = p.formula.variables();
    if (!is_subset(v, scn.context(p.context)))
      throw ValidationError("formula " + p.formula.str(scn) + " uses measurements outside " +
                            scn.label(scn.context(p.context)));
    vars = unite(vars, v);
  }
  if (vars.size() > 20) throw PreconditionError("logical_bell_bound: more than 20 variables");
  LogicalBellReport rep;
  for_each_assignment(vars.size(), 2, [&](const Assignment& a) {
    if (rep.model) return;
    Section s{vars, a};
    if (std::all_of(props.begin(), props.end(),
                    [&](const Proposition& p) { return p.formula.eval(s); }))
      rep.model = s;
  });
  rep.jointly_satisfiable = rep.model.has_value();
  rep.bound = Rational(static_cast<long long>(props.size())) - 1;
  bool all_known = true;
  for (const auto& p : props) {
    if (p.probability) rep.sum += *p.probability;
    else all_known = false;
  }
  if (!rep.jointly_satisfiable && all_known) {
    Rational excess = rep.sum - rep.bound;
    rep.violation = excess > 0 ? excess : Rational(0);
  }
  return rep;
}

// ---------------------------------------------------------------------------

/// x_1 = x_2, ..., x_{N-1} = x_N, x_N = not x_1, each equation fibred over
/// its two variables. N = 1 and N = 2 put contradictory equations on a
/// single context and are rejected.
inline EmpiricalModel liar_cycle_model(std::size_t length) {
  if (length == 0) throw PreconditionError("liar cycle length must be positive");
  if (length <= 2)
    throw DegenerateModelError("liar cycle of length " + std::to_string(length) +
                               " has an empty support: its equations share one context");
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= length; ++i) labels.push_back("x" + std::to_string(i));
  std::vector<Domain> cover;
  std::vector<std::vector<Assignment>> sup;
  for (std::size_t i = 0; i + 1 < length; ++i) {
    cover.push_back({i, i + 1});
    sup.push_back({{0, 0}, {1, 1}});
  }
  cover.push_back({0, length - 1});
  sup.push_back({{0, 1}, {1, 0}});
  return EmpiricalModel(Scenario(std::move(labels), std::move(cover), 2), std::move(sup));
}

/// T1 = x1 <-> !x2, T2 = x2 <-> !x3, T3 = x3 <-> !x1.
inline EmpiricalModel specker_triangle() {
  Scenario scn({"x1", "x2", "x3"}, std::vector<Domain>{{0, 1}, {1, 2}, {0, 2}}, 2);
  return EmpiricalModel(std::move(scn), {{{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}});
}

// ---------------------------------------------------------------------------

/// measurement_map[m] is the image of measurement m of the first model;
/// outcome_map[m][v] the image of outcome v at m.
struct IsomorphismWitness {
  std::vector<MeasurementId> measurement_map;
  std::vector<std::vector<Outcome>> outcome_map;
};

struct IsomorphismResult {
  bool isomorphic = false;
  std::vector<IsomorphismWitness> witnesses;
};

namespace detail {

class IsomorphismSearch {
 public:
  IsomorphismSearch(const EmpiricalModel& a, const EmpiricalModel& b, std::size_t limit)
      : a_(a), b_(b), limit_(limit) {
    const Scenario& sa = a.scenario();
    n_ = sa.measurement_count();
    k_ = sa.outcome_count();
    ctx_of_a_.resize(n_);
    for (std::size_t c = 0; c < sa.context_count(); ++c)
      for (MeasurementId m : sa.context(c)) ctx_of_a_[m].push_back(c);
    std::vector<Outcome> p(k_);
    std::iota(p.begin(), p.end(), Outcome{0});
    do perms_.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    map_.assign(n_, 0);
    used_.assign(n_, false);
    perm_.assign(n_, 0);
  }

  IsomorphismResult run() {
    const Scenario& sa = a_.scenario();
    const Scenario& sb = b_.scenario();
    IsomorphismResult out;
    if (sa.measurement_count() != sb.measurement_count() ||
        sa.context_count() != sb.context_count() || sa.outcome_count() != sb.outcome_count())
      return out;
    assign_measurement(0, out);
    out.isomorphic = !out.witnesses.empty();
    return out;
  }

 private:
  // Every context of a whose measurements are all mapped must land inside
  // a context of b of the same size (and be one, when complete).
  bool cover_consistent(MeasurementId last) const {
    const Scenario& sa = a_.scenario();
    const Scenario& sb = b_.scenario();
    for (std::size_t c : ctx_of_a_[last]) {
      Domain img;
      bool complete = true;
      for (MeasurementId m : sa.context(c)) {
        if (used_a(m)) img.push_back(map_[m]);
        else complete = false;
      }
      std::sort(img.begin(), img.end());
      bool ok = false;
      for (const Domain& d : sb.cover())
        if (d.size() == sa.context(c).size() && is_subset(img, d)) {
          ok = true;
          break;
        }
      if (!ok) return false;
      if (complete && !sb.find_context(img)) return false;
    }
    return true;
  }

  bool used_a(MeasurementId m) const { return m < depth_; }

  void assign_measurement(std::size_t m, IsomorphismResult& out) {
    if (out.witnesses.size() >= limit_) return;
    if (m == n_) {
      assign_outcome(0, out);
      return;
    }
    for (MeasurementId t = 0; t < n_; ++t) {
      if (used_[t]) continue;
      if (ctx_of_a_[m].size() != contexts_of_b(t)) continue;
      map_[m] = t;
      used_[t] = true;
      depth_ = m + 1;
      if (cover_consistent(m)) assign_measurement(m + 1, out);
      used_[t] = false;
      depth_ = m;
      if (out.witnesses.size() >= limit_) return;
    }
  }

  std::size_t contexts_of_b(MeasurementId t) const {
    std::size_t n = 0;
    for (const Domain& d : b_.scenario().cover())
      if (std::binary_search(d.begin(), d.end(), t)) ++n;
    return n;
  }

  // Support of every context of a whose measurements have outcome maps
  // must map onto the support of the image context.
  bool supports_match(MeasurementId last) const {
    const Scenario& sa = a_.scenario();
    const Scenario& sb = b_.scenario();
    for (std::size_t c : ctx_of_a_[last]) {
      const Domain& ctx = sa.context(c);
      if (ctx.back() > last) continue;
      Domain img;
      for (MeasurementId m : ctx) img.push_back(map_[m]);
      std::vector<std::size_t> order(ctx.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(),
                [&](std::size_t x, std::size_t y) { return img[x] < img[y]; });
      Domain sorted_img;
      for (std::size_t i : order) sorted_img.push_back(img[i]);
      auto target = sb.find_context(sorted_img);
      if (!target) return false;
      std::vector<Assignment> mapped;
      for (const auto& row : a_.support(c)) {
        Assignment r;
        for (std::size_t i : order) r.push_back(perms_[perm_[ctx[i]]][row[i]]);
        mapped.push_back(std::move(r));
      }
      std::sort(mapped.begin(), mapped.end());
      if (mapped != b_.support(*target)) return false;
    }
    return true;
  }

  void assign_outcome(MeasurementId m, IsomorphismResult& out) {
    if (out.witnesses.size() >= limit_) return;
    if (m == n_) {
      IsomorphismWitness w{map_, {}};
      for (MeasurementId x = 0; x < n_; ++x) w.outcome_map.push_back(perms_[perm_[x]]);
      out.witnesses.push_back(std::move(w));
      return;
    }
    for (std::size_t p = 0; p < perms_.size(); ++p) {
      perm_[m] = p;
      if (supports_match(m)) assign_outcome(m + 1, out);
      if (out.witnesses.size() >= limit_) return;
    }
  }

  const EmpiricalModel& a_;
  const EmpiricalModel& b_;
  std::size_t limit_;
  std::size_t n_ = 0, k_ = 0, depth_ = 0;
  std::vector<std::vector<std::size_t>> ctx_of_a_;
  std::vector<std::vector<Outcome>> perms_;
  std::vector<MeasurementId> map_;
  std::vector<bool> used_;
  std::vector<std::size_t> perm_;
};

}  // namespace detail

/// Searches for a bijection of measurements preserving the cover together
/// with per-measurement outcome permutations carrying supports onto
/// supports. Collects up to `limit` witnesses.
inline IsomorphismResult model_isomorphic(const EmpiricalModel& a, const EmpiricalModel& b,
                                          std::size_t limit = 1) {
  if (limit == 0) throw PreconditionError("model_isomorphic: limit must be positive");
  return detail::IsomorphismSearch(a, b, limit).run();
}

/// The image of a model under an isomorphism witness: measurements are
/// renamed into the scenario of `target_scenario`.
inline EmpiricalModel transport(const EmpiricalModel& model, const IsomorphismWitness& w,
                                const Scenario& target_scenario) {
  const Scenario& scn = model.scenario();
  std::vector<std::vector<Assignment>> sup(target_scenario.context_count());
  for (std::size_t c = 0; c < scn.context_count(); ++c) {
    Domain img;
    for (MeasurementId m : scn.context(c)) img.push_back(w.measurement_map[m]);
    std::sort(img.begin(), img.end());
    auto t = target_scenario.find_context(img);
    if (!t) throw PreconditionError("transport: witness does not preserve the cover");
    for (const auto& row : model.support(c)) {
      Assignment r(img.size());
      for (std::size_t i = 0; i < row.size(); ++i) {
        MeasurementId m = scn.context(c)[i];
        auto at = std::lower_bound(img.begin(), img.end(), w.measurement_map[m]) - img.begin();
        r[static_cast<std::size_t>(at)] = w.outcome_map[m][row[i]];
      }
      sup[*t].push_back(std::move(r));
    }
  }
  return EmpiricalModel(target_scenario, std::move(sup));
}

}  // namespace ctxsheaf
