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
 * @file model.hpp
 * @brief Possibilistic empirical models and their classification.
 *
 * An EmpiricalModel stores, for every context C of the cover, the support
 * S(C) as a sorted set of assignments over C. Below the cover S(U) is the
 * set of restrictions; above it S is determined by gluing. Construction
 * checks E1 and S(C) within E(C). No-signalling (flasqueness beneath the
 * cover) is a separate verdict because signalling models are legitimate
 * inputs to check_no_signalling.
 */
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ctxsheaf/errors.hpp"
#include "ctxsheaf/scenario.hpp"

namespace ctxsheaf {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", "p" or "0" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(),
                                  [](unsigned char c) { return std::isdigit(c); }) ||
        s == "-")
      throw ValidationError("malformed rational '" + text + "'");
    return boost::multiprecision::cpp_int(s);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  auto num = parse_int(text.substr(0, slash));
  auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ValidationError("zero denominator in '" + text + "'");
  return Rational(num, den);
}

inline std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// ---------------------------------------------------------------------------

class EmpiricalModel {
 public:
  EmpiricalModel() = default;

  /// supports[i] lists assignments over scenario.context(i), values in
  /// measurement order of that context. Sorted and deduplicated here.
  EmpiricalModel(Scenario scenario, std::vector<std::vector<Assignment>> supports)
      : scenario_(std::move(scenario)), supports_(std::move(supports)) {
    if (supports_.size() != scenario_.context_count())
      throw ValidationError("model lists " + std::to_string(supports_.size()) +
                            " supports for " +
                            std::to_string(scenario_.context_count()) + " contexts");
    for (std::size_t i = 0; i < supports_.size(); ++i) {
      auto& rows = supports_[i];
      const Domain& ctx = scenario_.context(i);
      for (const auto& row : rows) {
        if (row.size() != ctx.size())
          throw ValidationError("support row width differs from context " +
                                scenario_.label(ctx));
        for (Outcome v : row)
          if (v >= scenario_.outcome_count())
            throw ValidationError("support value " + std::to_string(v) +
                                  " outside the outcome alphabet in context " +
                                  scenario_.label(ctx));
      }
      std::sort(rows.begin(), rows.end());
      rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
      if (rows.empty())
        throw DegenerateModelError("empty support at context " + scenario_.label(ctx));
    }
  }

  const Scenario& scenario() const { return scenario_; }
  const std::vector<Assignment>& support(std::size_t ctx) const {
    return supports_.at(ctx);
  }
  const std::vector<std::vector<Assignment>>& supports() const { return supports_; }

  bool contains(std::size_t ctx, const Assignment& a) const {
    const auto& rows = supports_.at(ctx);
    return std::binary_search(rows.begin(), rows.end(), a);
  }

  /// Section view of a support row.
  Section section(std::size_t ctx, std::size_t row) const {
    return Section{scenario_.context(ctx), supports_.at(ctx).at(row)};
  }

  /// Index of the context holding `s`, if s is a supported section.
  std::optional<std::size_t> locate(const Section& s) const {
    auto ctx = scenario_.find_context(s.domain);
    if (!ctx || !contains(*ctx, s.values)) return std::nullopt;
    return ctx;
  }

  /// Sorted restrictions of S(C) to U (U must be a subset of C).
  std::vector<Assignment> restriction_image(std::size_t ctx, const Domain& u) const {
    auto pos = positions_in(u, scenario_.context(ctx));
    std::vector<Assignment> out;
    out.reserve(supports_.at(ctx).size());
    for (const auto& row : supports_[ctx]) out.push_back(project(row, pos));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::size_t section_count() const {
    std::size_t n = 0;
    for (const auto& rows : supports_) n += rows.size();
    return n;
  }

  friend bool operator==(const EmpiricalModel& a, const EmpiricalModel& b) {
    return a.scenario_.measurements() == b.scenario_.measurements() &&
           a.scenario_.cover() == b.scenario_.cover() &&
           a.scenario_.outcome_count() == b.scenario_.outcome_count() &&
           a.supports_ == b.supports_;
  }

 private:
  Scenario scenario_;
  std::vector<std::vector<Assignment>> supports_;
};

// ---------------------------------------------------------------------------
// Probability tables.

/// rows[i][k] is the probability of the k-th assignment of E(C_i) in
/// lexicographic order.
struct ProbabilityTable {
  Scenario scenario;
  std::vector<std::vector<Rational>> rows;
};

namespace detail {

inline std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

inline std::size_t assignment_rank(const Assignment& a, std::size_t k) {
  std::size_t r = 0;
  for (Outcome v : a) r = r * k + v;
  return r;
}

inline void check_table_shape(const ProbabilityTable& pt) {
  const Scenario& scn = pt.scenario;
  if (pt.rows.size() != scn.context_count())
    throw ValidationError("probability table has " + std::to_string(pt.rows.size()) +
                          " rows for " + std::to_string(scn.context_count()) +
                          " contexts");
  for (std::size_t i = 0; i < pt.rows.size(); ++i) {
    const Domain& ctx = scn.context(i);
    if (pt.rows[i].size() != power(scn.outcome_count(), ctx.size()))
      throw ValidationError("probability row for " + scn.label(ctx) +
                            " has the wrong number of entries");
    Rational sum = 0;
    for (const auto& p : pt.rows[i]) {
      if (p < 0)
        throw ValidationError("negative probability in row " + scn.label(ctx));
      sum += p;
    }
    if (sum != 1)
      throw NormalisationError("probability row " + scn.label(ctx) + " sums to " +
                               format_rational(sum) + ", not 1");
  }
}

inline std::map<Assignment, Rational> marginal(const ProbabilityTable& pt,
                                               std::size_t ctx, const Domain& u) {
  const Scenario& scn = pt.scenario;
  auto pos = positions_in(u, scn.context(ctx));
  std::map<Assignment, Rational> out;
  std::size_t k = 0;
  for_each_assignment(scn.context(ctx).size(), scn.outcome_count(),
                      [&](const Assignment& a) {
                        out[project(a, pos)] += pt.rows[ctx][k++];
                      });
  return out;
}

inline std::vector<std::vector<Assignment>> supports_of_rows(const ProbabilityTable& pt) {
  std::vector<std::vector<Assignment>> supports(pt.rows.size());
  for (std::size_t i = 0; i < pt.rows.size(); ++i) {
    std::size_t k = 0;
    for_each_assignment(pt.scenario.context(i).size(), pt.scenario.outcome_count(),
                        [&](const Assignment& a) {
                          if (pt.rows[i][k++] > 0) supports[i].push_back(a);
                        });
  }
  return supports;
}

}  // namespace detail

/// Row normalisation and exact marginal agreement on every overlap.
inline void validate_probability_table(const ProbabilityTable& pt) {
  detail::check_table_shape(pt);
  const Scenario& scn = pt.scenario;
  for (std::size_t i = 0; i < scn.context_count(); ++i)
    for (std::size_t j = i + 1; j < scn.context_count(); ++j) {
      Domain overlap = intersect(scn.context(i), scn.context(j));
      if (overlap.empty()) continue;
      auto mi = detail::marginal(pt, i, overlap);
      auto mj = detail::marginal(pt, j, overlap);
      for_each_assignment(overlap.size(), scn.outcome_count(), [&](const Assignment& t) {
        if (mi[t] != mj[t])
          throw SignallingError(
              "marginals of " + scn.label(scn.context(i)) + " and " +
              scn.label(scn.context(j)) + " disagree at " +
              scn.format_section({overlap, t}) + " (" + format_rational(mi[t]) +
              " vs " + format_rational(mj[t]) + ")");
      });
    }
}

/// S(C) = { s : p_C(s) > 0 } after validating the table.
inline EmpiricalModel support_of_probability_table(const ProbabilityTable& pt) {
  validate_probability_table(pt);
  return EmpiricalModel(pt.scenario, detail::supports_of_rows(pt));
}

/// Uniform distribution on each context's support. Rows are normalised but
/// the result need not be no-signalling as a distribution.
inline ProbabilityTable uniform_table(const EmpiricalModel& model) {
  const Scenario& scn = model.scenario();
  ProbabilityTable pt{scn, {}};
  for (std::size_t i = 0; i < scn.context_count(); ++i) {
    std::vector<Rational> row(detail::power(scn.outcome_count(), scn.context(i).size()), 0);
    const Rational w(1, static_cast<long long>(model.support(i).size()));
    for (const auto& a : model.support(i))
      row[detail::assignment_rank(a, scn.outcome_count())] = w;
    pt.rows.push_back(std::move(row));
  }
  return pt;
}

/// Support of a table whose rows are only checked for normalisation.
inline EmpiricalModel support_of_rows(const ProbabilityTable& pt) {
  detail::check_table_shape(pt);
  return EmpiricalModel(pt.scenario, detail::supports_of_rows(pt));
}

/// Probability that the formal event `holds` occurs in the row of a context.
template <typename Pred>
Rational event_probability(const ProbabilityTable& pt, std::size_t ctx, Pred&& holds) {
  Rational p = 0;
  std::size_t k = 0;
  for_each_assignment(pt.scenario.context(ctx).size(), pt.scenario.outcome_count(),
                      [&](const Assignment& a) {
                        if (holds(Section{pt.scenario.context(ctx), a})) p += pt.rows[ctx][k];
                        ++k;
                      });
  return p;
}

// ---------------------------------------------------------------------------
// No-signalling.

struct SignallingWitness {
  std::size_t first_context;
  std::size_t second_context;
  /// A section over the overlap present in exactly one restriction image.
  Section overlap_section;
};

struct NoSignallingVerdict {
  bool no_signalling = true;
  std::optional<SignallingWitness> witness;
  explicit operator bool() const { return no_signalling; }
};

/// Compares restriction images on every overlap; the witness is the first
/// violating pair in canonical order and the first offending section.
inline NoSignallingVerdict check_no_signalling(const EmpiricalModel& model) {
  const Scenario& scn = model.scenario();
  for (std::size_t i = 0; i < scn.context_count(); ++i)
    for (std::size_t j = i + 1; j < scn.context_count(); ++j) {
      Domain overlap = intersect(scn.context(i), scn.context(j));
      if (overlap.empty()) continue;
      auto a = model.restriction_image(i, overlap);
      auto b = model.restriction_image(j, overlap);
      if (a == b) continue;
      std::vector<Assignment> diff;
      std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                    std::back_inserter(diff));
      return {false, SignallingWitness{i, j, Section{overlap, diff.front()}}};
    }
  return {};
}

/// Largest sub-model that is no-signalling: repeatedly drops sections whose
/// restriction to some overlap is missing from the neighbour's image.
/// Throws DegenerateModelError if a context support empties.
inline EmpiricalModel no_signalling_core(const EmpiricalModel& model) {
  const Scenario& scn = model.scenario();
  std::vector<std::vector<Assignment>> sup = model.supports();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < scn.context_count(); ++i)
      for (std::size_t j = 0; j < scn.context_count(); ++j) {
        if (i == j) continue;
        Domain overlap = intersect(scn.context(i), scn.context(j));
        if (overlap.empty()) continue;
        auto pi = positions_in(overlap, scn.context(i));
        auto pj = positions_in(overlap, scn.context(j));
        std::set<Assignment> image;
        for (const auto& row : sup[j]) image.insert(project(row, pj));
        auto keep_end = std::remove_if(sup[i].begin(), sup[i].end(), [&](const Assignment& r) {
          return !image.count(project(r, pi));
        });
        if (keep_end != sup[i].end()) {
          sup[i].erase(keep_end, sup[i].end());
          changed = true;
          if (sup[i].empty())
            throw DegenerateModelError("no-signalling core empties context " +
                                       scn.label(scn.context(i)));
        }
      }
  }
  return EmpiricalModel(scn, std::move(sup));
}

// ---------------------------------------------------------------------------
// Compatible families and global sections.

/// One support row per context.
struct CompatibleFamily {
  std::vector<Assignment> choice;
};

inline bool is_compatible(const EmpiricalModel& model, const CompatibleFamily& f) {
  const Scenario& scn = model.scenario();
  if (f.choice.size() != scn.context_count()) return false;
  for (std::size_t i = 0; i < scn.context_count(); ++i)
    if (!model.contains(i, f.choice[i])) return false;
  for (std::size_t i = 0; i < scn.context_count(); ++i)
    for (std::size_t j = i + 1; j < scn.context_count(); ++j) {
      Domain overlap = intersect(scn.context(i), scn.context(j));
      if (project(f.choice[i], positions_in(overlap, scn.context(i))) !=
          project(f.choice[j], positions_in(overlap, scn.context(j))))
        return false;
    }
  return true;
}

/// The unique global section induced by a compatible family.
inline Section glue(const EmpiricalModel& model, const CompatibleFamily& f) {
  if (!is_compatible(model, f))
    throw PreconditionError("glue: family is not compatible");
  const Scenario& scn = model.scenario();
  Section g{scn.all_measurements(), Assignment(scn.measurement_count(), 0)};
  for (std::size_t i = 0; i < scn.context_count(); ++i) {
    const Domain& ctx = scn.context(i);
    for (std::size_t k = 0; k < ctx.size(); ++k) g.values[ctx[k]] = f.choice[i][k];
  }
  return g;
}

inline CompatibleFamily family_of(const EmpiricalModel& model, const Section& global) {
  CompatibleFamily f;
  for (const Domain& ctx : model.scenario().cover())
    f.choice.push_back(restrict_section(global, ctx).values);
  return f;
}

inline bool is_global_section(const EmpiricalModel& model, const Section& g) {
  const Scenario& scn = model.scenario();
  if (g.domain != scn.all_measurements()) return false;
  for (std::size_t i = 0; i < scn.context_count(); ++i)
    if (!model.contains(i, restrict_section(g, scn.context(i)).values)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Global-section search.

struct SearchOptions {
  /// Exhaustive enumeration is used when |O|^|X| is at most this.
  std::uint64_t enumeration_limit = std::uint64_t{1} << 24;
  /// Node budget of the backtracking search; exceeding it gives "undecided".
  std::uint64_t node_budget = std::uint64_t{1} << 26;
  bool force_backtracking = false;
};

enum class SearchStatus { found, none, undecided };

namespace detail {

/// Depth-first assignment of one measurement at a time over `order`, pruning
/// with every context whose (partial) assignment must extend to a row of its
/// candidate table.
class Backtracker {
 public:
  /// tables[i] is the candidate list for constraint domain domains[i].
  Backtracker(std::size_t measurement_count, std::size_t outcome_count,
              std::vector<Domain> domains, std::vector<std::vector<Assignment>> tables,
              std::uint64_t budget)
      : k_(outcome_count),
        domains_(std::move(domains)),
        tables_(std::move(tables)),
        budget_(budget),
        value_(measurement_count, 0),
        assigned_(measurement_count, false),
        watch_(measurement_count) {
    for (std::size_t c = 0; c < domains_.size(); ++c)
      for (MeasurementId m : domains_[c]) watch_[m].push_back(c);
  }

  /// Enumerates assignments of `order` consistent with all tables, starting
  /// from `fixed`. Calls `visit(values)`; stop by returning false.
  template <typename Visit>
  SearchStatus run(const std::vector<MeasurementId>& order, const Section& fixed,
                   Visit&& visit) {
    for (std::size_t i = 0; i < fixed.domain.size(); ++i) {
      value_[fixed.domain[i]] = fixed.values[i];
      assigned_[fixed.domain[i]] = true;
    }
    for (MeasurementId m : fixed.domain)
      for (std::size_t c : watch_[m])
        if (!consistent(c)) return SearchStatus::none;
    found_ = false;
    exhausted_ = false;
    recurse(order, 0, visit);
    if (exhausted_) return SearchStatus::undecided;
    return found_ ? SearchStatus::found : SearchStatus::none;
  }

  const Assignment& values() const { return value_; }

 private:
  bool consistent(std::size_t c) const {
    const Domain& d = domains_[c];
    for (const auto& row : tables_[c]) {
      bool ok = true;
      for (std::size_t k = 0; k < d.size() && ok; ++k)
        if (assigned_[d[k]] && row[k] != value_[d[k]]) ok = false;
      if (ok) return true;
    }
    return false;
  }

  template <typename Visit>
  bool recurse(const std::vector<MeasurementId>& order, std::size_t depth, Visit& visit) {
    if (depth == order.size()) {
      found_ = true;
      return visit(value_);
    }
    const MeasurementId m = order[depth];
    for (Outcome v = 0; v < k_; ++v) {
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      value_[m] = v;
      assigned_[m] = true;
      bool ok = true;
      for (std::size_t c : watch_[m])
        if (!consistent(c)) {
          ok = false;
          break;
        }
      if (ok && !recurse(order, depth + 1, visit)) {
        assigned_[m] = false;
        return false;
      }
      assigned_[m] = false;
    }
    return true;
  }

  std::size_t k_;
  std::vector<Domain> domains_;
  std::vector<std::vector<Assignment>> tables_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  Assignment value_;
  std::vector<bool> assigned_;
  std::vector<std::vector<std::size_t>> watch_;
  bool found_ = false;
  bool exhausted_ = false;
};

inline bool enumeration_fits(std::size_t k, std::size_t width, std::uint64_t limit) {
  long double total = 1;
  for (std::size_t i = 0; i < width; ++i) total *= static_cast<long double>(k);
  return total <= static_cast<long double>(limit);
}

}  // namespace detail

struct GlobalSearchResult {
  SearchStatus status = SearchStatus::none;
  std::optional<Section> global;
};

/// A global section of `model` extending `seed` (which may be empty).
inline GlobalSearchResult find_global_section(const EmpiricalModel& model,
                                              const Section& seed = {},
                                              const SearchOptions& opts = {}) {
  const Scenario& scn = model.scenario();
  // Greedy order: next take the context with the most measurements already
  // placed, so constraints close as early as possible.
  std::vector<bool> placed(scn.measurement_count(), false);
  for (MeasurementId m : seed.domain) placed[m] = true;
  std::vector<MeasurementId> order;
  for (;;) {
    std::size_t best = scn.context_count(), best_score = 0, best_left = 0;
    for (std::size_t c = 0; c < scn.context_count(); ++c) {
      std::size_t in = 0, left = 0;
      for (MeasurementId m : scn.context(c)) (placed[m] ? in : left)++;
      if (left == 0) continue;
      if (best == scn.context_count() || in > best_score ||
          (in == best_score && left < best_left)) {
        best = c;
        best_score = in;
        best_left = left;
      }
    }
    if (best == scn.context_count()) break;
    for (MeasurementId m : scn.context(best))
      if (!placed[m]) {
        placed[m] = true;
        order.push_back(m);
      }
  }
  for (MeasurementId m = 0; m < scn.measurement_count(); ++m)
    if (!placed[m]) order.push_back(m);
  detail::Backtracker bt(scn.measurement_count(), scn.outcome_count(), scn.cover(),
                         model.supports(), opts.node_budget);
  GlobalSearchResult out;
  out.status = bt.run(order, seed, [&](const Assignment& v) {
    out.global = Section{scn.all_measurements(), v};
    return false;
  });
  if (out.global) out.status = SearchStatus::found;
  return out;
}

/// S(U): sections over U whose restriction to each U∩C lies in the
/// restriction image of S(C). For U = X these are the global sections.
inline std::vector<Section> model_restriction(const EmpiricalModel& model, const Domain& u) {
  const Scenario& scn = model.scenario();
  if (!is_subset(u, scn.all_measurements()))
    throw DomainError("model_restriction: subset is not contained in X");
  std::vector<Domain> domains;
  std::vector<std::vector<Assignment>> tables;
  for (std::size_t i = 0; i < scn.context_count(); ++i) {
    Domain part = intersect(u, scn.context(i));
    if (part.empty()) continue;
    tables.push_back(model.restriction_image(i, part));
    domains.push_back(std::move(part));
  }
  detail::Backtracker bt(scn.measurement_count(), scn.outcome_count(), domains, tables,
                         std::numeric_limits<std::uint64_t>::max());
  std::vector<Section> out;
  bt.run(u, Section{}, [&](const Assignment& v) {
    out.push_back(Section{u, project(v, u)});
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Logical / strong contextuality.

struct SectionVerdict {
  std::size_t context;
  Assignment values;
  /// nullopt when the search budget ran out.
  std::optional<bool> extends;
  /// A global section through this local section, when one was found.
  std::optional<Section> witness;
};

struct ContextualityReport {
  std::vector<SectionVerdict> sections;
  /// Some supported section fails to extend (nullopt: undecided).
  std::optional<bool> logically_contextual;
  /// No global section exists (nullopt: undecided).
  std::optional<bool> strongly_contextual;
  std::optional<Section> global_section;
  bool exhaustive = false;

  bool decided() const { return logically_contextual && strongly_contextual; }

  /// LC(S, s) for a supported section.
  std::optional<bool> logically_contextual_at(std::size_t ctx, const Assignment& a) const {
    for (const auto& sv : sections)
      if (sv.context == ctx && sv.values == a) {
        if (!sv.extends) return std::nullopt;
        return !*sv.extends;
      }
    throw PreconditionError("section is not in the support");
  }
};

namespace detail {

inline void finish_report(ContextualityReport& rep) {
  bool all_known = true, any_fail = false, all_fail = true;
  for (const auto& sv : rep.sections) {
    if (!sv.extends) {
      all_known = false;
      all_fail = false;
      continue;
    }
    if (!*sv.extends) any_fail = true;
    else all_fail = false;
  }
  if (any_fail) rep.logically_contextual = true;
  else if (all_known) rep.logically_contextual = false;
  if (rep.global_section) rep.strongly_contextual = false;
  else if (all_known && all_fail) rep.strongly_contextual = true;
}

}  // namespace detail

/// Decides, for every supported section, whether it extends to a compatible
/// family. Small scenarios are enumerated exhaustively; larger ones use the
/// budgeted backtracking search, and exhausted budgets are reported as
/// undecided.
inline ContextualityReport classify_contextuality(const EmpiricalModel& model,
                                                  const SearchOptions& opts = {}) {
  const Scenario& scn = model.scenario();
  ContextualityReport rep;
  if (!opts.force_backtracking &&
      detail::enumeration_fits(scn.outcome_count(), scn.measurement_count(),
                               opts.enumeration_limit)) {
    rep.exhaustive = true;
    // One pass over E(X) recording which local sections occur in a global one.
    std::vector<std::vector<std::optional<Section>>> hit(scn.context_count());
    for (std::size_t i = 0; i < scn.context_count(); ++i)
      hit[i].resize(model.support(i).size());
    std::vector<std::vector<std::size_t>> pos;
    for (const Domain& ctx : scn.cover()) pos.push_back(positions_in(ctx, scn.all_measurements()));
    for_each_assignment(scn.measurement_count(), scn.outcome_count(), [&](const Assignment& g) {
      std::vector<std::size_t> rows(scn.context_count());
      for (std::size_t i = 0; i < scn.context_count(); ++i) {
        const auto& sup = model.support(i);
        auto proj = project(g, pos[i]);
        auto it = std::lower_bound(sup.begin(), sup.end(), proj);
        if (it == sup.end() || *it != proj) return;
        rows[i] = static_cast<std::size_t>(it - sup.begin());
      }
      Section global{scn.all_measurements(), g};
      if (!rep.global_section) rep.global_section = global;
      for (std::size_t i = 0; i < scn.context_count(); ++i)
        if (!hit[i][rows[i]]) hit[i][rows[i]] = global;
    });
    for (std::size_t i = 0; i < scn.context_count(); ++i)
      for (std::size_t r = 0; r < model.support(i).size(); ++r)
        rep.sections.push_back({i, model.support(i)[r], hit[i][r].has_value(), hit[i][r]});
  } else {
    // An unseeded search first: no global section at all settles every
    // section, and each global section found marks one section per context.
    std::vector<std::vector<std::optional<Section>>> hit(scn.context_count());
    for (std::size_t i = 0; i < scn.context_count(); ++i)
      hit[i].resize(model.support(i).size());
    auto mark = [&](const Section& g) {
      if (!rep.global_section) rep.global_section = g;
      for (std::size_t i = 0; i < scn.context_count(); ++i) {
        const auto& sup = model.support(i);
        auto it = std::lower_bound(sup.begin(), sup.end(),
                                   restrict_section(g, scn.context(i)).values);
        auto r = static_cast<std::size_t>(it - sup.begin());
        if (!hit[i][r]) hit[i][r] = g;
      }
    };
    GlobalSearchResult first = find_global_section(model, Section{}, opts);
    for (std::size_t i = 0; i < scn.context_count(); ++i)
      for (std::size_t r = 0; r < model.support(i).size(); ++r) {
        SectionVerdict sv{i, model.support(i)[r], std::nullopt, std::nullopt};
        if (first.status == SearchStatus::none) {
          sv.extends = false;
        } else {
          if (first.global && !rep.global_section) mark(*first.global);
          if (!hit[i][r]) {
            GlobalSearchResult res = find_global_section(model, model.section(i, r), opts);
            if (res.status == SearchStatus::found) mark(*res.global);
            else if (res.status == SearchStatus::none) sv.extends = false;
          }
          if (hit[i][r]) {
            sv.extends = true;
            sv.witness = hit[i][r];
          }
        }
        rep.sections.push_back(std::move(sv));
      }
  }
  detail::finish_report(rep);
  return rep;
}

}  // namespace ctxsheaf
