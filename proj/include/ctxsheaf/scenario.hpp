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
 * @file scenario.hpp
 * @brief Measurement scenarios, sections, restriction and the nerve of a
 * cover.
 *
 * A scenario is a finite set of measurement labels X, a cover M of X by
 * maximal contexts (an antichain), and an outcome alphabet {0, ..., k-1}.
 * Measurements are identified by their declaration index; every subset of X
 * is kept as a strictly increasing vector of indices, which fixes the
 * canonical order used by all enumerations.
 */
#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ctxsheaf/errors.hpp"

namespace ctxsheaf {

using MeasurementId = std::size_t;
using Outcome = std::uint32_t;
/// A subset of X as strictly increasing measurement indices.
using Domain = std::vector<MeasurementId>;
/// Outcome values listed in the order of some Domain.
using Assignment = std::vector<Outcome>;

// ---------------------------------------------------------------------------
// Subset helpers. All arguments are sorted and duplicate free.

inline bool is_subset(const Domain& sub, const Domain& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

inline Domain intersect(const Domain& a, const Domain& b) {
  Domain out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline Domain unite(const Domain& a, const Domain& b) {
  Domain out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

/// Positions of the elements of `sub` inside `super`; `sub` must be a subset.
inline std::vector<std::size_t> positions_in(const Domain& sub,
                                             const Domain& super) {
  std::vector<std::size_t> pos;
  pos.reserve(sub.size());
  std::size_t j = 0;
  for (MeasurementId m : sub) {
    while (j < super.size() && super[j] < m) ++j;
    if (j == super.size() || super[j] != m)
      throw DomainError("positions_in: element is not in the superset");
    pos.push_back(j++);
  }
  return pos;
}

inline Assignment project(const Assignment& values,
                          const std::vector<std::size_t>& positions) {
  Assignment out;
  out.reserve(positions.size());
  for (std::size_t p : positions) out.push_back(values[p]);
  return out;
}

// ---------------------------------------------------------------------------

/// A local assignment s : U -> O.
struct Section {
  Domain domain;
  Assignment values;

  std::optional<Outcome> value_at(MeasurementId m) const {
    auto it = std::lower_bound(domain.begin(), domain.end(), m);
    if (it == domain.end() || *it != m) return std::nullopt;
    return values[static_cast<std::size_t>(it - domain.begin())];
  }

  friend bool operator==(const Section&, const Section&) = default;
  friend auto operator<=>(const Section&, const Section&) = default;
};

/// s|_V. Throws DomainError unless V is a subset of the domain of s.
inline Section restrict_section(const Section& s, const Domain& target) {
  if (!is_subset(target, s.domain))
    throw DomainError("restrict_section: target is not a subset of the domain");
  return Section{target, project(s.values, positions_in(target, s.domain))};
}

/// Calls `fn(values)` for every assignment of `width` outcomes from an
/// alphabet of size `k`, in lexicographic order (last position fastest).
template <typename Fn>
void for_each_assignment(std::size_t width, std::size_t k, Fn&& fn) {
  Assignment values(width, 0);
  if (k == 0) {
    if (width == 0) fn(values);
    return;
  }
  while (true) {
    fn(values);
    std::size_t i = width;
    while (i > 0) {
      --i;
      if (++values[i] < k) break;
      values[i] = 0;
      if (i == 0) return;
    }
    if (width == 0) return;
  }
}

class Scenario {
 public:
  Scenario() = default;

  /// Builds a scenario from labels. Contexts list measurement labels; each
  /// context is stored in declaration order of its measurements.
  Scenario(std::vector<std::string> measurements,
           const std::vector<std::vector<std::string>>& cover,
           std::size_t outcome_count)
      : measurements_(std::move(measurements)), outcome_count_(outcome_count) {
    index_labels();
    for (const auto& ctx : cover) cover_.push_back(domain_of(ctx));
    validate();
  }

  Scenario(std::vector<std::string> measurements, std::vector<Domain> cover,
           std::size_t outcome_count)
      : measurements_(std::move(measurements)),
        cover_(std::move(cover)),
        outcome_count_(outcome_count) {
    index_labels();
    for (auto& ctx : cover_) {
      std::sort(ctx.begin(), ctx.end());
      if (std::adjacent_find(ctx.begin(), ctx.end()) != ctx.end())
        throw ValidationError("context lists a measurement twice");
      for (MeasurementId m : ctx)
        if (m >= measurements_.size())
          throw ValidationError("context refers to an unknown measurement");
    }
    validate();
  }

  const std::vector<std::string>& measurements() const { return measurements_; }
  const std::vector<Domain>& cover() const { return cover_; }
  const Domain& context(std::size_t i) const { return cover_.at(i); }
  std::size_t measurement_count() const { return measurements_.size(); }
  std::size_t context_count() const { return cover_.size(); }
  std::size_t outcome_count() const { return outcome_count_; }

  Domain all_measurements() const {
    Domain d(measurements_.size());
    std::iota(d.begin(), d.end(), MeasurementId{0});
    return d;
  }

  std::optional<MeasurementId> find_measurement(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  MeasurementId measurement(std::string_view label) const {
    auto m = find_measurement(label);
    if (!m) throw DomainError("unknown measurement '" + std::string(label) + "'");
    return *m;
  }

  /// Sorted domain of the given labels; throws on unknown or repeated labels.
  Domain domain_of(const std::vector<std::string>& labels) const {
    Domain d;
    for (const auto& l : labels) d.push_back(measurement(l));
    std::sort(d.begin(), d.end());
    if (std::adjacent_find(d.begin(), d.end()) != d.end())
      throw ValidationError("measurement listed twice in a context");
    return d;
  }

  std::optional<std::size_t> find_context(const Domain& d) const {
    for (std::size_t i = 0; i < cover_.size(); ++i)
      if (cover_[i] == d) return i;
    return std::nullopt;
  }

  std::string label(const Domain& d) const {
    std::string out = "{";
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i) out += ",";
      out += measurements_.at(d[i]);
    }
    return out + "}";
  }

  /// Shell-friendly rendering `a1=0,b1=0`; the empty section renders as "".
  std::string format_section(const Section& s) const {
    std::string out;
    for (std::size_t i = 0; i < s.domain.size(); ++i) {
      if (i) out += ",";
      out += measurements_.at(s.domain[i]) + "=" + std::to_string(s.values[i]);
    }
    return out;
  }

  /// Parses `a1=0,b1=0` (whitespace tolerated). Values must be in the
  /// outcome alphabet.
  Section parse_section(std::string_view text) const {
    std::vector<std::pair<MeasurementId, Outcome>> pairs;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
      std::erase_if(item, [](unsigned char c) { return std::isspace(c); });
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw ValidationError("section entry '" + item + "' lacks '='");
      MeasurementId m = measurement(item.substr(0, eq));
      const std::string value = item.substr(eq + 1);
      if (value.empty() ||
          !std::all_of(value.begin(), value.end(),
                       [](unsigned char c) { return std::isdigit(c); }))
        throw ValidationError("section value '" + value + "' is not a number");
      unsigned long v = std::stoul(value);
      if (v >= outcome_count_)
        throw ValidationError("section value " + value +
                              " outside the outcome alphabet");
      pairs.emplace_back(m, static_cast<Outcome>(v));
    }
    std::sort(pairs.begin(), pairs.end());
    Section s;
    for (const auto& [m, v] : pairs) {
      if (!s.domain.empty() && s.domain.back() == m)
        throw ValidationError("section assigns a measurement twice");
      s.domain.push_back(m);
      s.values.push_back(v);
    }
    return s;
  }

 private:
  void index_labels() {
    index_.clear();
    for (std::size_t i = 0; i < measurements_.size(); ++i) {
      if (measurements_[i].empty())
        throw ValidationError("empty measurement label");
      if (!index_.emplace(measurements_[i], i).second)
        throw ValidationError("duplicate measurement label '" +
                              measurements_[i] + "'");
    }
  }

  void validate() const {
    if (measurements_.empty()) throw ValidationError("scenario has no measurements");
    if (cover_.empty()) throw ValidationError("scenario has no contexts");
    if (outcome_count_ == 0) throw ValidationError("empty outcome alphabet");
    Domain covered;
    for (const auto& c : cover_) {
      if (c.empty()) throw ValidationError("empty context in cover");
      covered = unite(covered, c);
    }
    if (covered.size() != measurements_.size()) {
      std::string missing;
      for (MeasurementId m = 0; m < measurements_.size(); ++m)
        if (!std::binary_search(covered.begin(), covered.end(), m))
          missing += (missing.empty() ? "" : ",") + measurements_[m];
      throw ValidationError("cover does not cover measurements: " + missing);
    }
    for (std::size_t i = 0; i < cover_.size(); ++i)
      for (std::size_t j = 0; j < cover_.size(); ++j)
        if (i != j && is_subset(cover_[i], cover_[j]))
          throw ValidationError("cover is not an antichain: context " +
                                label(cover_[i]) + " is contained in " +
                                label(cover_[j]));
  }

  std::vector<std::string> measurements_;
  std::vector<Domain> cover_;
  std::size_t outcome_count_ = 0;
  std::unordered_map<std::string, MeasurementId> index_;
};

/// All |O|^|U| sections over U in lexicographic order.
inline std::vector<Section> sections_of(const Scenario& scn, const Domain& u) {
  if (!is_subset(u, scn.all_measurements()))
    throw DomainError("sections_of: subset is not contained in X");
  std::vector<Section> out;
  for_each_assignment(u.size(), scn.outcome_count(),
                      [&](const Assignment& v) { out.push_back({u, v}); });
  return out;
}

// ---------------------------------------------------------------------------
// Nerve of the cover.

/// A q-simplex: q+1 strictly increasing cover indices with nonempty common
/// intersection.
struct Simplex {
  std::vector<std::size_t> contexts;
  Domain intersection;

  std::size_t dimension() const { return contexts.size() - 1; }

  /// The face obtained by deleting the j-th context index.
  std::vector<std::size_t> face(std::size_t j) const {
    std::vector<std::size_t> f = contexts;
    f.erase(f.begin() + static_cast<std::ptrdiff_t>(j));
    return f;
  }

  friend bool operator==(const Simplex&, const Simplex&) = default;
};

class Nerve {
 public:
  Nerve() = default;
  explicit Nerve(std::vector<std::vector<Simplex>> layers)
      : layers_(std::move(layers)) {}

  /// Highest dimension with at least one listed simplex layer.
  std::size_t layer_count() const { return layers_.size(); }
  const std::vector<Simplex>& simplices(std::size_t q) const {
    static const std::vector<Simplex> none;
    return q < layers_.size() ? layers_[q] : none;
  }

  /// Position of the simplex with the given context tuple in its layer.
  std::optional<std::size_t> find(const std::vector<std::size_t>& ctxs) const {
    if (ctxs.empty()) return std::nullopt;
    const auto& layer = simplices(ctxs.size() - 1);
    auto it = std::lower_bound(
        layer.begin(), layer.end(), ctxs,
        [](const Simplex& s, const std::vector<std::size_t>& key) {
          return s.contexts < key;
        });
    if (it == layer.end() || it->contexts != ctxs) return std::nullopt;
    return static_cast<std::size_t>(it - layer.begin());
  }

 private:
  std::vector<std::vector<Simplex>> layers_;
};

/// Simplices of dimension 0..max_q, each layer sorted lexicographically by
/// context tuple. Trailing empty layers are dropped.
inline Nerve build_nerve(const Scenario& scn, std::size_t max_q) {
  std::vector<std::vector<Simplex>> layers;
  std::vector<Simplex> current;
  for (std::size_t i = 0; i < scn.context_count(); ++i)
    current.push_back({{i}, scn.context(i)});
  for (std::size_t q = 0; q <= max_q && !current.empty(); ++q) {
    layers.push_back(current);
    std::vector<Simplex> next;
    for (const Simplex& s : current)
      for (std::size_t j = s.contexts.back() + 1; j < scn.context_count(); ++j) {
        Domain meet = intersect(s.intersection, scn.context(j));
        if (meet.empty()) continue;
        Simplex t{s.contexts, std::move(meet)};
        t.contexts.push_back(j);
        next.push_back(std::move(t));
      }
    current = std::move(next);
  }
  return Nerve(std::move(layers));
}

/// Partition of cover indices by the transitive closure of "intersects".
/// Components are listed by their smallest index; members ascending.
inline std::vector<std::vector<std::size_t>> connected_components(
    const Scenario& scn) {
  const std::size_t n = scn.context_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!intersect(scn.context(i), scn.context(j)).empty())
        parent[std::max(find(i), find(j))] = std::min(find(i), find(j));
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = comps.size();
      comps.emplace_back();
    }
    comps[slot[r]].push_back(i);
  }
  return comps;
}

inline bool is_connected(const Scenario& scn) {
  return connected_components(scn).size() == 1;
}

}  // namespace ctxsheaf
