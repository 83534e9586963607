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
 * @file corpus.hpp
 * @brief Builtin model documents.
 */
#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "ctxsheaf/document.hpp"
#include "ctxsheaf/errors.hpp"

namespace ctxsheaf {

namespace detail {

inline ScenarioBlock bipartite_block() {
  return {{"a1", "a2", "b1", "b2"},
          {{"a1", "b1"}, {"a1", "b2"}, {"a2", "b1"}, {"a2", "b2"}},
          2};
}

inline ModelDocument corpus_bell() {
  ModelDocument d;
  d.name = "bell";
  d.description = "Bell table: two parties, two binary measurements each";
  d.scenario = bipartite_block();
  d.payload = ProbabilitiesPayload{{{"1/2", "0", "0", "1/2"},
                                    {"3/8", "1/8", "1/8", "3/8"},
                                    {"3/8", "1/8", "1/8", "3/8"},
                                    {"1/8", "3/8", "3/8", "1/8"}}};
  return d;
}

inline ModelDocument corpus_hardy() {
  ModelDocument d;
  d.name = "hardy";
  d.description = "Hardy model: four pinned entries, everything else possible";
  d.scenario = bipartite_block();
  const std::vector<Assignment> all{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  d.payload = SupportsPayload{{all,
                               {{0, 1}, {1, 0}, {1, 1}},
                               {{0, 1}, {1, 0}, {1, 1}},
                               {{0, 0}, {0, 1}, {1, 0}}}};
  return d;
}

inline ModelDocument corpus_pr_box() {
  ModelDocument d;
  d.name = "pr-box";
  d.description = "PR box: correlated on three contexts, anticorrelated on a2 b2";
  d.scenario = bipartite_block();
  const std::vector<Assignment> eq{{0, 0}, {1, 1}}, ne{{0, 1}, {1, 0}};
  d.payload = SupportsPayload{{eq, eq, eq, ne}};
  return d;
}

inline ModelDocument corpus_ghz() {
  ModelDocument d;
  d.name = "ghz-mermin";
  d.description = "GHZ parity model generated by the stabiliser triple XYY, YXY, YYX";
  d.payload = PauliTriplePayload{{"XYY", "YXY", "YYX"}};
  return d;
}

inline ModelDocument corpus_specker() {
  ModelDocument d;
  d.name = "specker-triangle";
  d.description = "Three pairwise anticorrelated binary variables";
  d.scenario = ScenarioBlock{{"x1", "x2", "x3"}, {{"x1", "x2"}, {"x2", "x3"}, {"x1", "x3"}}, 2};
  const std::vector<Assignment> ne{{0, 1}, {1, 0}};
  d.payload = SupportsPayload{{ne, ne, ne}};
  return d;
}

inline ModelDocument corpus_liar4() {
  ModelDocument d;
  d.name = "liar-4";
  d.description = "Liar cycle of length four";
  d.payload = LiarCyclePayload{4};
  return d;
}

inline ModelDocument corpus_box25() {
  ModelDocument d;
  d.name = "box-25";
  d.description =
      "Tripartite binary model cut out by six mod-3 equations, restricted to its "
      "no-signalling core";
  ScenarioBlock b;
  b.measurements = {"a0", "a1", "b0", "b1", "c0", "c1"};
  for (const char* a : {"a0", "a1"})
    for (const char* bb : {"b0", "b1"})
      for (const char* c : {"c0", "c1"}) b.contexts.push_back({a, bb, c});
  b.outcomes = 2;
  d.scenario = std::move(b);
  d.payload = TheoryPayload{"z3",
                            {{{"a0", "b0"}, {1, 2}, 0},
                             {{"a1", "c0"}, {1, 2}, 0},
                             {{"a0", "b1", "c0"}, {1, 1, 1}, 2},
                             {{"a0", "b1", "c1"}, {1, 1, 1}, 2},
                             {{"a1", "b0", "c1"}, {1, 1, 1}, 2},
                             {{"a1", "b1", "c1"}, {1, 1, 1}, 2}},
                            true};
  return d;
}

inline ModelDocument corpus_peres_mermin() {
  ModelDocument d;
  d.name = "peres-mermin-square";
  d.description =
      "Peres-Mermin square of two-qubit observables; each row and the first two columns "
      "multiply to +I, the last column to -I";
  d.provenance =
      "external: A. Peres, Phys. Lett. A 151 (1990) 107; N. D. Mermin, Phys. Rev. Lett. 65 "
      "(1990) 3373";
  ScenarioBlock b;
  b.measurements = {"XI", "IX", "XX", "IZ", "ZI", "ZZ", "XZ", "ZX", "YY"};
  b.contexts = {{"XI", "IX", "XX"}, {"IZ", "ZI", "ZZ"}, {"XZ", "ZX", "YY"},
                {"XI", "IZ", "XZ"}, {"IX", "ZI", "ZX"}, {"XX", "ZZ", "YY"}};
  b.outcomes = 2;
  d.scenario = std::move(b);
  const std::array<Outcome, 6> parity{0, 0, 0, 0, 0, 1};
  SupportsPayload p;
  for (Outcome par : parity) {
    p.rows.emplace_back();
    for_each_assignment(3, 2, [&](const Assignment& a) {
      if ((a[0] + a[1] + a[2]) % 2 == par) p.rows.back().push_back(a);
    });
  }
  d.payload = std::move(p);
  return d;
}

/// Eighteen rays in R^4 and nine orthogonal bases, each ray in two bases.
inline const std::vector<std::array<std::array<int, 4>, 4>>& ks18_bases() {
  static const std::vector<std::array<std::array<int, 4>, 4>> bases{
      {{{0, 0, 0, 1}, {0, 0, 1, 0}, {1, 1, 0, 0}, {1, -1, 0, 0}}},
      {{{0, 0, 0, 1}, {0, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, -1, 0}}},
      {{{1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}}},
      {{{1, -1, 1, -1}, {1, 1, 1, 1}, {1, 0, -1, 0}, {0, 1, 0, -1}}},
      {{{0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 1}, {1, 0, 0, -1}}},
      {{{1, -1, -1, 1}, {1, 1, 1, 1}, {1, 0, 0, -1}, {0, 1, -1, 0}}},
      {{{1, 1, -1, 1}, {1, 1, 1, -1}, {1, -1, 0, 0}, {0, 0, 1, 1}}},
      {{{1, 1, -1, 1}, {-1, 1, 1, 1}, {1, 0, 1, 0}, {0, 1, 0, -1}}},
      {{{1, 1, 1, -1}, {-1, 1, 1, 1}, {1, 0, 0, 1}, {0, 1, -1, 0}}},
  };
  return bases;
}

/// Rays in order of first appearance in ks18_bases().
inline std::vector<std::array<int, 4>> ks18_rays() {
  std::vector<std::array<int, 4>> rays;
  for (const auto& basis : ks18_bases())
    for (const auto& v : basis)
      if (std::find(rays.begin(), rays.end(), v) == rays.end()) rays.push_back(v);
  return rays;
}

inline std::string ks18_label(std::size_t i) {
  return (i + 1 < 10 ? "v0" : "v") + std::to_string(i + 1);
}

inline ModelDocument corpus_ks18() {
  ModelDocument d;
  d.name = "ks-18";
  d.description =
      "18-ray Kochen-Specker set in dimension four; in each basis exactly one ray is "
      "assigned 1";
  d.provenance =
      "external: A. Cabello, J. M. Estebaranz, G. Garcia-Alcaine, Phys. Lett. A 212 (1996) 183";
  const auto rays = ks18_rays();
  ScenarioBlock b;
  for (std::size_t i = 0; i < rays.size(); ++i) b.measurements.push_back(ks18_label(i));
  SupportsPayload p;
  for (const auto& basis : ks18_bases()) {
    std::vector<std::size_t> idx;
    for (const auto& v : basis)
      idx.push_back(static_cast<std::size_t>(std::find(rays.begin(), rays.end(), v) -
                                             rays.begin()));
    std::sort(idx.begin(), idx.end());
    std::vector<std::string> ctx;
    for (std::size_t i : idx) ctx.push_back(ks18_label(i));
    b.contexts.push_back(std::move(ctx));
    std::vector<Assignment> rows;
    for (std::size_t hot = 0; hot < 4; ++hot) {
      Assignment a(4, 0);
      a[hot] = 1;
      rows.push_back(std::move(a));
    }
    std::sort(rows.begin(), rows.end());
    p.rows.push_back(std::move(rows));
  }
  b.outcomes = 2;
  d.scenario = std::move(b);
  d.payload = std::move(p);
  return d;
}

}  // namespace detail

inline std::vector<std::string> corpus_names() {
  return {"bell",       "hardy",  "pr-box",        "ghz-mermin", "specker-triangle",
          "liar-4",     "box-25", "peres-mermin-square", "ks-18"};
}

inline ModelDocument corpus(const std::string& name) {
  if (name == "bell") return detail::corpus_bell();
  if (name == "hardy") return detail::corpus_hardy();
  if (name == "pr-box") return detail::corpus_pr_box();
  if (name == "ghz-mermin") return detail::corpus_ghz();
  if (name == "specker-triangle") return detail::corpus_specker();
  if (name == "liar-4") return detail::corpus_liar4();
  if (name == "box-25") return detail::corpus_box25();
  if (name == "peres-mermin-square") return detail::corpus_peres_mermin();
  if (name == "ks-18") return detail::corpus_ks18();
  throw PreconditionError("unknown corpus entry '" + name + "'");
}

}  // namespace ctxsheaf
