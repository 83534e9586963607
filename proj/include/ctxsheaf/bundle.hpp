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
 * @file bundle.hpp
 * @brief DOT rendering of a model as a bundle over its measurement graph.
 *
 * Base vertices are measurements, base edges join co-measurable pairs.
 * Each measurement carries a fibre of outcome vertices "m:o", and a fibre
 * edge joins (m:o) and (m':o') when some supported section of a context
 * containing both restricts to that pair.
 */
#pragma once

#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ctxsheaf/model.hpp"

namespace ctxsheaf {

struct BundleGraph {
  std::vector<std::pair<MeasurementId, MeasurementId>> base_edges;
  /// (m, o, m', o') with m < m'.
  std::vector<std::tuple<MeasurementId, Outcome, MeasurementId, Outcome>> fibre_edges;
  /// Contexts with more than two measurements, drawn pairwise only.
  std::vector<std::size_t> hyper_contexts;
};

inline BundleGraph bundle_graph(const EmpiricalModel& model) {
  const Scenario& scn = model.scenario();
  std::set<std::pair<MeasurementId, MeasurementId>> base;
  std::set<std::tuple<MeasurementId, Outcome, MeasurementId, Outcome>> fibre;
  BundleGraph g;
  for (std::size_t c = 0; c < scn.context_count(); ++c) {
    const Domain& ctx = scn.context(c);
    if (ctx.size() > 2) g.hyper_contexts.push_back(c);
    for (std::size_t i = 0; i < ctx.size(); ++i)
      for (std::size_t j = i + 1; j < ctx.size(); ++j) {
        base.insert({ctx[i], ctx[j]});
        for (const Assignment& a : model.support(c)) fibre.insert({ctx[i], a[i], ctx[j], a[j]});
      }
  }
  g.base_edges.assign(base.begin(), base.end());
  g.fibre_edges.assign(fibre.begin(), fibre.end());
  return g;
}

namespace detail {
inline std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}
}  // namespace detail

/// Deterministic: vertices in measurement/outcome order, edges sorted.
inline std::string export_bundle_dot(const EmpiricalModel& model) {
  const Scenario& scn = model.scenario();
  const BundleGraph g = bundle_graph(model);
  auto fv = [&](MeasurementId m, Outcome o) {
    return detail::dot_id(scn.measurements()[m] + ":" + std::to_string(o));
  };
  std::ostringstream os;
  os << "graph bundle {\n";
  os << "  // measurements " << scn.measurement_count() << ", outcomes " << scn.outcome_count()
     << ", fibre vertices " << scn.measurement_count() * scn.outcome_count()
     << ", fibre edges " << g.fibre_edges.size() << "\n";
  for (std::size_t c : g.hyper_contexts)
    os << "  // note: context " << scn.label(scn.context(c))
       << " has more than two measurements; only its pairs are drawn\n";
  os << "  subgraph cluster_base {\n    label=\"base\";\n";
  for (std::size_t m = 0; m < scn.measurement_count(); ++m)
    os << "    " << detail::dot_id(scn.measurements()[m]) << " [shape=box];\n";
  for (const auto& [a, b] : g.base_edges)
    os << "    " << detail::dot_id(scn.measurements()[a]) << " -- "
       << detail::dot_id(scn.measurements()[b]) << ";\n";
  os << "  }\n";
  for (std::size_t m = 0; m < scn.measurement_count(); ++m) {
    os << "  subgraph " << detail::dot_id("cluster_fibre_" + scn.measurements()[m]) << " {\n";
    os << "    label=" << detail::dot_id(scn.measurements()[m]) << ";\n";
    for (std::size_t o = 0; o < scn.outcome_count(); ++o)
      os << "    " << fv(m, static_cast<Outcome>(o)) << " [shape=circle];\n";
    os << "  }\n";
  }
  for (const auto& [m1, o1, m2, o2] : g.fibre_edges)
    os << "  " << fv(m1, o1) << " -- " << fv(m2, o2) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace ctxsheaf
