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
 * @file report.hpp
 * @brief The full analysis pipeline and its text / JSON reports.
 *
 * analyze() runs every classifier over the requested rings (Z is always
 * added) and then checks the implication chains
 *
 *   AvN_R => SC(Aff S) => CSC_R => CSC_Z => SC
 *   AvN_R(e,s) => LC(Aff S, s) => CLC_R(S,s) => CLC_Z(S,s) => LC(S,s)
 *
 * plus SC(Aff S) <=> AvN_R for prime moduli. A violation raises
 * SelfCheckFailure; undecided verdicts are skipped, never guessed.
 */
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxsheaf/cohomology.hpp"
#include "ctxsheaf/document.hpp"
#include "ctxsheaf/errors.hpp"
#include "ctxsheaf/linear_theory.hpp"
#include "ctxsheaf/model.hpp"
#include "ctxsheaf/ring.hpp"

namespace ctxsheaf {

struct SectionChain {
  std::size_t context;
  Assignment values;
  std::optional<bool> avn_at;
  std::optional<bool> lc_aff;
  std::optional<bool> clc;
};

struct RingVerdict {
  RingSpec ring;
  /// AvN and Aff need the outcome alphabet inside the ring.
  bool linear_applicable = false;
  std::optional<bool> avn;
  std::optional<Vector> avn_solution;
  std::optional<Vector> avn_witness;
  std::size_t theory_size = 0;
  std::optional<bool> sc_aff;
  std::optional<ObstructionReport> cohomology;
  std::vector<SectionChain> sections;
  std::vector<std::string> notes;
};

struct AnalysisReport {
  std::string name;
  std::string hash;
  std::size_t measurements = 0, contexts = 0, outcomes = 0, sections = 0;
  bool no_signalling = true;
  bool connected = true;
  ContextualityReport contextuality;
  std::vector<RingVerdict> rings;
  std::vector<std::string> chain_checks;
  double elapsed_ms = 0;
  /// Exposed for formatting.
  Scenario scenario;
};

struct AnalyzeOptions {
  SearchOptions search;
};

namespace detail {

inline std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline void implies(std::optional<bool> a, std::optional<bool> b, const std::string& what,
                    std::size_t& checked) {
  if (!a || !b) return;
  ++checked;
  if (*a && !*b) throw SelfCheckFailure("implication violated: " + what);
}

/// Asserts the implication chains; records a count per ring.
inline void check_hierarchy(AnalysisReport& rep) {
  const RingVerdict* z = nullptr;
  for (const auto& rv : rep.rings)
    if (rv.ring.is_integers()) z = &rv;
  const std::optional<bool> sc = rep.contextuality.strongly_contextual;
  std::optional<bool> csc_z;
  if (z && z->cohomology) csc_z = z->cohomology->csc;

  for (const auto& rv : rep.rings) {
    std::size_t checked = 0;
    const std::string r = rv.ring.name();
    std::optional<bool> csc_r;
    if (rv.cohomology) csc_r = rv.cohomology->csc;
    implies(csc_r, sc, "CSC_" + r + " => SC", checked);
    if (rv.cohomology)
      for (const auto& so : rv.cohomology->sections)
        implies(!so.vanishes,
                rep.contextuality.logically_contextual_at(so.context, so.values),
                "CLC_" + r + " => LC at " +
                    rep.scenario.format_section({rep.scenario.context(so.context), so.values}), checked);
    if (rv.ring.is_finite()) {
      implies(rv.avn, sc, "AvN_" + r + " => SC", checked);
      implies(rv.avn, rv.sc_aff, "AvN_" + r + " => SC(Aff S)", checked);
      implies(rv.sc_aff, csc_r, "SC(Aff S) => CSC_" + r, checked);
      implies(csc_r, csc_z, "CSC_" + r + " => CSC_Z", checked);
      if (rv.ring.is_field())
        implies(rv.sc_aff, rv.avn, "SC(Aff S) => AvN_" + r + " (field)", checked);
      for (const auto& sc_row : rv.sections) {
        const std::string at =
            rep.scenario.format_section({rep.scenario.context(sc_row.context), sc_row.values});
        std::optional<bool> clc_z;
        if (z && z->cohomology) clc_z = !z->cohomology->vanishes_at(sc_row.context, sc_row.values);
        auto lc = rep.contextuality.logically_contextual_at(sc_row.context, sc_row.values);
        implies(sc_row.avn_at, sc_row.lc_aff, "AvN_" + r + "(e,s) => LC(Aff S,s) at " + at, checked);
        implies(sc_row.lc_aff, sc_row.clc, "LC(Aff S,s) => CLC_" + r + " at " + at, checked);
        implies(sc_row.clc, clc_z, "CLC_" + r + " => CLC_Z at " + at, checked);
        implies(clc_z, lc, "CLC_Z => LC at " + at, checked);
      }
    }
    rep.chain_checks.push_back(r + ": " + std::to_string(checked) + " implications hold");
  }
}

}  // namespace detail

/// Runs the pipeline on a model. Rings are analysed in the given order with
/// Z appended when missing.
inline AnalysisReport analyze_model(const EmpiricalModel& model, const std::string& name,
                                    const std::string& hash, std::vector<RingSpec> rings,
                                    const AnalyzeOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  const Scenario& scn = model.scenario();
  AnalysisReport rep;
  rep.name = name;
  rep.hash = hash;
  rep.scenario = scn;
  rep.measurements = scn.measurement_count();
  rep.contexts = scn.context_count();
  rep.outcomes = scn.outcome_count();
  rep.sections = model.section_count();
  rep.no_signalling = check_no_signalling(model).no_signalling;
  if (!rep.no_signalling) throw SignallingError("analyze: model is signalling");
  rep.connected = is_connected(scn);
  if (std::find(rings.begin(), rings.end(), RingSpec::integers()) == rings.end())
    rings.push_back(RingSpec::integers());

  rep.contextuality = classify_contextuality(model, opts.search);

  for (const RingSpec& ring : rings) {
    RingVerdict rv;
    rv.ring = ring;
    rv.linear_applicable = ring.is_finite() && scn.outcome_count() <= ring.modulus();
    if (rep.connected) {
      rv.cohomology = classify_cohomological(model, ring);
    } else {
      rv.notes.push_back("cover is disconnected; analyse each component separately");
    }
    if (ring.is_integers()) {
      rv.notes.push_back("AvN and affine closure are not defined over Z");
    } else if (!rv.linear_applicable) {
      rv.notes.push_back("outcome alphabet is larger than " + ring.name() +
                         "; AvN and affine closure skipped");
    } else {
      AvnResult avn = is_avn(model, ring);
      rv.avn = avn.avn;
      rv.avn_solution = avn.solution;
      rv.avn_witness = avn.witness;
      rv.theory_size = avn.theory.equations.size();
      EmpiricalModel aff = affine_closure_model(model, ring);
      ContextualityReport aff_rep = classify_contextuality(aff, opts.search);
      rv.sc_aff = aff_rep.strongly_contextual;
      for (std::size_t c = 0; c < scn.context_count(); ++c)
        for (std::size_t r = 0; r < model.support(c).size(); ++r) {
          SectionChain row{c, model.support(c)[r], std::nullopt, std::nullopt, std::nullopt};
          row.avn_at = is_avn_at(model, model.section(c, r), ring).avn;
          row.lc_aff = aff_rep.logically_contextual_at(c, model.support(c)[r]);
          if (rv.cohomology) row.clc = !rv.cohomology->vanishes_at(c, model.support(c)[r]);
          rv.sections.push_back(std::move(row));
        }
    }
    rep.rings.push_back(std::move(rv));
  }
  detail::check_hierarchy(rep);
  rep.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline AnalysisReport analyze(const ModelDocument& doc, const std::vector<RingSpec>& rings,
                              const AnalyzeOptions& opts = {}) {
  Materialised m = materialise(doc);
  return analyze_model(m.model, doc.name, detail::hex64(fnv1a(print_document(doc))), rings,
                       opts);
}

/// Default rings: Z_k for the outcome alphabet size k (at least 2), then Z.
inline std::vector<RingSpec> default_rings(const EmpiricalModel& model) {
  std::size_t k = std::max<std::size_t>(2, model.scenario().outcome_count());
  return {RingSpec::modulo(k), RingSpec::integers()};
}

// ---------------------------------------------------------------------------
// Rendering.

namespace detail {

inline std::string verdict(std::optional<bool> v) {
  if (!v) return "undecided at budget";
  return *v ? "yes" : "no";
}

inline std::string vector_str(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
  return out + ")";
}

inline nlohmann::json tri(std::optional<bool> v) {
  if (!v) return "undecided";
  return *v;
}

}  // namespace detail

inline std::string format_report_text(const AnalysisReport& rep) {
  const Scenario& scn = rep.scenario;
  std::ostringstream os;
  os << "model " << rep.name << " [" << rep.hash << "]\n";
  os << "  measurements " << rep.measurements << ", contexts " << rep.contexts
     << ", outcomes " << rep.outcomes << ", supported sections " << rep.sections << "\n";
  os << "  no-signalling: " << (rep.no_signalling ? "yes" : "no") << "\n";
  const auto& cr = rep.contextuality;
  os << "  logically contextual: " << detail::verdict(cr.logically_contextual) << "\n";
  for (const auto& sv : cr.sections)
    if (sv.extends && !*sv.extends)
      os << "    does not extend: " << scn.format_section({scn.context(sv.context), sv.values})
         << "\n";
  os << "  strongly contextual: " << detail::verdict(cr.strongly_contextual) << "\n";
  if (cr.global_section) os << "    global section: " << scn.format_section(*cr.global_section) << "\n";
  for (const auto& rv : rep.rings) {
    os << "  ring " << rv.ring.name() << "\n";
    if (rv.avn) {
      os << "    AvN: " << (*rv.avn ? "yes" : "no") << " (theory of " << rv.theory_size
         << " equations)\n";
      if (rv.avn_witness) os << "      inconsistency witness " << detail::vector_str(*rv.avn_witness) << "\n";
      if (rv.avn_solution) os << "      global solution " << detail::vector_str(*rv.avn_solution) << "\n";
    }
    if (rv.linear_applicable) os << "    SC(Aff S): " << detail::verdict(rv.sc_aff) << "\n";
    if (rv.cohomology) {
      os << "    CLC: " << (rv.cohomology->clc ? "yes" : "no")
         << ", CSC: " << (rv.cohomology->csc ? "yes" : "no") << " (system "
         << rv.cohomology->system_rows << "x" << rv.cohomology->system_cols << ")\n";
    }
    for (const auto& n : rv.notes) os << "    note: " << n << "\n";
  }
  os << "  hierarchy:\n";
  for (const auto& line : rep.chain_checks) os << "    " << line << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", rep.elapsed_ms);
  os << "  elapsed " << buf << " ms\n";
  return os.str();
}

inline nlohmann::json report_json(const AnalysisReport& rep) {
  using nlohmann::json;
  const Scenario& scn = rep.scenario;
  json j;
  j["name"] = rep.name;
  j["hash"] = rep.hash;
  j["measurements"] = rep.measurements;
  j["contexts"] = rep.contexts;
  j["outcomes"] = rep.outcomes;
  j["sections"] = rep.sections;
  j["no_signalling"] = rep.no_signalling;
  j["connected"] = rep.connected;
  const auto& cr = rep.contextuality;
  j["logically_contextual"] = detail::tri(cr.logically_contextual);
  j["strongly_contextual"] = detail::tri(cr.strongly_contextual);
  j["non_extending_sections"] = json::array();
  for (const auto& sv : cr.sections)
    if (sv.extends && !*sv.extends)
      j["non_extending_sections"].push_back(scn.format_section({scn.context(sv.context), sv.values}));
  j["global_section"] = cr.global_section ? json(scn.format_section(*cr.global_section)) : json();
  j["rings"] = json::array();
  for (const auto& rv : rep.rings) {
    json r;
    r["ring"] = rv.ring.name();
    r["avn"] = rv.avn ? json(*rv.avn) : json();
    r["theory_size"] = rv.theory_size;
    r["sc_aff"] = rv.linear_applicable ? detail::tri(rv.sc_aff) : json();
    if (rv.avn_witness) {
      json w = json::array();
      for (const auto& x : *rv.avn_witness) w.push_back(x.str());
      r["avn_witness"] = w;
    }
    if (rv.cohomology) {
      r["clc"] = rv.cohomology->clc;
      r["csc"] = rv.cohomology->csc;
      r["obstruction_system"] = {rv.cohomology->system_rows, rv.cohomology->system_cols};
      json secs = json::array();
      for (const auto& s : rv.cohomology->sections)
        secs.push_back({{"section", scn.format_section({scn.context(s.context), s.values})},
                        {"obstruction_vanishes", s.vanishes}});
      r["obstructions"] = secs;
    } else {
      r["clc"] = json();
      r["csc"] = json();
    }
    r["notes"] = rv.notes;
    j["rings"].push_back(std::move(r));
  }
  j["hierarchy"] = rep.chain_checks;
  j["elapsed_ms"] = rep.elapsed_ms;
  return j;
}

}  // namespace ctxsheaf
