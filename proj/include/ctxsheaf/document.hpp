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
 * @file document.hpp
 * @brief The versioned JSON model document.
 *
 * A document names a scenario and carries exactly one payload:
 *
 *   supports       rows of possible joint outcomes per context
 *   probabilities  exact rationals "p/q" per context, lexicographic order
 *   theory         linear equations over a ring, solved per context
 *   liar_cycle     {"length": N}
 *   pauli_triple   {"triple": ["XYY", "YXY", "YYX"]}
 *
 * The last two generate their own scenario and must not carry one.
 * Canonical printing sorts object keys, so print(parse(print(d))) is
 * byte-identical to print(d).
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxsheaf/errors.hpp"
#include "ctxsheaf/linear_theory.hpp"
#include "ctxsheaf/model.hpp"
#include "ctxsheaf/paradox.hpp"
#include "ctxsheaf/ring.hpp"
#include "ctxsheaf/scenario.hpp"
#include "ctxsheaf/stabiliser.hpp"

namespace ctxsheaf {

inline constexpr const char* kDocumentFormat = "ctxsheaf-model";
inline constexpr int kDocumentVersion = 1;

/// Schema or syntax error located by line (syntax) or JSON path (schema).
class DocumentError : public ValidationError {
 public:
  DocumentError(std::string where, const std::string& what)
      : ValidationError(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

struct ScenarioBlock {
  std::vector<std::string> measurements;
  std::vector<std::vector<std::string>> contexts;
  std::size_t outcomes = 2;
};

struct SupportsPayload {
  std::vector<std::vector<Assignment>> rows;
};

struct ProbabilitiesPayload {
  std::vector<std::vector<std::string>> rows;
};

struct EquationEntry {
  std::vector<std::string> measurements;
  std::vector<std::int64_t> coefficients;
  std::int64_t constant = 0;
};

struct TheoryPayload {
  std::string ring;
  std::vector<EquationEntry> equations;
  /// Replace the solution model by its largest no-signalling sub-model.
  bool prune_signalling = false;
};

struct LiarCyclePayload {
  std::size_t length = 0;
};

struct PauliTriplePayload {
  std::vector<std::string> triple;
};

using Payload = std::variant<SupportsPayload, ProbabilitiesPayload, TheoryPayload,
                             LiarCyclePayload, PauliTriplePayload>;

struct ModelDocument {
  std::string name;
  std::optional<std::string> description;
  std::optional<std::string> provenance;
  std::optional<ScenarioBlock> scenario;
  Payload payload;
};

namespace detail {

using nlohmann::json;

class DocReader {
 public:
  static const json& field(const json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw DocumentError(path, std::string("missing field '") + key + "'");
    return *it;
  }

  static void expect_object(const json& j, const std::string& path,
                            std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw DocumentError(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) throw DocumentError(path, "unknown field '" + key + "'");
    }
  }

  static const json& array(const json& j, const std::string& path) {
    if (!j.is_array()) throw DocumentError(path, "expected an array");
    return j;
  }

  static std::string string(const json& j, const std::string& path) {
    if (!j.is_string()) throw DocumentError(path, "expected a string");
    return j.get<std::string>();
  }

  static std::int64_t integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw DocumentError(path, "expected an integer");
    return j.get<std::int64_t>();
  }

  static std::size_t count(const json& j, const std::string& path) {
    std::int64_t v = integer(j, path);
    if (v < 0) throw DocumentError(path, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  static std::vector<std::string> strings(const json& j, const std::string& path) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i)
      out.push_back(string(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }
};

inline std::string child(const std::string& path, const char* key) { return path + "." + key; }
inline std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

inline ScenarioBlock read_scenario(const json& j, const std::string& path) {
  DocReader::expect_object(j, path, {"measurements", "contexts", "outcomes", "ring"});
  ScenarioBlock b;
  b.measurements = DocReader::strings(DocReader::field(j, path, "measurements"),
                                      child(path, "measurements"));
  const std::string cpath = child(path, "contexts");
  const json& ctxs = DocReader::array(DocReader::field(j, path, "contexts"), cpath);
  for (std::size_t i = 0; i < ctxs.size(); ++i)
    b.contexts.push_back(DocReader::strings(ctxs[i], index(cpath, i)));
  const bool has_outcomes = j.contains("outcomes"), has_ring = j.contains("ring");
  if (has_outcomes == has_ring)
    throw DocumentError(path, "exactly one of 'outcomes' or 'ring' is required");
  if (has_outcomes) {
    b.outcomes = DocReader::count(j["outcomes"], child(path, "outcomes"));
  } else {
    try {
      RingSpec r = RingSpec::parse(DocReader::string(j["ring"], child(path, "ring")));
      if (r.is_integers())
        throw DocumentError(child(path, "ring"), "outcome ring must be finite");
      b.outcomes = static_cast<std::size_t>(r.modulus());
    } catch (const UnsupportedRingError& e) {
      throw DocumentError(child(path, "ring"), e.what());
    }
  }
  if (b.outcomes == 0) throw DocumentError(child(path, "outcomes"), "must be positive");
  return b;
}

inline Payload read_payload(const json& doc) {
  static const char* kinds[] = {"supports", "probabilities", "theory", "liar_cycle",
                                "pauli_triple"};
  std::optional<std::string> kind;
  for (const char* k : kinds)
    if (doc.contains(k)) {
      if (kind) throw DocumentError("$", "more than one payload: '" + *kind + "' and '" + k + "'");
      kind = k;
    }
  if (!kind)
    throw DocumentError("$", "missing payload (supports, probabilities, theory, liar_cycle "
                             "or pauli_triple)");
  const std::string path = "$." + *kind;
  const json& j = doc[*kind];
  if (*kind == "supports") {
    SupportsPayload p;
    for (std::size_t c = 0; c < DocReader::array(j, path).size(); ++c) {
      const std::string cp = index(path, c);
      p.rows.emplace_back();
      for (std::size_t r = 0; r < DocReader::array(j[c], cp).size(); ++r) {
        const std::string rp = index(cp, r);
        Assignment row;
        for (std::size_t k = 0; k < DocReader::array(j[c][r], rp).size(); ++k) {
          std::size_t v = DocReader::count(j[c][r][k], index(rp, k));
          if (v > UINT32_MAX) throw DocumentError(index(rp, k), "outcome too large");
          row.push_back(static_cast<Outcome>(v));
        }
        p.rows.back().push_back(std::move(row));
      }
    }
    return p;
  }
  if (*kind == "probabilities") {
    ProbabilitiesPayload p;
    for (std::size_t c = 0; c < DocReader::array(j, path).size(); ++c)
      p.rows.push_back(DocReader::strings(j[c], index(path, c)));
    return p;
  }
  if (*kind == "theory") {
    DocReader::expect_object(j, path, {"ring", "equations", "prune_signalling"});
    TheoryPayload p;
    p.ring = DocReader::string(DocReader::field(j, path, "ring"), child(path, "ring"));
    const std::string ep = child(path, "equations");
    const json& eqs = DocReader::array(DocReader::field(j, path, "equations"), ep);
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      const std::string qp = index(ep, i);
      DocReader::expect_object(eqs[i], qp, {"measurements", "coefficients", "constant"});
      EquationEntry e;
      e.measurements = DocReader::strings(DocReader::field(eqs[i], qp, "measurements"),
                                          child(qp, "measurements"));
      const json& co = DocReader::array(DocReader::field(eqs[i], qp, "coefficients"),
                                        child(qp, "coefficients"));
      for (std::size_t k = 0; k < co.size(); ++k)
        e.coefficients.push_back(DocReader::integer(co[k], index(child(qp, "coefficients"), k)));
      e.constant = DocReader::integer(DocReader::field(eqs[i], qp, "constant"),
                                      child(qp, "constant"));
      if (e.coefficients.size() != e.measurements.size())
        throw DocumentError(qp, "coefficients and measurements differ in length");
      p.equations.push_back(std::move(e));
    }
    if (j.contains("prune_signalling")) {
      if (!j["prune_signalling"].is_boolean())
        throw DocumentError(child(path, "prune_signalling"), "expected a boolean");
      p.prune_signalling = j["prune_signalling"].get<bool>();
    }
    return p;
  }
  if (*kind == "liar_cycle") {
    DocReader::expect_object(j, path, {"length"});
    return LiarCyclePayload{DocReader::count(DocReader::field(j, path, "length"),
                                             child(path, "length"))};
  }
  DocReader::expect_object(j, path, {"triple"});
  PauliTriplePayload p{DocReader::strings(DocReader::field(j, path, "triple"),
                                          child(path, "triple"))};
  if (p.triple.size() != 3) throw DocumentError(child(path, "triple"), "expected 3 operators");
  return p;
}

inline std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const ModelDocument& doc) {
  using nlohmann::json;
  json j;
  j["format"] = kDocumentFormat;
  j["version"] = kDocumentVersion;
  j["name"] = doc.name;
  if (doc.description) j["description"] = *doc.description;
  if (doc.provenance) j["provenance"] = *doc.provenance;
  if (doc.scenario) {
    json s;
    s["measurements"] = doc.scenario->measurements;
    s["contexts"] = doc.scenario->contexts;
    s["outcomes"] = doc.scenario->outcomes;
    j["scenario"] = std::move(s);
  }
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SupportsPayload>) {
          j["supports"] = p.rows;
        } else if constexpr (std::is_same_v<T, ProbabilitiesPayload>) {
          j["probabilities"] = p.rows;
        } else if constexpr (std::is_same_v<T, TheoryPayload>) {
          json t;
          t["ring"] = p.ring;
          t["equations"] = json::array();
          for (const auto& e : p.equations)
            t["equations"].push_back({{"measurements", e.measurements},
                                      {"coefficients", e.coefficients},
                                      {"constant", e.constant}});
          if (p.prune_signalling) t["prune_signalling"] = true;
          j["theory"] = std::move(t);
        } else if constexpr (std::is_same_v<T, LiarCyclePayload>) {
          j["liar_cycle"] = {{"length", p.length}};
        } else {
          j["pauli_triple"] = {{"triple", p.triple}};
        }
      },
      doc.payload);
  return j;
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string print_document(const ModelDocument& doc) {
  return to_json(doc).dump(2) + "\n";
}

/// Reads the schema only; see parse_model for full validation.
inline ModelDocument read_document(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DocumentError("line " + std::to_string(detail::line_of(text, e.byte)),
                        "malformed JSON");
  }
  detail::DocReader::expect_object(
      j, "$",
      {"format", "version", "name", "description", "provenance", "scenario", "supports",
       "probabilities", "theory", "liar_cycle", "pauli_triple"});
  if (detail::DocReader::string(detail::DocReader::field(j, "$", "format"), "$.format") !=
      kDocumentFormat)
    throw DocumentError("$.format", std::string("expected \"") + kDocumentFormat + "\"");
  if (detail::DocReader::integer(detail::DocReader::field(j, "$", "version"), "$.version") !=
      kDocumentVersion)
    throw DocumentError("$.version", "unsupported version");
  ModelDocument doc;
  doc.name = detail::DocReader::string(detail::DocReader::field(j, "$", "name"), "$.name");
  if (j.contains("description"))
    doc.description = detail::DocReader::string(j["description"], "$.description");
  if (j.contains("provenance"))
    doc.provenance = detail::DocReader::string(j["provenance"], "$.provenance");
  if (j.contains("scenario")) doc.scenario = detail::read_scenario(j["scenario"], "$.scenario");
  doc.payload = detail::read_payload(j);
  return doc;
}

// ---------------------------------------------------------------------------

/// The objects a document denotes.
struct Materialised {
  EmpiricalModel model;
  std::optional<ProbabilityTable> table;
  std::optional<Theory> theory;
};

namespace detail {

inline Scenario scenario_of(const ScenarioBlock& b) {
  try {
    Scenario scn(b.measurements, b.contexts, b.outcomes);
    for (std::size_t c = 0; c < b.contexts.size(); ++c)
      for (std::size_t k = 0; k < b.contexts[c].size(); ++k)
        if (scn.measurements()[scn.context(c)[k]] != b.contexts[c][k])
          throw DocumentError("$.scenario.contexts[" + std::to_string(c) + "]",
                              "measurements must be listed in declaration order");
    return scn;
  } catch (const DocumentError&) {
    throw;
  } catch (const ValidationError& e) {
    throw DocumentError("$.scenario", e.what());
  } catch (const DomainError& e) {
    throw DocumentError("$.scenario", e.what());
  }
}

inline void reject_signalling(const EmpiricalModel& model, const std::string& path) {
  auto v = check_no_signalling(model);
  if (v) return;
  const Scenario& scn = model.scenario();
  throw SignallingError(path + ": supports of " +
                        scn.label(scn.context(v.witness->first_context)) + " and " +
                        scn.label(scn.context(v.witness->second_context)) +
                        " disagree at " + scn.format_section(v.witness->overlap_section));
}

inline Theory theory_of_payload(const TheoryPayload& p, const Scenario& scn) {
  RingSpec ring;
  try {
    ring = RingSpec::parse(p.ring);
  } catch (const UnsupportedRingError& e) {
    throw DocumentError("$.theory.ring", e.what());
  }
  Theory th{ring, {}};
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    const auto& e = p.equations[i];
    const std::string path = "$.theory.equations[" + std::to_string(i) + "]";
    Domain dom;
    try {
      dom = scn.domain_of(e.measurements);
    } catch (const Error& err) {
      throw DocumentError(path, err.what());
    }
    bool attached = false;
    for (std::size_t c = 0; c < scn.context_count(); ++c) {
      const Domain& ctx = scn.context(c);
      if (!is_subset(dom, ctx)) continue;
      LinearEquation eq{c, Vector(ctx.size(), 0), e.constant};
      for (std::size_t k = 0; k < e.measurements.size(); ++k) {
        auto pos = positions_in({scn.measurement(e.measurements[k])}, ctx).front();
        eq.coefficients[pos] += e.coefficients[k];
      }
      th.equations.push_back(std::move(eq));
      attached = true;
    }
    if (!attached) throw DocumentError(path, "no context contains these measurements");
  }
  th.canonicalize();
  return th;
}

}  // namespace detail

/// Builds the model and validates it: E1, alphabet bounds, no-signalling.
inline Materialised materialise(const ModelDocument& doc) {
  const bool generated = std::holds_alternative<LiarCyclePayload>(doc.payload) ||
                         std::holds_alternative<PauliTriplePayload>(doc.payload);
  if (generated && doc.scenario)
    throw DocumentError("$.scenario", "not allowed with a generated payload");
  if (!generated && !doc.scenario) throw DocumentError("$", "missing field 'scenario'");

  if (const auto* p = std::get_if<LiarCyclePayload>(&doc.payload))
    return {liar_cycle_model(p->length), std::nullopt, std::nullopt};
  if (const auto* p = std::get_if<PauliTriplePayload>(&doc.payload)) {
    if (p->triple.size() != 3) throw DocumentError("$.pauli_triple.triple", "expected 3 operators");
    std::vector<PauliOperator> ops;
    for (std::size_t i = 0; i < 3; ++i) {
      try {
        ops.push_back(PauliOperator::parse(p->triple[i]));
      } catch (const Error& e) {
        throw DocumentError("$.pauli_triple.triple[" + std::to_string(i) + "]", e.what());
      }
    }
    EmpiricalModel m = stabiliser_model(ops);
    detail::reject_signalling(m, "$.pauli_triple");
    return {std::move(m), std::nullopt, std::nullopt};
  }

  Scenario scn = detail::scenario_of(*doc.scenario);
  if (const auto* p = std::get_if<SupportsPayload>(&doc.payload)) {
    EmpiricalModel m;
    try {
      m = EmpiricalModel(scn, p->rows);
    } catch (const ValidationError& e) {
      throw DocumentError("$.supports", e.what());
    }
    detail::reject_signalling(m, "$.supports");
    return {std::move(m), std::nullopt, std::nullopt};
  }
  if (const auto* p = std::get_if<ProbabilitiesPayload>(&doc.payload)) {
    ProbabilityTable pt{scn, {}};
    for (std::size_t c = 0; c < p->rows.size(); ++c) {
      pt.rows.emplace_back();
      for (std::size_t k = 0; k < p->rows[c].size(); ++k) {
        try {
          pt.rows.back().push_back(parse_rational(p->rows[c][k]));
        } catch (const ValidationError& e) {
          throw DocumentError("$.probabilities[" + std::to_string(c) + "][" +
                                  std::to_string(k) + "]",
                              e.what());
        }
      }
    }
    EmpiricalModel m = support_of_probability_table(pt);
    return {std::move(m), std::move(pt), std::nullopt};
  }
  const auto& tp = std::get<TheoryPayload>(doc.payload);
  Theory th = detail::theory_of_payload(tp, scn);
  EmpiricalModel m = model_of_theory(th, scn);
  if (tp.prune_signalling) m = no_signalling_core(m);
  detail::reject_signalling(m, "$.theory");
  return {std::move(m), std::nullopt, std::move(th)};
}

/// Parses and fully validates a document.
inline ModelDocument parse_model(std::string_view text) {
  ModelDocument doc = read_document(text);
  materialise(doc);
  return doc;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Document for an arbitrary model as a supports payload.
inline ModelDocument document_of_model(const EmpiricalModel& model, std::string name) {
  const Scenario& scn = model.scenario();
  ModelDocument doc;
  doc.name = std::move(name);
  ScenarioBlock b;
  b.measurements = scn.measurements();
  for (const Domain& ctx : scn.cover()) {
    std::vector<std::string> labels;
    for (MeasurementId m : ctx) labels.push_back(scn.measurements()[m]);
    b.contexts.push_back(std::move(labels));
  }
  b.outcomes = scn.outcome_count();
  doc.scenario = std::move(b);
  doc.payload = SupportsPayload{model.supports()};
  return doc;
}

}  // namespace ctxsheaf
