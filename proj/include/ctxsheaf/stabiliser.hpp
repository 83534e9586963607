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
 * @file stabiliser.hpp
 * @brief Pauli n-group arithmetic, AvN triples, and the parity theories and
 * models induced by stabiliser subgroups.
 *
 * Measurement of the letter L at site i is labelled "L<i+1>" (X1, Y2, ...).
 * Eigenvalue +1 is outcome 0 and -1 is outcome 1.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ctxsheaf/errors.hpp"
#include "ctxsheaf/linear_theory.hpp"
#include "ctxsheaf/model.hpp"
#include "ctxsheaf/ring.hpp"
#include "ctxsheaf/scenario.hpp"

namespace ctxsheaf {

/// i^phase times a tensor product of single-qubit Paulis.
struct PauliOperator {
  std::uint8_t phase = 0;  // exponent of i, 0..3
  std::string letters;     // over I, X, Y, Z

  std::size_t arity() const { return letters.size(); }
  bool is_identity() const {
    return std::all_of(letters.begin(), letters.end(), [](char c) { return c == 'I'; });
  }

  /// Parses "[+|-][i]LETTERS", e.g. "-XYY", "+iZI", "XX".
  static PauliOperator parse(std::string_view text) {
    std::size_t pos = 0;
    PauliOperator p;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') p.phase = 2;
      ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
      p.phase = static_cast<std::uint8_t>((p.phase + 1) % 4);
      ++pos;
    }
    for (; pos < text.size(); ++pos) {
      char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
        throw ValidationError("invalid Pauli letter in '" + std::string(text) + "'");
      p.letters += c;
    }
    if (p.letters.empty())
      throw ValidationError("Pauli operator '" + std::string(text) + "' has no letters");
    return p;
  }

  std::string str() const {
    static const char* prefix[] = {"+", "+i", "-", "-i"};
    return prefix[phase] + letters;
  }

  friend bool operator==(const PauliOperator&, const PauliOperator&) = default;
  friend bool operator<(const PauliOperator& a, const PauliOperator& b) {
    if (a.letters != b.letters) return a.letters < b.letters;
    return a.phase < b.phase;
  }
};

namespace detail {

inline int pauli_index(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    default: return 3;
  }
}

/// Single-letter product a*b = i^phase * letter.
inline std::pair<std::uint8_t, char> letter_product(char a, char b) {
  static constexpr char letter[] = {'I', 'X', 'Y', 'Z'};
  const int x = pauli_index(a), y = pauli_index(b);
  if (x == 0) return {0, b};
  if (y == 0) return {0, a};
  if (x == y) return {0, 'I'};
  const int z = 6 - x - y;
  // Cyclic order X -> Y -> Z gives +i.
  const bool cyclic = (y - x + 3) % 3 == 1;
  return {static_cast<std::uint8_t>(cyclic ? 1 : 3), letter[z]};
}

}  // namespace detail

inline PauliOperator pauli_multiply(const PauliOperator& p, const PauliOperator& q) {
  if (p.arity() != q.arity())
    throw PreconditionError("pauli_multiply: arity " + std::to_string(p.arity()) +
                            " vs " + std::to_string(q.arity()));
  PauliOperator r;
  unsigned phase = p.phase + q.phase;
  for (std::size_t i = 0; i < p.arity(); ++i) {
    auto [ph, c] = detail::letter_product(p.letters[i], q.letters[i]);
    phase += ph;
    r.letters += c;
  }
  r.phase = static_cast<std::uint8_t>(phase % 4);
  return r;
}

inline bool pauli_commute(const PauliOperator& p, const PauliOperator& q) {
  if (p.arity() != q.arity()) throw PreconditionError("pauli_commute: arity mismatch");
  std::size_t anti = 0;
  for (std::size_t i = 0; i < p.arity(); ++i)
    if (p.letters[i] != 'I' && q.letters[i] != 'I' && p.letters[i] != q.letters[i]) ++anti;
  return anti % 2 == 0;
}

// ---------------------------------------------------------------------------

struct AvnTripleDiagnostics {
  bool avn = false;
  bool commuting = false;
  bool a1 = false;
  bool a2 = false;
  std::size_t a2_count = 0;
  std::vector<std::string> messages;
};

/// Pairwise commutation; A1 (at each site two of e_i, f_i, g_i agree); A2
/// (an odd number of sites with e_i = g_i != f_i, none of them I).
inline AvnTripleDiagnostics is_avn_triple(const PauliOperator& e, const PauliOperator& f,
                                          const PauliOperator& g) {
  AvnTripleDiagnostics d;
  if (e.arity() != f.arity() || e.arity() != g.arity()) {
    d.messages.push_back("operators have different arities");
    return d;
  }
  if (e.phase || f.phase || g.phase) {
    d.messages.push_back("operators must carry phase +1");
    return d;
  }
  const std::array<const PauliOperator*, 3> ops{&e, &f, &g};
  const char* names = "efg";
  d.commuting = true;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (!pauli_commute(*ops[i], *ops[j])) {
        d.commuting = false;
        d.messages.push_back(std::string("commutation fails: ") + names[i] + " and " +
                             names[j] + " anticommute");
      }
  d.a1 = true;
  for (std::size_t i = 0; i < e.arity(); ++i) {
    const char a = e.letters[i], b = f.letters[i], c = g.letters[i];
    if (a != b && b != c && a != c) {
      d.a1 = false;
      d.messages.push_back("A1 fails at site " + std::to_string(i + 1) +
                           ": letters pairwise distinct");
    }
    if (a == c && a != b && a != 'I' && b != 'I') ++d.a2_count;
  }
  d.a2 = d.a2_count % 2 == 1;
  if (!d.a2)
    d.messages.push_back("A2 fails: " + std::to_string(d.a2_count) +
                         " sites with e_i = g_i != f_i (even)");
  d.avn = d.commuting && d.a1 && d.a2;
  return d;
}

/// Closure of the generators under multiplication, sorted by letters then
/// phase. Generators must pairwise commute.
inline std::vector<PauliOperator> generate_subgroup(const std::vector<PauliOperator>& gens) {
  if (gens.empty()) throw PreconditionError("generate_subgroup: no generators");
  const std::size_t n = gens.front().arity();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].arity() != n) throw PreconditionError("generators have different arities");
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!pauli_commute(gens[i], gens[j]))
        throw PreconditionError("generators " + gens[i].str() + " and " + gens[j].str() +
                                " anticommute");
  }
  PauliOperator id{0, std::string(n, 'I')};
  std::set<PauliOperator> group{id};
  std::deque<PauliOperator> queue{id};
  while (!queue.empty()) {
    PauliOperator x = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      PauliOperator y = pauli_multiply(x, g);
      if (group.insert(y).second) queue.push_back(y);
    }
  }
  return {group.begin(), group.end()};
}

/// Rank over Z2 of the symplectic check vectors (x | z) of the operators.
inline std::size_t check_vector_rank(const std::vector<PauliOperator>& ops) {
  if (ops.empty()) return 0;
  const std::size_t n = ops.front().arity();
  RingMatrix m(RingSpec::modulo(2), ops.size(), 2 * n);
  for (std::size_t r = 0; r < ops.size(); ++r)
    for (std::size_t i = 0; i < n; ++i) {
      const char c = ops[r].letters.at(i);
      if (c == 'X' || c == 'Y') m.set(r, i, 1);
      if (c == 'Z' || c == 'Y') m.set(r, n + i, 1);
    }
  return 2 * n - kernel_generators(m).size();
}

inline std::string measurement_label(char letter, std::size_t site) {
  return std::string(1, letter) + std::to_string(site + 1);
}

/// For each subgroup element h = +-P: sum of the measurements P_i at the non
/// identity sites equals 0 (sign +) or 1 (sign -). The equation is attached
/// to every cover context containing those measurements. Elements using a
/// measurement absent from the scenario, or fitting no context, are skipped.
inline Theory theory_of_subgroup(const std::vector<PauliOperator>& subgroup,
                                 const Scenario& scn) {
  const RingSpec z2 = RingSpec::modulo(2);
  Theory th{z2, {}};
  for (const auto& h : subgroup) {
    if (h.phase % 2 == 1)
      throw PreconditionError("subgroup element " + h.str() +
                              " has an imaginary phase and stabilises no state");
    Domain dom;
    bool known = true;
    for (std::size_t i = 0; i < h.arity() && known; ++i) {
      if (h.letters[i] == 'I') continue;
      auto m = scn.find_measurement(measurement_label(h.letters[i], i));
      if (!m) known = false;
      else dom.push_back(*m);
    }
    if (!known || (dom.empty() && h.phase == 0)) continue;
    std::sort(dom.begin(), dom.end());
    for (std::size_t c = 0; c < scn.context_count(); ++c) {
      const Domain& ctx = scn.context(c);
      if (!is_subset(dom, ctx)) continue;
      LinearEquation eq{c, Vector(ctx.size(), 0), h.phase == 2 ? 1 : 0};
      for (std::size_t k = 0; k < ctx.size(); ++k)
        if (std::binary_search(dom.begin(), dom.end(), ctx[k])) eq.coefficients[k] = 1;
      th.equations.push_back(std::move(eq));
    }
  }
  th.canonicalize();
  return th;
}

/// Scenario whose site-i measurements are the non-identity letters of
/// e_i, f_i, g_i; the cover is every choice of one measurement per site.
inline Scenario triple_scenario(const std::vector<PauliOperator>& ops) {
  if (ops.empty()) throw PreconditionError("triple_scenario: no operators");
  const std::size_t n = ops.front().arity();
  std::vector<std::string> labels;
  std::vector<std::vector<MeasurementId>> per_site;
  for (std::size_t i = 0; i < n; ++i) {
    std::set<char> letters;
    for (const auto& p : ops)
      if (p.letters.at(i) != 'I') letters.insert(p.letters[i]);
    if (letters.empty()) continue;
    per_site.emplace_back();
    for (char c : letters) {
      per_site.back().push_back(labels.size());
      labels.push_back(measurement_label(c, i));
    }
  }
  if (labels.empty()) throw PreconditionError("triple_scenario: operators are all identity");
  std::vector<Domain> cover{{}};
  for (const auto& site : per_site) {
    std::vector<Domain> next;
    for (const auto& partial : cover)
      for (MeasurementId m : site) {
        Domain d = partial;
        d.push_back(m);
        next.push_back(std::move(d));
      }
    cover = std::move(next);
  }
  return Scenario(std::move(labels), std::move(cover), 2);
}

/// The parity model of the subgroup generated by the operators, over
/// triple_scenario(ops).
inline EmpiricalModel stabiliser_model(const std::vector<PauliOperator>& ops) {
  Scenario scn = triple_scenario(ops);
  return model_of_theory(theory_of_subgroup(generate_subgroup(ops), scn), scn);
}

inline std::vector<PauliOperator> ghz_triple() {
  return {PauliOperator::parse("XYY"), PauliOperator::parse("YXY"),
          PauliOperator::parse("YYX")};
}

/// The tripartite GHZ parity model: measurements X_i, Y_i and all eight
/// one-per-party contexts.
inline EmpiricalModel ghz_model(std::size_t parties = 3) {
  if (parties != 3)
    throw PreconditionError("ghz_model: only the tripartite instance is supported; "
                            "use generate_subgroup for other triples");
  return stabiliser_model(ghz_triple());
}

}  // namespace ctxsheaf
