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


#include <catch_amalgamated.hpp>

#include <random>

#include "support/oracles.hpp"

using namespace ctxsheaf;

namespace {

PauliOperator random_pauli(std::mt19937_64& rng, std::size_t n) {
  PauliOperator p;
  p.phase = static_cast<std::uint8_t>(rng() % 4);
  for (std::size_t i = 0; i < n; ++i) p.letters += "IXYZ"[rng() % 4];
  return p;
}

}  // namespace

TEST_CASE("Pauli parsing and printing") {
  CHECK(PauliOperator::parse("-XYY").phase == 2);
  CHECK(PauliOperator::parse("+iZI").phase == 1);
  CHECK(PauliOperator::parse("-izz").str() == "-iZZ");
  CHECK(PauliOperator::parse("XX").str() == "+XX");
  CHECK_THROWS_AS(PauliOperator::parse("XQ"), ValidationError);
  CHECK_THROWS_AS(PauliOperator::parse("-"), ValidationError);
}

TEST_CASE("multiplication and commutation agree with 2x2 complex matrices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 3;
    PauliOperator p = random_pauli(rng, n), q = random_pauli(rng, n);
    auto mp = oracle::operator_matrix(p), mq = oracle::operator_matrix(q);
    CHECK(oracle::near(oracle::operator_matrix(pauli_multiply(p, q)), oracle::matmul(mp, mq)));
    CHECK(pauli_commute(p, q) == oracle::near(oracle::matmul(mp, mq), oracle::matmul(mq, mp)));
  }
}

TEST_CASE("GHZ stabiliser group") {
  auto gens = ghz_triple();
  REQUIRE(gens.size() == 3);
  CHECK(gens[0].str() == "+XYY");
  auto group = generate_subgroup(gens);
  CHECK(group.size() == 8);
  CHECK(check_vector_rank(gens) == 3);
  CHECK(std::is_sorted(group.begin(), group.end()));
  // Every element fixes the common eigenvector.
  auto psi = oracle::stabilised_state(gens);
  for (const auto& h : group) {
    auto m = oracle::operator_matrix(h);
    for (std::size_t i = 0; i < psi.size(); ++i) {
      oracle::Complex acc = 0;
      for (std::size_t j = 0; j < psi.size(); ++j) acc += m[i][j] * psi[j];
      CHECK(std::abs(acc - psi[i]) < 1e-9);
    }
  }
  CHECK(std::count(group.begin(), group.end(), PauliOperator::parse("-XXX")) == 1);
}

TEST_CASE("parity equations of the GHZ subgroup") {
  auto gens = ghz_triple();
  Scenario scn = triple_scenario(gens);
  CHECK(scn.measurements() == std::vector<std::string>{"X1", "Y1", "X2", "Y2", "X3", "Y3"});
  CHECK(scn.context_count() == 8);
  Theory th = theory_of_subgroup(generate_subgroup(gens), scn);
  std::set<std::string> eqs;
  for (const auto& eq : th.equations) eqs.insert(format_equation(scn, th.ring, eq));
  CHECK(eqs == std::set<std::string>{"X1 + X2 + X3 = 1 (mod 2)", "X1 + Y2 + Y3 = 0 (mod 2)",
                                     "Y1 + X2 + Y3 = 0 (mod 2)", "Y1 + Y2 + X3 = 0 (mod 2)"});
}

TEST_CASE("parity models match Born-rule supports") {
  std::vector<std::vector<std::string>> triples{
      {"XYY", "YXY", "YYX"}, {"XXX", "ZZI", "IZZ"}, {"XZZ", "ZXZ", "ZZX"}, {"YYX", "XYY", "YXY"}};
  for (const auto& t : triples) {
    std::vector<PauliOperator> ops;
    for (const auto& s : t) ops.push_back(PauliOperator::parse(s));
    EmpiricalModel m = stabiliser_model(ops);
    auto psi = oracle::stabilised_state(ops);
    const Scenario& scn = m.scenario();
    for (std::size_t c = 0; c < scn.context_count(); ++c) {
      // Letters per site, identity on sites not measured.
      std::string letters(ops.front().arity(), 'I');
      for (MeasurementId id : scn.context(c)) {
        const std::string& label = scn.measurements()[id];
        letters[static_cast<std::size_t>(std::stoi(label.substr(1))) - 1] = label[0];
      }
      auto born = oracle::born_support(psi, letters);
      // Project Born outcomes onto measured sites only.
      std::set<Assignment> projected;
      for (const auto& row : born) {
        Assignment a;
        for (std::size_t i = 0; i < letters.size(); ++i)
          if (letters[i] != 'I') a.push_back(row[i]);
        projected.insert(a);
      }
      INFO(t[0] << "," << t[1] << "," << t[2] << " context " << scn.label(scn.context(c)));
      CHECK(std::vector<Assignment>(projected.begin(), projected.end()) == m.support(c));
    }
  }
}

TEST_CASE("AvN triple diagnostics") {
  auto gens = ghz_triple();
  auto d = is_avn_triple(gens[0], gens[1], gens[2]);
  CHECK(d.avn);
  CHECK(d.commuting);
  CHECK(d.a1);
  CHECK(d.a2);
  CHECK(d.a2_count == 1);
  CHECK(is_avn(stabiliser_model(gens), RingSpec::modulo(2)).avn);

  auto x = PauliOperator::parse("XXX"), z = PauliOperator::parse("ZZI"),
       w = PauliOperator::parse("IZZ");
  auto e = is_avn_triple(x, z, w);
  CHECK_FALSE(e.avn);
  CHECK_FALSE(e.messages.empty());
  CHECK_FALSE(is_avn(stabiliser_model({x, z, w}), RingSpec::modulo(2)).avn);

  auto bad = is_avn_triple(PauliOperator::parse("XII"), PauliOperator::parse("ZII"),
                           PauliOperator::parse("III"));
  CHECK_FALSE(bad.commuting);
}

TEST_CASE("stabiliser preconditions") {
  CHECK_THROWS_AS(generate_subgroup({PauliOperator::parse("XI"), PauliOperator::parse("ZI")}),
                  PreconditionError);
  Scenario scn = triple_scenario(ghz_triple());
  CHECK_THROWS_AS(theory_of_subgroup({PauliOperator::parse("iXYY")}, scn), PreconditionError);
  // Elements with letters outside the scenario are skipped.
  Theory th = theory_of_subgroup({PauliOperator::parse("ZZZ")}, scn);
  CHECK(th.equations.empty());
}

TEST_CASE("only the tripartite GHZ model is builtin") {
  CHECK_NOTHROW(ghz_model(3));
  CHECK_THROWS_AS(ghz_model(4), PreconditionError);
}
