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

EmpiricalModel corpus_model(const std::string& name) { return materialise(corpus(name)).model; }

struct Verdicts {
  bool lc, sc, csc_z;
  std::optional<bool> avn;
  friend bool operator==(const Verdicts&, const Verdicts&) = default;
};

Verdicts verdicts(const EmpiricalModel& m) {
  auto brute = oracle::brute_contextuality(m);
  Verdicts v{brute.lc, brute.sc, classify_cohomological(m, RingSpec::integers()).csc,
             std::nullopt};
  RingSpec r = RingSpec::modulo(std::max<std::size_t>(2, m.scenario().outcome_count()));
  v.avn = is_avn(m, r).avn;
  return v;
}

}  // namespace

TEST_CASE("formula parsing, precedence and evaluation") {
  Scenario scn({"a", "b", "c"}, std::vector<std::vector<std::string>>{{"a", "b", "c"}}, 2);
  Formula f = parse_formula(scn, "a & !b | c");
  CHECK(f.str(scn) == "((a & !b) | c)");
  Formula g = parse_formula(scn, "a <-> b & c");
  CHECK(g.str(scn) == "(a <-> (b & c))");
  CHECK(parse_formula(scn, "¬a ∧ (b ∨ c) ↔ a").str(scn) == "((!a & (b | c)) <-> a)");
  CHECK(parse_formula(scn, "~~a").str(scn) == "!!a");
  CHECK(f.variables() == Domain{0, 1, 2});
  // 0 reads as true.
  CHECK(f.eval(Section{{0, 1, 2}, {0, 1, 1}}));
  CHECK_FALSE(f.eval(Section{{0, 1, 2}, {0, 0, 1}}));
  CHECK(f.eval(Section{{0, 1, 2}, {1, 1, 0}}));
  CHECK_THROWS_AS(parse_formula(scn, "a &"), ValidationError);
  CHECK_THROWS_AS(parse_formula(scn, "(a"), ValidationError);
  CHECK_THROWS_AS(parse_formula(scn, "d"), ValidationError);
  CHECK_THROWS_AS(parse_formula(scn, "a b"), ValidationError);
}

TEST_CASE("propositions must live in their context") {
  Materialised bell = materialise(corpus("bell"));
  const Scenario& scn = bell.model.scenario();
  CHECK_THROWS_AS(make_proposition(scn, 0, "a1 <-> b2"), ValidationError);
  Proposition p = make_proposition(scn, 3, "a2 <-> !b2");
  CHECK(proposition_probability(*bell.table, p) == Rational(3, 4));
}

TEST_CASE("logical Bell inequality on the Bell table") {
  Materialised bell = materialise(corpus("bell"));
  const Scenario& scn = bell.model.scenario();
  const std::vector<std::pair<std::size_t, std::string>> phis{
      {0, "a1 <-> b1"}, {1, "a1 <-> b2"}, {2, "a2 <-> b1"}, {3, "a2 <-> !b2"}};
  std::vector<Proposition> props;
  for (const auto& [ctx, text] : phis) {
    Proposition p = make_proposition(scn, ctx, text);
    p.probability = proposition_probability(*bell.table, p);
    props.push_back(std::move(p));
  }
  CHECK(*props[0].probability == 1);
  CHECK(*props[1].probability == Rational(3, 4));
  LogicalBellReport rep = logical_bell_bound(scn, props);
  CHECK_FALSE(rep.jointly_satisfiable);
  CHECK(rep.sum == Rational(13, 4));
  CHECK(rep.bound == 3);
  REQUIRE(rep.violation);
  CHECK(*rep.violation == Rational(1, 4));
}

TEST_CASE("satisfiable propositions carry a model and no violation") {
  Materialised bell = materialise(corpus("bell"));
  const Scenario& scn = bell.model.scenario();
  std::vector<Proposition> props{make_proposition(scn, 0, "a1 <-> b1", Rational(1)),
                                 make_proposition(scn, 1, "a1 <-> b2", Rational(1))};
  auto rep = logical_bell_bound(scn, props);
  CHECK(rep.jointly_satisfiable);
  REQUIRE(rep.model);
  for (const auto& p : props) CHECK(p.formula.eval(*rep.model));
  CHECK_FALSE(rep.violation);
}

TEST_CASE("Hardy formulas are jointly unsatisfiable") {
  EmpiricalModel hardy = corpus_model("hardy");
  const Scenario& scn = hardy.scenario();
  std::vector<Proposition> props{make_proposition(scn, 0, "a1 & b1"),
                                 make_proposition(scn, 1, "!(a1 & b2)"),
                                 make_proposition(scn, 2, "!(a2 & b1)"),
                                 make_proposition(scn, 3, "a2 | b2")};
  CHECK_FALSE(logical_bell_bound(scn, props).jointly_satisfiable);
  // Each formula describes the support of its context.
  for (const auto& p : props)
    for (const auto& row : hardy.support(p.context))
      if (p.context != 0) CHECK(p.formula.eval(Section{scn.context(p.context), row}));
}

TEST_CASE("liar cycles") {
  CHECK_THROWS_AS(liar_cycle_model(1), DegenerateModelError);
  CHECK_THROWS_AS(liar_cycle_model(2), DegenerateModelError);
  CHECK_THROWS_AS(liar_cycle_model(0), PreconditionError);
  for (std::size_t n = 3; n <= 7; ++n) {
    EmpiricalModel m = liar_cycle_model(n);
    CHECK(check_no_signalling(m));
    CHECK(oracle::brute_contextuality(m).sc);
    CHECK(is_avn(m, RingSpec::modulo(2)).avn);
    // Dropping any one equation leaves a consistent system.
    for (std::size_t drop = 0; drop < n; ++drop) {
      std::vector<std::vector<Assignment>> sup = m.supports();
      std::vector<Domain> cover = m.scenario().cover();
      sup.erase(sup.begin() + static_cast<long>(drop));
      cover.erase(cover.begin() + static_cast<long>(drop));
      EmpiricalModel sub(Scenario(m.scenario().measurements(), cover, 2), sup);
      CHECK_FALSE(oracle::brute_contextuality(sub).globals.empty());
    }
  }
}

TEST_CASE("Specker triangle: strongly contextual, any two contexts consistent") {
  EmpiricalModel m = specker_triangle();
  CHECK(m == corpus_model("specker-triangle"));
  CHECK(oracle::brute_contextuality(m).sc);
  for (std::size_t drop = 0; drop < 3; ++drop) {
    std::vector<std::vector<Assignment>> sup = m.supports();
    std::vector<Domain> cover = m.scenario().cover();
    sup.erase(sup.begin() + static_cast<long>(drop));
    cover.erase(cover.begin() + static_cast<long>(drop));
    EmpiricalModel sub(Scenario(m.scenario().measurements(), cover, 2), sup);
    CHECK(find_global_section(sub).status == SearchStatus::found);
  }
}

TEST_CASE("the liar cycle of length four is the PR box") {
  EmpiricalModel liar = liar_cycle_model(4), pr = corpus_model("pr-box");
  IsomorphismResult r = model_isomorphic(liar, pr, 1000);
  REQUIRE(r.isomorphic);
  // x1 ~ a2, x2 ~ b1, x3 ~ a1, x4 ~ b2 with outcomes unchanged.
  const std::vector<MeasurementId> expected_map{1, 2, 0, 3};
  const std::vector<std::vector<Outcome>> identity(4, {0, 1});
  bool found = false;
  for (const auto& w : r.witnesses) {
    found = found || (w.measurement_map == expected_map && w.outcome_map == identity);
    CHECK(transport(liar, w, pr.scenario()) == pr);
  }
  CHECK(found);
  CHECK_FALSE(model_isomorphic(liar, corpus_model("hardy")).isomorphic);
  CHECK_FALSE(model_isomorphic(liar, corpus_model("specker-triangle")).isomorphic);
}

TEST_CASE("isomorphism is an equivalence on the corpus") {
  std::vector<EmpiricalModel> models;
  for (const auto& name : corpus_names()) models.push_back(corpus_model(name));
  models.push_back(liar_cycle_model(4));
  const std::size_t n = models.size();
  std::vector<std::vector<bool>> iso(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) iso[i][j] = model_isomorphic(models[i], models[j]).isomorphic;
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(iso[i][i]);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(iso[i][j] == iso[j][i]);
      for (std::size_t k = 0; k < n; ++k)
        if (iso[i][j] && iso[j][k]) CHECK(iso[i][k]);
    }
  }
  CHECK(iso[2][n - 1]);  // pr-box and liar-4
}

TEST_CASE("isomorphisms transport verdicts") {
  std::mt19937_64 rng(12);
  oracle::RandomModels gen(8);
  for (int t = 0; t < 40; ++t) {
    EmpiricalModel m = gen.next();
    const Scenario& scn = m.scenario();
    const std::size_t n = scn.measurement_count(), k = scn.outcome_count();
    IsomorphismWitness w;
    w.measurement_map.resize(n);
    std::iota(w.measurement_map.begin(), w.measurement_map.end(), MeasurementId{0});
    std::shuffle(w.measurement_map.begin(), w.measurement_map.end(), rng);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Outcome> p(k);
      std::iota(p.begin(), p.end(), Outcome{0});
      std::shuffle(p.begin(), p.end(), rng);
      w.outcome_map.push_back(p);
    }
    std::vector<Domain> cover;
    for (const Domain& c : scn.cover()) {
      Domain d;
      for (MeasurementId x : c) d.push_back(w.measurement_map[x]);
      std::sort(d.begin(), d.end());
      cover.push_back(d);
    }
    Scenario target(scn.measurements(), cover, k);
    EmpiricalModel image = transport(m, w, target);
    CHECK(model_isomorphic(m, image).isomorphic);
    CHECK(verdicts(m) == verdicts(image));
  }
}
