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

#include "support/oracles.hpp"

using namespace ctxsheaf;

namespace {

EmpiricalModel corpus_model(const std::string& name) { return materialise(corpus(name)).model; }

void check_against_brute(const EmpiricalModel& m, const ContextualityReport& rep) {
  auto brute = oracle::brute_contextuality(m);
  REQUIRE(rep.decided());
  CHECK(*rep.logically_contextual == brute.lc);
  CHECK(*rep.strongly_contextual == brute.sc);
  std::size_t k = 0;
  for (std::size_t c = 0; c < m.scenario().context_count(); ++c)
    for (std::size_t r = 0; r < m.support(c).size(); ++r, ++k) {
      const SectionVerdict& sv = rep.sections.at(k);
      CHECK(sv.context == c);
      CHECK(sv.values == m.support(c)[r]);
      CHECK(*sv.extends == brute.extends[c][r]);
      if (sv.witness) {
        CHECK(is_global_section(m, *sv.witness));
        CHECK(restrict_section(*sv.witness, m.scenario().context(c)).values == sv.values);
      }
    }
}

}  // namespace

TEST_CASE("empirical models normalise and validate their supports") {
  Scenario s({"a", "b"}, std::vector<std::vector<std::string>>{{"a", "b"}}, 2);
  EmpiricalModel m(s, {{{1, 1}, {0, 0}, {1, 1}}});
  CHECK(m.support(0) == std::vector<Assignment>{{0, 0}, {1, 1}});
  CHECK(m.section_count() == 2);
  CHECK(m.locate(Section{{0, 1}, {1, 1}}));
  CHECK_FALSE(m.locate(Section{{0, 1}, {0, 1}}));
  CHECK_THROWS_AS(EmpiricalModel(s, {{{0}}}), ValidationError);
  CHECK_THROWS_AS(EmpiricalModel(s, {{{0, 2}}}), ValidationError);
  CHECK_THROWS_AS(EmpiricalModel(s, {{}}), DegenerateModelError);
  CHECK_THROWS_AS(EmpiricalModel(s, {}), ValidationError);
}

TEST_CASE("probability tables: Bell table validates, broken tables do not") {
  Materialised bell = materialise(corpus("bell"));
  REQUIRE(bell.table);
  CHECK_NOTHROW(validate_probability_table(*bell.table));
  EmpiricalModel sup = support_of_probability_table(*bell.table);
  CHECK(sup.support(0) == std::vector<Assignment>{{0, 0}, {1, 1}});
  CHECK(sup.support(1).size() == 4);

  ProbabilityTable over = *bell.table;
  over.rows[0][0] = Rational(5, 8);
  CHECK_THROWS_AS(validate_probability_table(over), NormalisationError);

  ProbabilityTable sig = *bell.table;
  sig.rows[0] = {Rational(1), 0, 0, 0};
  CHECK_THROWS_AS(validate_probability_table(sig), SignallingError);
  CHECK_NOTHROW(support_of_rows(sig));
}

TEST_CASE("event probabilities follow the table") {
  Materialised bell = materialise(corpus("bell"));
  auto equal = [](const Section& s) { return s.values[0] == s.values[1]; };
  CHECK(event_probability(*bell.table, 0, equal) == 1);
  CHECK(event_probability(*bell.table, 1, equal) == Rational(3, 4));
  CHECK(event_probability(*bell.table, 3, equal) == Rational(1, 4));
}

TEST_CASE("uniform table round trip through support_of_rows") {
  for (const auto& name : {"hardy", "pr-box", "specker-triangle"}) {
    EmpiricalModel m = corpus_model(name);
    CHECK(support_of_rows(uniform_table(m)) == m);
  }
}

TEST_CASE("no-signalling check and witness") {
  CHECK(check_no_signalling(corpus_model("pr-box")));
  Scenario s({"a", "b", "c"}, std::vector<std::vector<std::string>>{{"a", "b"}, {"b", "c"}}, 2);
  EmpiricalModel m(s, {{{0, 0}, {1, 0}}, {{0, 0}, {1, 1}}});
  auto v = check_no_signalling(m);
  REQUIRE_FALSE(v);
  REQUIRE(v.witness);
  CHECK(v.witness->first_context == 0);
  CHECK(v.witness->second_context == 1);
  CHECK(v.witness->overlap_section.domain == Domain{1});
  CHECK(v.witness->overlap_section.values == Assignment{1});

  EmpiricalModel core = no_signalling_core(m);
  CHECK(check_no_signalling(core));
  CHECK(core.support(0) == std::vector<Assignment>{{0, 0}, {1, 0}});
  CHECK(core.support(1) == std::vector<Assignment>{{0, 0}});

  EmpiricalModel dead(s, {{{0, 0}}, {{1, 1}}});
  CHECK_THROWS_AS(no_signalling_core(dead), DegenerateModelError);
}

TEST_CASE("compatible families glue to global sections") {
  EmpiricalModel m = corpus_model("hardy");
  Section g{{0, 1, 2, 3}, {1, 1, 1, 0}};
  REQUIRE(is_global_section(m, g));
  CompatibleFamily f = family_of(m, g);
  CHECK(is_compatible(m, f));
  CHECK(glue(m, f) == g);
  f.choice[0] = {0, 0};
  CHECK_FALSE(is_compatible(m, f));
  CHECK_THROWS_AS(glue(m, f), PreconditionError);
}

TEST_CASE("Hardy model: logically but not strongly contextual") {
  EmpiricalModel m = corpus_model("hardy");
  auto rep = classify_contextuality(m);
  CHECK(rep.exhaustive);
  CHECK(rep.logically_contextual == true);
  CHECK(rep.strongly_contextual == false);
  CHECK(rep.logically_contextual_at(0, {0, 0}) == true);
  std::size_t failing = 0;
  for (const auto& sv : rep.sections) failing += !*sv.extends;
  CHECK(failing == 1);
  check_against_brute(m, rep);
}

TEST_CASE("classification matches brute force on the corpus") {
  for (const auto& name : corpus_names()) {
    INFO(name);
    EmpiricalModel m = corpus_model(name);
    check_against_brute(m, classify_contextuality(m));
    SearchOptions bt;
    bt.force_backtracking = true;
    check_against_brute(m, classify_contextuality(m, bt));
  }
}

TEST_CASE("exhaustive and backtracking classification agree with brute force on random models") {
  oracle::RandomModels gen(2024);
  SearchOptions bt;
  bt.force_backtracking = true;
  for (int i = 0; i < 150; ++i) {
    EmpiricalModel m = gen.next();
    check_against_brute(m, classify_contextuality(m));
    check_against_brute(m, classify_contextuality(m, bt));
  }
}

TEST_CASE("an exhausted budget is reported as undecided") {
  EmpiricalModel m = corpus_model("ks-18");
  SearchOptions opts;
  opts.force_backtracking = true;
  opts.node_budget = 5;
  auto rep = classify_contextuality(m, opts);
  CHECK_FALSE(rep.decided());
  CHECK_FALSE(rep.strongly_contextual.has_value());
  for (const auto& sv : rep.sections) CHECK_FALSE(sv.extends.has_value());
  CHECK(find_global_section(m, {}, opts).status == SearchStatus::undecided);
}

TEST_CASE("model restriction to X enumerates the global sections") {
  oracle::RandomModels gen(77);
  for (int i = 0; i < 60; ++i) {
    EmpiricalModel m = gen.next();
    auto brute = oracle::brute_contextuality(m);
    auto got = model_restriction(m, m.scenario().all_measurements());
    std::vector<Assignment> values;
    for (const auto& g : got) values.push_back(g.values);
    std::sort(values.begin(), values.end());
    std::sort(brute.globals.begin(), brute.globals.end());
    CHECK(values == brute.globals);
  }
  EmpiricalModel hardy = corpus_model("hardy");
  auto over_a = model_restriction(hardy, {0, 1});
  CHECK(over_a.size() == 4);
  CHECK_THROWS_AS(model_restriction(hardy, {7}), DomainError);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/8") == Rational(3, 8));
  CHECK(parse_rational("1") == 1);
  CHECK(format_rational(Rational(6, 8)) == "3/4");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
}
