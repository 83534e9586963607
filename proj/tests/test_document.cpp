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

const char* kPrBox = R"({
  "format": "ctxsheaf-model",
  "version": 1,
  "name": "pr",
  "scenario": {
    "measurements": ["a1", "a2", "b1", "b2"],
    "contexts": [["a1", "b1"], ["a1", "b2"], ["a2", "b1"], ["a2", "b2"]],
    "outcomes": 2
  },
  "supports": [[[0, 0], [1, 1]], [[0, 0], [1, 1]], [[0, 0], [1, 1]], [[0, 1], [1, 0]]]
})";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

std::string error_of(const std::string& text) {
  try {
    parse_model(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("corpus documents round trip byte for byte") {
  for (const auto& name : corpus_names()) {
    INFO(name);
    ModelDocument d = corpus(name);
    CHECK(d.name == name);
    const std::string text = print_document(d);
    ModelDocument back = parse_model(text);
    CHECK(print_document(back) == text);
    CHECK(materialise(back).model == materialise(d).model);
  }
}

TEST_CASE("a hand-written PR box document parses") {
  ModelDocument doc = parse_model(kPrBox);
  EmpiricalModel m = materialise(doc).model;
  CHECK(m == materialise(corpus("pr-box")).model);
  ModelDocument via_ring = parse_model(replace(kPrBox, "\"outcomes\": 2", "\"ring\": \"z2\""));
  CHECK(materialise(via_ring).model == m);
}

TEST_CASE("document errors carry a location") {
  CHECK(error_of(replace(kPrBox, "\"name\": \"pr\",", "\"name\": \"pr\", \"colour\": 1,")) ==
        "$: unknown field 'colour'");
  CHECK(error_of(replace(kPrBox, "[\"a1\", \"b1\"], [\"a1\", \"b2\"]",
                         "[\"a1\"], [\"a1\", \"b2\"]"))
            .find("antichain") != std::string::npos);
  CHECK(error_of(replace(kPrBox, "\"outcomes\": 2", "\"outcomes\": 2, \"ring\": \"z2\"")) ==
        "$.scenario: exactly one of 'outcomes' or 'ring' is required");
  CHECK(error_of(replace(kPrBox, "\"version\": 1", "\"version\": 2")) ==
        "$.version: unsupported version");
  CHECK(error_of(replace(kPrBox, "[[0, 1], [1, 0]]]", "[[0, 1], [1, 7]]]"))
            .find("$.supports") == 0);
  CHECK(error_of(replace(kPrBox, "[[0, 1], [1, 0]]]", "[[0, 0], [1, 1]]], \"theory\": {}")) ==
        "$: more than one payload: 'supports' and 'theory'");
  CHECK(error_of(replace(kPrBox, "[\"a2\", \"b2\"]]", "[\"b2\", \"a2\"]]")) ==
        "$.scenario.contexts[3]: measurements must be listed in declaration order");
  const std::string broken = replace(kPrBox, "\"version\": 1,", "\"version\": 1");
  CHECK(error_of(broken) == "line 4: malformed JSON");
  CHECK(error_of("") == "line 1: malformed JSON");
  CHECK(error_of("[]") == "$: expected an object");
}

TEST_CASE("signalling supports are rejected") {
  std::string sig = replace(kPrBox, "[[0, 1], [1, 0]]]", "[[0, 1]]]");
  CHECK_THROWS_AS(parse_model(sig), SignallingError);
}

TEST_CASE("probability documents") {
  ModelDocument bell = corpus("bell");
  auto* p = std::get_if<ProbabilitiesPayload>(&bell.payload);
  REQUIRE(p);
  CHECK(p->rows == std::vector<std::vector<std::string>>{{"1/2", "0", "0", "1/2"},
                                                         {"3/8", "1/8", "1/8", "3/8"},
                                                         {"3/8", "1/8", "1/8", "3/8"},
                                                         {"1/8", "3/8", "3/8", "1/8"}});
  std::string text = print_document(bell);
  CHECK_THROWS_AS(parse_model(replace(text, "\"1/2\",\n      \"0\"", "\"5/8\",\n      \"0\"")),
                  NormalisationError);
  CHECK_THROWS_AS(parse_model(replace(text, "\"1/2\",\n      \"0\"", "\"abc\",\n      \"0\"")),
                  ValidationError);
}

TEST_CASE("Hardy corpus entry pins exactly four entries") {
  EmpiricalModel m = materialise(corpus("hardy")).model;
  std::size_t missing = 0;
  for (std::size_t c = 0; c < 4; ++c) missing += 4 - m.support(c).size();
  CHECK(missing == 3);
  CHECK(m.contains(0, {0, 0}));
  CHECK_FALSE(m.contains(1, {0, 0}));
  CHECK_FALSE(m.contains(2, {0, 0}));
  CHECK_FALSE(m.contains(3, {1, 1}));
}

TEST_CASE("box-25 corpus entry carries the six mod-3 equations") {
  ModelDocument d = corpus("box-25");
  auto* t = std::get_if<TheoryPayload>(&d.payload);
  REQUIRE(t);
  CHECK(t->ring == "z3");
  REQUIRE(t->equations.size() == 6);
  CHECK(t->equations[0].measurements == std::vector<std::string>{"a0", "b0"});
  CHECK(t->equations[0].coefficients == std::vector<std::int64_t>{1, 2});
  CHECK(t->equations[5].constant == 2);
  CHECK(t->prune_signalling);
  Materialised m = materialise(d);
  REQUIRE(m.theory);
  CHECK(check_no_signalling(m.model));
  // Without pruning the raw solution sets signal.
  t->prune_signalling = false;
  CHECK_THROWS_AS(materialise(d), SignallingError);
}

TEST_CASE("generated payloads") {
  CHECK(materialise(corpus("liar-4")).model == liar_cycle_model(4));
  CHECK(materialise(corpus("ghz-mermin")).model == ghz_model(3));
  ModelDocument bad = corpus("liar-4");
  bad.scenario = ScenarioBlock{{"x"}, {{"x"}}, 2};
  CHECK_THROWS_AS(materialise(bad), DocumentError);
  ModelDocument liar2 = corpus("liar-4");
  liar2.payload = LiarCyclePayload{2};
  CHECK_THROWS_AS(materialise(liar2), DegenerateModelError);
}

TEST_CASE("external provenance is recorded") {
  CHECK(corpus("peres-mermin-square").provenance->rfind("external", 0) == 0);
  CHECK(corpus("ks-18").provenance->rfind("external", 0) == 0);
  CHECK_FALSE(corpus("pr-box").provenance);
  CHECK_THROWS_AS(corpus("nope"), PreconditionError);
}

TEST_CASE("KS-18 transcription: rays form orthogonal bases, each ray in two") {
  const auto& bases = detail::ks18_bases();
  REQUIRE(bases.size() == 9);
  for (const auto& b : bases)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        int dot = 0;
        for (std::size_t k = 0; k < 4; ++k) dot += b[i][k] * b[j][k];
        CHECK(dot == 0);
      }
  auto rays = detail::ks18_rays();
  CHECK(rays.size() == 18);
  for (const auto& r : rays) {
    int count = 0;
    for (const auto& b : bases) count += static_cast<int>(std::count(b.begin(), b.end(), r));
    CHECK(count == 2);
  }
}

TEST_CASE("Peres-Mermin transcription: rows and columns of commuting observables") {
  ModelDocument d = corpus("peres-mermin-square");
  for (const auto& ctx : d.scenario->contexts) {
    std::vector<PauliOperator> ops;
    for (const auto& label : ctx) ops.push_back(PauliOperator::parse(label));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) CHECK(pauli_commute(ops[i], ops[j]));
    PauliOperator prod = pauli_multiply(pauli_multiply(ops[0], ops[1]), ops[2]);
    CHECK(prod.letters == "II");
    // The supports encode the sign of the product: parity 1 for -I.
    const auto& rows = std::get<SupportsPayload>(d.payload)
                           .rows[static_cast<std::size_t>(&ctx - d.scenario->contexts.data())];
    for (const auto& r : rows) CHECK((r[0] + r[1] + r[2]) % 2 == (prod.phase == 2 ? 1u : 0u));
  }
}

TEST_CASE("document_of_model round trips arbitrary models") {
  oracle::RandomModels gen(3);
  for (int i = 0; i < 30; ++i) {
    EmpiricalModel m = gen.next();
    ModelDocument d = document_of_model(m, "random");
    CHECK(materialise(parse_model(print_document(d))).model == m);
  }
}

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
}
