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

#include <cmath>

#include "support/oracles.hpp"

using namespace ctxsheaf;

namespace {

EmpiricalModel corpus_model(const std::string& name) { return materialise(corpus(name)).model; }

/// Every equation over one context that holds on all supported sections,
/// by enumeration of (a, b).
std::vector<LinearEquation> brute_valid_equations(const EmpiricalModel& m, std::size_t c,
                                                  const RingSpec& ring) {
  const std::size_t w = m.scenario().context(c).size();
  std::vector<LinearEquation> out;
  std::vector<std::uint64_t> coeff(w + 1, 0);
  do {
    LinearEquation eq{c, Vector(coeff.begin(), coeff.begin() + static_cast<long>(w)), coeff[w]};
    bool ok = true;
    for (const auto& row : m.support(c)) {
      Integer acc = 0;
      for (std::size_t i = 0; i < w; ++i) acc += eq.coefficients[i] * row[i];
      if (ring.reduce(acc - eq.constant) != 0) ok = false;
    }
    if (ok) out.push_back(eq);
  } while (oracle::next_vector(coeff, ring.modulus()));
  return out;
}

std::vector<Assignment> solutions_of(const std::vector<LinearEquation>& eqs, std::size_t width,
                                     const RingSpec& ring) {
  std::vector<Assignment> out;
  for_each_assignment(width, ring.modulus(), [&](const Assignment& a) {
    for (const auto& eq : eqs) {
      Integer acc = 0;
      for (std::size_t i = 0; i < width; ++i) acc += eq.coefficients[i] * a[i];
      if (ring.reduce(acc - eq.constant) != 0) return;
    }
    out.push_back(a);
  });
  return out;
}

}  // namespace

TEST_CASE("equation rendering") {
  EmpiricalModel ghz = ghz_model(3);
  Theory th = theory_of_model(ghz, RingSpec::modulo(2));
  std::vector<std::string> rendered;
  for (const auto& eq : th.equations)
    rendered.push_back(format_equation(ghz.scenario(), th.ring, eq));
  CHECK(std::count(rendered.begin(), rendered.end(), "X1 + X2 + X3 = 1 (mod 2)") == 1);
  CHECK(std::count(rendered.begin(), rendered.end(), "X1 + Y2 + Y3 = 0 (mod 2)") == 1);
  CHECK(std::count(rendered.begin(), rendered.end(), "Y1 + X2 + Y3 = 0 (mod 2)") == 1);
  CHECK(std::count(rendered.begin(), rendered.end(), "Y1 + Y2 + X3 = 0 (mod 2)") == 1);
}

TEST_CASE("theory of a model cuts out exactly the affine closure") {
  oracle::RandomModels gen(404);
  for (int i = 0; i < 80; ++i) {
    EmpiricalModel m = gen.next();
    const std::size_t k = m.scenario().outcome_count();
    for (std::uint64_t n : {std::uint64_t(k), std::uint64_t(4), std::uint64_t(6)}) {
      if (n < k) continue;
      RingSpec ring = RingSpec::modulo(n);
      Theory th = theory_of_model(m, ring);
      EmpiricalModel aff = affine_closure_model(m, ring);
      for (std::size_t c = 0; c < m.scenario().context_count(); ++c) {
        const std::size_t w = m.scenario().context(c).size();
        std::vector<LinearEquation> mine;
        for (const auto& eq : th.equations)
          if (eq.context == c) mine.push_back(eq);
        // Every computed equation holds on the support.
        for (const auto& row : m.support(c))
          for (const auto& eq : mine)
            CHECK(satisfies(m.scenario(), ring, Section{m.scenario().context(c), row}, eq));
        if (std::pow(double(n), double(w + 1)) > 5000) continue;
        auto expected = solutions_of(brute_valid_equations(m, c, ring), w, ring);
        CHECK(solutions_of(mine, w, ring) == expected);
        CHECK(aff.support(c) == expected);
        CHECK(oracle::triple_closure(m.support(c), n) == expected);
      }
    }
  }
}

TEST_CASE("affine closure agrees with the x - y + z fixpoint") {
  std::mt19937_64 rng(31);
  for (std::uint64_t n : {2u, 3u, 4u, 6u}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<Assignment> pts;
      const std::size_t count = 1 + rng() % 4;
      for (std::size_t i = 0; i < count; ++i)
        pts.push_back({static_cast<Outcome>(rng() % n), static_cast<Outcome>(rng() % n),
                       static_cast<Outcome>(rng() % n)});
      CHECK(affine_closure(pts, RingSpec::modulo(n)) == oracle::triple_closure(pts, n));
    }
  }
  CHECK(affine_closure({}, RingSpec::modulo(3)).empty());
  CHECK_THROWS_AS(affine_closure({{0}}, RingSpec::integers()), UnsupportedRingError);
}

TEST_CASE("AvN verdicts on the corpus") {
  RingSpec z2 = RingSpec::modulo(2), z3 = RingSpec::modulo(3);
  CHECK(is_avn(corpus_model("pr-box"), z2).avn);
  CHECK(is_avn(corpus_model("ghz-mermin"), z2).avn);
  CHECK_FALSE(is_avn(corpus_model("hardy"), z2).avn);
  CHECK_FALSE(is_avn(corpus_model("bell"), z2).avn);
  CHECK(is_avn(corpus_model("box-25"), z3).avn);
  CHECK_FALSE(is_avn(corpus_model("box-25"), z2).avn);
}

TEST_CASE("AvN certificates check out") {
  for (const auto& name : corpus_names()) {
    EmpiricalModel m = corpus_model(name);
    for (std::uint64_t n : {2u, 3u, 4u}) {
      if (m.scenario().outcome_count() > n) continue;
      RingSpec ring = RingSpec::modulo(n);
      AvnResult r = is_avn(m, ring);
      INFO(name << " " << ring.name());
      if (r.avn) {
        REQUIRE(r.witness);
        const auto& y = *r.witness;
        Integer yb = 0;
        for (std::size_t i = 0; i < y.size(); ++i) yb += y[i] * r.system.rhs[i];
        CHECK(ring.reduce(yb) != 0);
        for (std::size_t j = 0; j < r.system.matrix.cols(); ++j) {
          Integer acc = 0;
          for (std::size_t i = 0; i < y.size(); ++i) acc += y[i] * r.system.matrix.at(i, j);
          CHECK(ring.reduce(acc) == 0);
        }
      } else {
        REQUIRE(r.solution);
        CHECK(oracle::check_solution(r.system, *r.solution));
      }
    }
  }
}

TEST_CASE("AvN at a section: brute force over global assignments") {
  oracle::RandomModels gen(55);
  for (int i = 0; i < 60; ++i) {
    EmpiricalModel m = gen.next();
    const Scenario& scn = m.scenario();
    RingSpec ring = RingSpec::modulo(scn.outcome_count());
    Theory th = theory_of_model(m, ring);
    // All global assignments over the ring satisfying the theory.
    std::vector<Assignment> sols;
    for_each_assignment(scn.measurement_count(), ring.modulus(), [&](const Assignment& g) {
      Section s{scn.all_measurements(), g};
      for (const auto& eq : th.equations)
        if (!satisfies(scn, ring, s, eq)) return;
      sols.push_back(g);
    });
    CHECK(is_avn(m, ring).avn == sols.empty());
    for (std::size_t c = 0; c < scn.context_count(); ++c)
      for (std::size_t r = 0; r < m.support(c).size(); ++r) {
        Section s0 = m.section(c, r);
        bool extends = std::any_of(sols.begin(), sols.end(), [&](const Assignment& g) {
          return project(g, scn.context(c)) == s0.values;
        });
        CHECK(is_avn_at(m, s0, ring).avn == !extends);
      }
  }
}

TEST_CASE("theory preconditions") {
  EmpiricalModel pr = corpus_model("pr-box");
  CHECK_THROWS_AS(theory_of_model(pr, RingSpec::integers()), UnsupportedRingError);
  CHECK_THROWS_AS(is_avn_at(pr, Section{{0, 2}, {0, 1}}, RingSpec::modulo(2)),
                  PreconditionError);
  Scenario s3({"a", "b"}, std::vector<std::vector<std::string>>{{"a", "b"}}, 3);
  EmpiricalModel tern(s3, {{{0, 2}}});
  CHECK_THROWS_AS(theory_of_model(tern, RingSpec::modulo(2)), ValidationError);
  CHECK_THROWS_AS(affine_closure_model(tern, RingSpec::integers()), UnsupportedRingError);
}

TEST_CASE("box-25 equations hold on the corpus model") {
  EmpiricalModel m = corpus_model("box-25");
  const Scenario& scn = m.scenario();
  RingSpec z3 = RingSpec::modulo(3);
  struct E {
    std::vector<std::string> vars;
    std::vector<int> a;
    int b;
  };
  const std::vector<E> eqs{{{"a0", "b0"}, {1, 2}, 0},        {{"a1", "c0"}, {1, 2}, 0},
                           {{"a0", "b1", "c0"}, {1, 1, 1}, 2}, {{"a0", "b1", "c1"}, {1, 1, 1}, 2},
                           {{"a1", "b0", "c1"}, {1, 1, 1}, 2}, {{"a1", "b1", "c1"}, {1, 1, 1}, 2}};
  for (const auto& e : eqs) {
    Domain d = scn.domain_of(e.vars);
    for (std::size_t c = 0; c < scn.context_count(); ++c) {
      if (!is_subset(d, scn.context(c))) continue;
      for (const auto& row : m.support(c)) {
        Section s = restrict_section(Section{scn.context(c), row}, d);
        int acc = 0;
        for (std::size_t i = 0; i < d.size(); ++i) acc += e.a[i] * static_cast<int>(s.values[i]);
        CHECK((acc - e.b) % 3 == 0);
      }
    }
  }
  // Over Z3 the six equations alone are already inconsistent.
  LinearSystem sys{RingMatrix(z3, eqs.size(), scn.measurement_count()), {}};
  for (std::size_t r = 0; r < eqs.size(); ++r) {
    for (std::size_t i = 0; i < eqs[r].vars.size(); ++i)
      sys.matrix.set(r, scn.measurement(eqs[r].vars[i]), eqs[r].a[i]);
    sys.rhs.push_back(eqs[r].b);
  }
  CHECK_FALSE(oracle::brute_solve(sys));
}
