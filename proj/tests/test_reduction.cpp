// Copyright 2026 The aldyn Authors
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

#include "doctest.h"

#include "aldyn/error.hpp"
#include "aldyn/reduction.hpp"
#include "support.hpp"

using namespace aldyn;
using namespace aldyn::testing;

namespace {
Generators qp() { return GeneratorSet::canonical(1); }

PolyDerivation field(const Generators& g, std::map<std::string, const char*> images) {
  std::map<std::string, Poly> m;
  for (auto& [k, v] : images) m.emplace(k, P(v, g));
  return PolyDerivation::from_images(g, m);
}
}  // namespace

TEST_CASE("invariant_subalgebra examples") {
  auto g = qp();
  Distribution dq(g, {PolyDerivation::coordinate(g, "q")});
  auto b = invariant_subalgebra(dq, 2);
  REQUIRE(b.size() == 3);
  CHECK(b[0] == P("1", g));
  CHECK(b[1] == P("p", g));
  CHECK(b[2] == P("p^2", g));

  Distribution rot(g, {field(g, {{"q", "-p"}, {"p", "q"}})});
  auto r = invariant_subalgebra(rot, 2);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == P("1", g));
  CHECK(r[1] == P("q^2 + p^2", g));

  Distribution z(g, {PolyDerivation::zero(g)});
  CHECK(invariant_subalgebra(z, 2).size() == 6);
  CHECK(invariant_subalgebra(Distribution(g, {}), 3).size() == 10);
}

TEST_CASE("invariant subalgebra is product closed up to the cap") {
  auto g = GeneratorSet::canonical(2);
  Distribution d(g, {field(g, {{"q1", "-p1"}, {"p1", "q1"}}), PolyDerivation::coordinate(g, "q2")});
  const int cap = 4;
  auto basis = invariant_subalgebra(d, cap);
  CHECK(basis.size() == 9);  // p2^a r^b with a + 2b <= 4, r = q1^2 + p1^2
  for (const auto& a : basis) {
    for (const auto& b : basis) {
      Poly ab = a * b;
      if (ab.degree() > cap) continue;
      for (const auto& y : d.fields()) CHECK(y(ab).is_zero());
    }
  }
}

TEST_CASE("normalizer_check examples") {
  auto g = qp();
  auto free = field(g, {{"q", "p"}});
  auto dq = Distribution(g, {PolyDerivation::coordinate(g, "q")});
  CHECK(normalizer_check(free, dq).verdict == Verdict::member);
  auto dp = Distribution(g, {PolyDerivation::coordinate(g, "p")});
  auto r = normalizer_check(free, dp, 0);
  CHECK(r.verdict == Verdict::non_member);
  REQUIRE(r.bracket.has_value());
  CHECK(*r.bracket == PolyDerivation::zero(g) - PolyDerivation::coordinate(g, "q"));
  CHECK(r.certificate_point.has_value());
  Rng rng(71);
  for (int trial = 0; trial < 5; ++trial) {
    auto d = random_derivation(rng, g, 2);
    CHECK(normalizer_check(d, Distribution(g, {d})).verdict == Verdict::member);
  }
}

TEST_CASE("normalizer_check is inconclusive without a certificate") {
  // [d_q, q^2 d_p] = (2/q) q^2 d_p: pointwise in the span, coefficient not polynomial
  auto g = qp();
  auto delta = PolyDerivation::coordinate(g, "q");
  auto d = Distribution(g, {field(g, {{"p", "q^2"}})});
  auto r = normalizer_check(delta, d, 3);
  CHECK(r.verdict == Verdict::inconclusive);
}

TEST_CASE("normalizer coefficients reproduce the brackets") {
  auto g = qp();
  auto euler = field(g, {{"q", "q"}, {"p", "p"}});
  auto d = Distribution(g, {field(g, {{"q", "q^2"}})});
  auto r = normalizer_check(euler, d);
  REQUIRE(r.verdict == Verdict::member);
  // [E, q^2 d_q] = q^2 d_q
  CHECK(r.coefficients[0][0] == P("1", g));
}

TEST_CASE("f_related_reduce examples") {
  auto g = qp();
  auto free = field(g, {{"q", "p"}});
  auto r1 = f_related_reduce(free, {P("p", g)});
  REQUIRE(r1.reduced.has_value());
  CHECK(r1.reduced->is_zero());
  CHECK(r1.reduced->gens()->size() == 1);

  auto osc = field(g, {{"q", "p"}, {"p", "-q"}});
  auto r2 = f_related_reduce(osc, {P("q^2 + p^2", g)});
  REQUIRE(r2.reduced.has_value());
  CHECK(r2.reduced->is_zero());

  auto euler = field(g, {{"q", "q"}, {"p", "p"}});
  auto r3 = f_related_reduce(euler, {P("q*p", g)});
  REQUIRE(r3.reduced.has_value());
  auto y = r3.reduced->gens();
  CHECK(r3.reduced->image(0) == P("2*y1", y));

  auto r4 = f_related_reduce(free, {P("q^2 + p^2", g)});
  CHECK_FALSE(r4.reduced.has_value());
  CHECK(r4.failed_component == std::size_t{0});
}

TEST_CASE("f_related_reduce intertwines the fields") {
  auto g = GeneratorSet::canonical(2);
  auto delta = field(g, {{"q1", "p1"}, {"q2", "p2"}});
  std::vector<Poly> f{P("p1", g), P("q1*p2 - q2*p1", g), P("p2", g)};
  auto r = f_related_reduce(delta, f, 3);
  REQUIRE(r.reduced.has_value());
  // delta(F^* h) = F^*(delta_F h) on sample h
  auto y = r.reduced->gens();
  Poly h = P("y1^2*y2 + y3 - y2*y3", y);
  CHECK(delta(substitute(h, f, g)) == substitute((*r.reduced)(h), f, g));
}

TEST_CASE("connection_apply examples") {
  auto g = qp();
  Distribution dq(g, {PolyDerivation::coordinate(g, "q")});
  ConnectionP p(dq, {{P("1", g), P("0", g)}});
  auto x = field(g, {{"q", "p"}, {"p", "q"}});
  CHECK(p(x) == field(g, {{"q", "p"}}));
  CHECK(p(dq.fields()[0]) == dq.fields()[0]);
  CHECK(p(PolyDerivation::coordinate(g, "p")).is_zero());
  CHECK_THROWS_AS(ConnectionP(dq, {{P("2", g), P("0", g)}}), Error);
}

TEST_CASE("connections are idempotent") {
  Rng rng(72);
  auto g = GeneratorSet::canonical(2);
  Distribution d(g, {PolyDerivation::coordinate(g, "q1"), field(g, {{"q2", "1"}, {"p1", "q1"}})});
  auto p = find_connection(d, 2);
  REQUIRE(p.has_value());
  for (int trial = 0; trial < 10; ++trial) {
    auto x = random_derivation(rng, g, 2);
    CHECK(p->apply(p->apply(x)) == p->apply(x));
    Poly h = random_poly(rng, g, 2, 2, false, false);
    CHECK(p->apply(h * x) == h * p->apply(x));
  }
  for (const auto& y : d.fields()) CHECK(p->apply(y) == y);
}

TEST_CASE("find_connection fails for the Euler distribution") {
  auto g = qp();
  Distribution d(g, {field(g, {{"q", "q"}})});
  for (int cap = 0; cap <= 4; ++cap) CHECK_FALSE(find_connection(d, cap).has_value());
}

TEST_CASE("split_dynamics examples") {
  auto g = qp();
  auto free = field(g, {{"q", "p"}});
  Distribution dq(g, {PolyDerivation::coordinate(g, "q")});
  ConnectionP p(dq, {{P("1", g), P("0", g)}});
  auto s = split_dynamics(free, p);
  CHECK(s.along == free);
  CHECK(s.transverse.is_zero());
  CHECK(s.constant_of_motion);
  CHECK(s.commuting);

  auto s2 = split_dynamics(PolyDerivation::coordinate(g, "q"), p);
  CHECK(s2.transverse.is_zero());

  Distribution dp(g, {PolyDerivation::coordinate(g, "p")});
  ConnectionP pp(dp, {{P("0", g), P("1", g)}});
  CHECK_THROWS_AS(split_dynamics(free, pp), Error);
}

TEST_CASE("commuting split on R^4") {
  auto g = GeneratorSet::canonical(2);
  auto delta = field(g, {{"q1", "p1"}, {"q2", "p2"}});
  Distribution d(g, {PolyDerivation::coordinate(g, "q1")});
  auto p = find_connection(d, 1);
  REQUIRE(p.has_value());
  auto s = split_dynamics(delta, *p);
  CHECK(s.along == field(g, {{"q1", "p1"}}));
  CHECK(s.transverse == field(g, {{"q2", "p2"}}));
  CHECK(s.commuting);
  CHECK_FALSE(s.constant_of_motion);
  // the composed flows agree in either order
  for (std::size_t a = 0; a < g->size(); ++a) {
    Poly x = Poly::generator(g, a);
    auto ab = flow_linear(s.along, 0.7, flow_linear(s.transverse, 0.7, x));
    auto ba = flow_linear(s.transverse, 0.7, flow_linear(s.along, 0.7, x));
    CHECK(max_abs_difference(ab, ba) < 1e-10);
    CHECK(max_abs_difference(ab, flow_linear(delta, 0.7, x)) < 1e-10);
  }
  // the transverse part preserves the invariant subalgebra
  auto basis = invariant_subalgebra(d, 3);
  CHECK(invariance_of_subalgebra(s.transverse, basis, d).passed);
  CHECK(invariance_of_subalgebra(delta, basis, d).passed);
}

TEST_CASE("split re-sums exactly") {
  Rng rng(73);
  auto g = GeneratorSet::canonical(2);
  Distribution d(g, {PolyDerivation::coordinate(g, "q1")});
  auto p = *find_connection(d, 1);
  auto delta = field(g, {{"q1", "p1 + q2^2"}, {"q2", "p2"}, {"p1", "p2"}});
  auto s = split_dynamics(delta, p);
  for (int trial = 0; trial < 10; ++trial) {
    Poly f = random_poly(rng, g, 3, 4);
    CHECK(s.along(f) + s.transverse(f) == delta(f));
  }
  for (const auto& f : invariant_subalgebra(d, 3)) {
    Poly img = s.transverse(f);
    CHECK(d.fields()[0](img).is_zero());
  }
}

TEST_CASE("invariance_of_subalgebra examples") {
  auto g = qp();
  Distribution dq(g, {PolyDerivation::coordinate(g, "q")});
  auto free = field(g, {{"q", "p"}});
  CHECK(invariance_of_subalgebra(free, invariant_subalgebra(dq, 2), dq).passed);
  Distribution rot(g, {field(g, {{"q", "-p"}, {"p", "q"}})});
  std::vector<Poly> energy{P("q^2 + p^2", g)};
  CHECK(invariance_of_subalgebra(field(g, {{"q", "p"}, {"p", "-q"}}), energy, rot).passed);
  auto r = invariance_of_subalgebra(free, energy, rot);
  CHECK_FALSE(r.passed);
  CHECK(r.witness == std::size_t{0});
}

TEST_CASE("involutive distributions") {
  auto g = GeneratorSet::canonical(2);
  Distribution a(g, {PolyDerivation::coordinate(g, "q1"), PolyDerivation::coordinate(g, "q2")});
  CHECK(a.involutive());
  Distribution b(g, {PolyDerivation::coordinate(g, "q1"), field(g, {{"q2", "1"}, {"p1", "q1"}})});
  CHECK_FALSE(b.involutive());
}
