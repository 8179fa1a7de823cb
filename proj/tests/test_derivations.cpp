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

#include <cmath>
#include <numbers>

#include "aldyn/error.hpp"
#include "support.hpp"

using namespace aldyn;
using namespace aldyn::testing;

namespace {
Generators qp() { return GeneratorSet::canonical(1); }

PolyDerivation free_particle() {
  auto g = qp();
  return PolyDerivation::from_images(g, {{"q", P("p", g)}});
}

// Independent oracle: sum_a delta^a * d f / d x^a.
Poly vector_field_oracle(const PolyDerivation& d, const Poly& f) {
  Poly out(f.gens());
  for (std::size_t a = 0; a < f.gens()->size(); ++a) out += d.image(a) * partial_derivative(f, a);
  return out;
}
}  // namespace

TEST_CASE("apply examples") {
  auto g = qp();
  CHECK(free_particle()(P("q^2", g)) == P("2*q*p", g));
  Rng rng(1);
  CHECK(random_derivation(rng, g, 3)(P("1", g)).is_zero());
}

TEST_CASE("oscillator applied to qp") {
  auto g = GeneratorSet::make({"q", "p", "w"});
  auto d = PolyDerivation::from_images(g, {{"q", P("p", g)}, {"p", P("-w^2*q", g)}});
  CHECK(d(P("q*p", g)) == P("p^2 - w^2*q^2", g));
  CHECK(d(P("q*p", g)) == vector_field_oracle(d, P("q*p", g)));
}

TEST_CASE("nilpotency examples") {
  auto g = qp();
  CHECK(nilpotency_order(free_particle()) == 2);
  CHECK(nilpotency_order(PolyDerivation::zero(g)) == 1);
  auto osc = PolyDerivation::from_images(g, {{"q", P("p", g)}, {"p", P("-q", g)}});
  CHECK_FALSE(nilpotency_order(osc, 16).has_value());
  CHECK_FALSE(nilpotency_order(osc, 64).has_value());
}

TEST_CASE("flow_nilpotent examples") {
  auto d = free_particle();
  auto g = d.gens();
  auto gt = with_generator(g, "t");
  CHECK(flow_nilpotent(d, P("q", g)) == P("q + t*p", gt));
  CHECK(flow_nilpotent(d, P("p", g)) == P("p", gt));
  CHECK(flow_nilpotent(d, P("q^2", g)) == P("q^2 + 2*t*q*p + t^2*p^2", gt));
  FlowResult fr = flow_nilpotent(d);
  CHECK(fr.truncation_order == 1);
}

TEST_CASE("flow_nilpotent rejects non-truncating input") {
  auto g = qp();
  auto osc = PolyDerivation::from_images(g, {{"q", P("p", g)}, {"p", P("-q", g)}});
  CHECK_THROWS_AS(flow_nilpotent(osc, P("q", g)), Error);
  auto quad = PolyDerivation::from_images(g, {{"q", P("p^2", g)}});
  CHECK_THROWS_AS(flow_nilpotent(quad, P("q", g)), Error);
}

TEST_CASE("flow_nilpotent properties") {
  Rng rng(21);
  auto g = GeneratorSet::canonical(2);
  auto d = PolyDerivation::from_images(g, {{"q1", P("p1 + 2*q2", g)}, {"q2", P("p2", g)}});
  auto gt = with_generator(g, "t");
  std::vector<Poly> at_zero;
  for (std::size_t a = 0; a < g->size(); ++a) at_zero.push_back(Poly::generator(g, a));
  at_zero.push_back(Poly(g));
  for (int trial = 0; trial < 20; ++trial) {
    Poly f = random_poly(rng, g, 3, 3);
    Poly h = random_poly(rng, g, 3, 3);
    Poly ft = flow_nilpotent(d, f);
    CHECK(flow_nilpotent(d, f * h) == ft * flow_nilpotent(d, h));
    CHECK(substitute(ft, at_zero, g) == f);
    // coefficient of t^1
    Poly dt = partial_derivative(ft, "t");
    CHECK(substitute(dt, at_zero, g) == d(f));
  }
}

TEST_CASE("flow_linear examples") {
  auto g = qp();
  auto osc = PolyDerivation::from_images(g, {{"q", P("p", g)}, {"p", P("-q", g)}});
  double half_pi = std::numbers::pi / 2;
  CHECK(max_abs_difference(flow_linear(osc, half_pi, P("q", g)), NumPoly::from(P("p", g))) < 1e-12);
  CHECK(max_abs_difference(flow_linear(osc, half_pi, P("p", g)), NumPoly::from(P("-q", g))) < 1e-12);
  Poly f = P("q^3 - 2*q*p + 5", g);
  CHECK(max_abs_difference(flow_linear(osc, 0.0, f), NumPoly::from(f)) < 1e-14);
  auto fr = free_particle();
  CHECK(max_abs_difference(flow_linear(fr, 2.0, P("q", g)), NumPoly::from(P("q + 2*p", g))) < 1e-12);
}

TEST_CASE("flow_linear is a one-parameter group") {
  Rng rng(22);
  auto g = GeneratorSet::canonical(2);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::map<std::string, Poly> images;
    for (std::size_t a = 0; a < g->size(); ++a) {
      Poly img(g);
      for (std::size_t b = 0; b < g->size(); ++b) {
        Exponents e(g->size(), 0);
        e[b] = 1;
        img.add_term(e, Scalar(random_qcomplex(rng, false)));
      }
      images.emplace(g->name(a), img);
    }
    auto d = PolyDerivation::from_images(g, images);
    double t1 = uni(rng), t2 = uni(rng);
    Poly f = random_poly(rng, g, 2, 3, false, false);
    NumPoly once = flow_linear(d, t1 + t2, f);
    NumPoly first = flow_linear(d, t1, f);
    NumPoly twice = flow_linear(d, t2, first);
    CHECK(max_abs_difference(once, twice) < 1e-10);
  }
}

TEST_CASE("flow_linear agrees with flow_nilpotent for nilpotent c") {
  auto d = free_particle();
  auto g = d.gens();
  Poly f = P("q^2*p - q + 3", g);
  Poly exact = flow_nilpotent(d, f);
  auto gt = exact.gens();
  std::vector<Poly> at_t;
  for (std::size_t a = 0; a < g->size(); ++a) at_t.push_back(Poly::generator(g, a));
  at_t.push_back(Poly::constant(g, Scalar(QComplex(Rational(3, 2)))));
  NumPoly expected = NumPoly::from(substitute(exact, at_t, g));
  CHECK(max_abs_difference(flow_linear(d, 1.5, f), expected) < 1e-12);
}

TEST_CASE("flow_linear rejects nonlinear images") {
  auto g = qp();
  auto d = PolyDerivation::from_images(g, {{"q", P("p^2", g)}});
  CHECK_THROWS_AS(flow_linear(d, 1.0, P("q", g)), Error);
}

TEST_CASE("action-angle flow") {
  auto u = flow_action_angle({1.0}, {0.0}, std::numbers::pi);
  CHECK(std::abs(u[0] - std::complex<double>(-1, 0)) < 1e-12);
  auto u0 = flow_action_angle({0.7, -2.0}, {0.3, 1.1}, 0.0);
  CHECK(std::abs(u0[0] - std::polar(1.0, 0.3)) < 1e-15);
  CHECK(std::abs(u0[1] - std::polar(1.0, 1.1)) < 1e-15);
  auto s = flow_action_angle_series({1.0}, {0.0}, 1.0, 40);
  CHECK(std::abs(s[0] - std::polar(1.0, 1.0)) < 1e-12);
  auto closed = flow_action_angle({0.5, -1.5}, {0.2, 2.0}, 1.3);
  auto series = flow_action_angle_series({0.5, -1.5}, {0.2, 2.0}, 1.3, 40);
  for (std::size_t a = 0; a < 2; ++a) {
    CHECK(std::abs(std::abs(closed[a]) - 1.0) < 1e-14);
    CHECK(std::abs(closed[a] - series[a]) < 1e-12);
  }
}

TEST_CASE("commutator examples") {
  auto g = qp();
  auto dq = PolyDerivation::coordinate(g, "q");
  auto dp = PolyDerivation::coordinate(g, "p");
  CHECK(commutator(dq, dp).is_zero());
  auto a = PolyDerivation::from_images(g, {{"q", P("p", g)}});
  auto b = PolyDerivation::from_images(g, {{"p", P("q", g)}});
  auto expected = PolyDerivation::from_images(g, {{"q", P("-q", g)}, {"p", P("p", g)}});
  CHECK(commutator(a, b) == expected);
  CHECK(commutator(a, a).is_zero());
}

TEST_CASE("derivation Leibniz and Jacobi on random data") {
  Rng rng(23);
  auto g = GeneratorSet::canonical(2);
  for (int trial = 0; trial < 25; ++trial) {
    auto d1 = random_derivation(rng, g, 2);
    auto d2 = random_derivation(rng, g, 2);
    auto d3 = random_derivation(rng, g, 2);
    Poly f = random_poly(rng, g, 3, 3, true);
    Poly h = random_poly(rng, g, 3, 3, true);
    CHECK(d1(f * h) == f * d1(h) + d1(f) * h);
    CHECK(d1(f) == vector_field_oracle(d1, f));
    auto jac = commutator(d1, commutator(d2, d3)) + commutator(d2, commutator(d3, d1)) +
               commutator(d3, commutator(d1, d2));
    CHECK(jac.is_zero());
    // commutator acts as the operator commutator
    CHECK(commutator(d1, d2)(f) == d1(d2(f)) - d2(d1(f)));
  }
}
