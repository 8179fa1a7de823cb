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
#include "aldyn/moyal.hpp"
#include "support.hpp"

using namespace aldyn;
using namespace aldyn::testing;

namespace {

// Independent oracle for one canonical pair: the Groenewold expansion
// sum_k (i theta/2)^k / k! sum_j (-1)^j C(k,j) d_q^{k-j} d_p^j f  d_q^j d_p^{k-j} g.
Poly groenewold(const Poly& f, const Poly& g) {
  Poly out(f.gens());
  int order = std::min(f.degree(), g.degree());
  QComplex factor(1);
  for (int k = 0; k <= order; ++k) {
    if (k > 0) factor = factor * QComplex(0, Rational(1, 2)) / QComplex(k);
    Rational binom = 1;
    for (int j = 0; j <= k; ++j) {
      if (j > 0) binom = binom * (k - j + 1) / j;
      Poly a = f, b = g;
      for (int s = 0; s < k - j; ++s) a = partial_derivative(a, "q");
      for (int s = 0; s < j; ++s) a = partial_derivative(a, "p");
      for (int s = 0; s < j; ++s) b = partial_derivative(b, "q");
      for (int s = 0; s < k - j; ++s) b = partial_derivative(b, "p");
      Rational sign = (j % 2 == 0) ? 1 : -1;
      out += Scalar::term(k, factor * QComplex(sign * binom)) * (a * b);
    }
  }
  return out;
}

QMatrixData matrix(std::initializer_list<std::initializer_list<int>> rows) {
  QMatrixData m;
  for (auto r : rows) {
    m.emplace_back();
    for (int v : r) m.back().emplace_back(v);
  }
  return m;
}

bool only_theta_parity(const Poly& f, int parity) {
  for (const auto& [e, c] : f.terms())
    for (const auto& [k, v] : c.terms())
      if (k % 2 != parity) return false;
  return true;
}

}  // namespace

TEST_CASE("pairing inverse") {
  auto ctx = StarContext::canonical(1);
  CHECK(ctx.lambda()[0][1] == 1);
  CHECK(ctx.omega()[0][1] == -1);
  auto g = GeneratorSet::make({"x", "y"});
  CHECK_THROWS_AS(StarContext(g, {{0, 0}, {0, 0}}), Error);
  auto ug = GeneratorSet::make({"u", "I"}, {GeneratorKind::angle_phase, GeneratorKind::plain});
  CHECK_THROWS_AS(StarContext(ug, {{0, 1}, {-1, 0}}), Error);
}

TEST_CASE("star examples") {
  auto ctx = StarContext::canonical(1);
  auto g = ctx.gens();
  CHECK(star(ctx, P("q", g), P("p", g)) == P("q*p + i*theta/2", g));
  Poly f = P("q^3 - 2*i*q*p + 5", g);
  CHECK(star(ctx, f, P("1", g)) == f);
  CHECK(star(ctx, P("q^2", g), P("p^2", g)) == P("q^2*p^2 + 2*i*theta*q*p - theta^2/2", g));
  CHECK(bidifferential(ctx, P("q^2", g), P("p^2", g), 1) == P("4*q*p", g));
  CHECK(bidifferential(ctx, P("q^2", g), P("p^2", g), 2) == P("4", g));
}

TEST_CASE("star matches the Groenewold expansion") {
  Rng rng(41);
  auto ctx = StarContext::canonical(1);
  for (int trial = 0; trial < 25; ++trial) {
    Poly f = random_poly(rng, ctx.gens(), 4, 4, true);
    Poly h = random_poly(rng, ctx.gens(), 4, 4, true);
    CHECK(star(ctx, f, h) == groenewold(f, h));
  }
}

TEST_CASE("star_commutator examples") {
  auto ctx = StarContext::canonical(1);
  auto g = ctx.gens();
  CHECK(star_commutator(ctx, P("q", g), P("p", g)) == P("i*theta", g));
  Poly f = P("q^2*p + p^3", g);
  CHECK(star_commutator(ctx, f, f).is_zero());
  CHECK(star_commutator(ctx, P("q^2", g), P("p^2", g)) == P("4*i*theta*q*p", g));
  auto c2 = StarContext::canonical(2);
  auto g2 = c2.gens();
  CHECK(star_commutator(c2, P("q1", g2), P("p1", g2)) == P("i*theta", g2));
  CHECK(star_commutator(c2, P("q1", g2), P("p2", g2)).is_zero());
  CHECK(star_commutator(c2, P("q1", g2), P("q2", g2)).is_zero());
}

TEST_CASE("star associativity, unit and center") {
  Rng rng(42);
  for (int pairs : {1, 2}) {
    auto ctx = StarContext::canonical(pairs);
    auto g = ctx.gens();
    for (int trial = 0; trial < (pairs == 1 ? 15 : 6); ++trial) {
      Poly a = random_poly(rng, g, 4, 3, true);
      Poly b = random_poly(rng, g, 4, 3, true);
      Poly c = random_poly(rng, g, 4, 3, true);
      CHECK(star(ctx, a, star(ctx, b, c)) == star(ctx, star(ctx, a, b), c));
      CHECK(star(ctx, P("1", g), a) == a);
      CHECK(star(ctx, a, P("1", g)) == a);
      CHECK(star_commutator(ctx, P("3/2 - 2*i*theta", g), a).is_zero());
    }
  }
}

TEST_CASE("semiclassical structure") {
  Rng rng(43);
  for (int pairs : {1, 2}) {
    auto ctx = StarContext::canonical(pairs);
    auto tensor = ctx.poisson();
    for (int trial = 0; trial < 15; ++trial) {
      Poly f = random_poly(rng, ctx.gens(), 4, 4);
      Poly h = random_poly(rng, ctx.gens(), 4, 4);
      Poly st = star(ctx, f, h);
      Poly cm = star_commutator(ctx, f, h);
      CHECK(theta_limit(st) == f * h);
      CHECK(theta_coefficient(st, 0) == f * h);
      CHECK(theta_coefficient(cm, 1) == Scalar::i() * bracket(tensor, f, h));
      CHECK(only_theta_parity(st + star(ctx, h, f), 0));
      CHECK(only_theta_parity(cm, 1));
    }
  }
}

TEST_CASE("inner star derivation examples") {
  auto ctx = StarContext::canonical(1);
  auto g = ctx.gens();
  auto dq = inner_star_derivation(ctx, P("p", g));
  CHECK(dq(P("q^2", g)) == P("2*q", g));
  CHECK(inner_star_derivation(ctx, P("5 + i", g))(P("q^3*p", g)).is_zero());
  auto s = inner_star_derivation(ctx, P("q*p", g));
  CHECK(s(P("q", g)) == P("q", g));
  CHECK(s(P("p", g)) == P("-p", g));
}

TEST_CASE("inner star derivations reproduce coordinate fields") {
  Rng rng(44);
  auto ctx = StarContext::canonical(2);
  auto g = ctx.gens();
  for (int trial = 0; trial < 10; ++trial) {
    Poly f = random_poly(rng, g, 4, 4, true);
    CHECK(inner_star_derivation(ctx, P("p2", g))(f) == partial_derivative(f, "q2"));
    CHECK(inner_star_derivation(ctx, P("q1", g))(f) == -partial_derivative(f, "p1"));
  }
}

TEST_CASE("inner star derivations satisfy star Leibniz") {
  Rng rng(45);
  for (int pairs : {1, 2}) {
    auto ctx = StarContext::canonical(pairs);
    for (int trial = 0; trial < 8; ++trial) {
      Poly x = random_poly(rng, ctx.gens(), 4, 3, true);
      Poly f = random_poly(rng, ctx.gens(), 3, 3, true);
      Poly h = random_poly(rng, ctx.gens(), 3, 3, true);
      auto d = inner_star_derivation(ctx, x);
      CHECK(d(star(ctx, f, h)) == star(ctx, d(f), h) + star(ctx, f, d(h)));
    }
  }
}

TEST_CASE("space S on R^4") {
  auto ctx = StarContext::canonical(2);
  auto g = ctx.gens();
  auto r = s_space_check(ctx);
  CHECK(r.basis.size() == 15);
  CHECK(r.table.size() == 225);
  CHECK(r.antisymmetric);
  CHECK(r.closed);
  CHECK(r.brackets_agree);
  CHECK(r.passed());
  std::size_t i = 0, j = 0;
  for (std::size_t k = 0; k < r.basis.size(); ++k) {
    if (r.basis[k] == P("q1^2", g)) i = k;
    if (r.basis[k] == P("p1^2", g)) j = k;
  }
  const auto& e = r.table[i * 15 + j];
  CHECK(e.poisson_bracket == P("4*q1*p1", g));
  CHECK(e.star_bracket == P("4*i*theta*q1*p1", g));
  for (std::size_t k = 0; k < 15; ++k) {
    CHECK(r.table[k].star_bracket.is_zero());
    CHECK(r.table[k].poisson_bracket.is_zero());
  }
  // cubic elements leave S: the two brackets differ
  CHECK_FALSE(star_commutator(ctx, P("q1^3", g), P("p1^3", g)) ==
              Scalar::i() * Scalar::theta() * bracket(ctx.poisson(), P("q1^3", g), P("p1^3", g)));
}

TEST_CASE("Wigner ambiguity") {
  auto ctx = StarContext::canonical(1);
  auto free_r = wigner_ambiguity_check(ctx, matrix({{0, 1}, {0, 0}}));
  CHECK(free_r.pointwise_leibniz);
  CHECK(free_r.symplectic);
  CHECK(free_r.star_leibniz);
  auto osc = wigner_ambiguity_check(ctx, matrix({{0, 1}, {-1, 0}}));
  CHECK(osc.pointwise_leibniz);
  CHECK(osc.star_leibniz);
  auto euler = wigner_ambiguity_check(ctx, matrix({{1, 0}, {0, 1}}));
  CHECK(euler.pointwise_leibniz);
  CHECK_FALSE(euler.symplectic);
  CHECK_FALSE(euler.star_leibniz);
  CHECK(euler.consistent());
  // residual is 2 omega
  CHECK(euler.symplectic_residual[0][1] == QComplex(-2));
  CHECK(euler.symplectic_residual[1][0] == QComplex(2));
}

TEST_CASE("symplectic matrices on R^4 give star derivations") {
  Rng rng(46);
  auto ctx = StarContext::canonical(2);
  // c = A Lambda^{-1}... build c with c Lambda symmetric: c = S omega for symmetric S
  for (int trial = 0; trial < 5; ++trial) {
    QMatrixData s(4, std::vector<QComplex>(4));
    for (int a = 0; a < 4; ++a)
      for (int b = a; b < 4; ++b) s[a][b] = s[b][a] = QComplex(random_rational(rng));
    QMatrixData c(4, std::vector<QComplex>(4));
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int k = 0; k < 4; ++k) c[a][b] += s[a][k] * QComplex(ctx.omega()[k][b]);
    auto r = wigner_ambiguity_check(ctx, c, 6, trial + 1);
    CHECK(r.symplectic);
    CHECK(r.star_leibniz);
    CHECK(r.pointwise_leibniz);
  }
}
