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
#include "support.hpp"

using namespace aldyn;
using namespace aldyn::testing;

namespace {
Generators qp() { return GeneratorSet::canonical(1); }
}  // namespace

TEST_CASE("rational normal form") {
  Rational r = parse_rational("-6/4");
  CHECK(to_string(r) == "-3/2");
  CHECK(to_string(parse_rational("0.25")) == "1/4");
  CHECK(to_string(parse_rational("7")) == "7/1");
  CHECK(r.get_den() > 0);
}

TEST_CASE("scalar arithmetic") {
  Scalar a = Scalar(1) + Scalar::theta();
  Scalar b = Scalar(1) - Scalar::theta();
  Scalar prod = a * b;
  CHECK(prod == Scalar(1) - Scalar::theta(2));
  CHECK((a - a).is_zero());
  CHECK(prod.constant_term() == QComplex(1));
  CHECK(to_text(Scalar::i() * Scalar::theta()) == "i*theta");
}

TEST_CASE("poly_add examples") {
  auto g = qp();
  CHECK(P("q + p", g) + P("q - p", g) == P("2*q", g));
  Poly f = P("q^2 + 3*i*p", g);
  CHECK(f + Poly(g) == f);
  CHECK(P("q + theta*p", g) + P("q - theta*p", g) == P("2*q", g));
}

TEST_CASE("poly_mul examples") {
  auto g = qp();
  CHECK(P("q", g) * P("p", g) == P("q*p", g));
  CHECK(pow(P("q + p", g), 2) == P("q^2 + 2*q*p + p^2", g));
  auto ug = GeneratorSet::make({"u", "I"}, {GeneratorKind::angle_phase, GeneratorKind::plain});
  Poly u = Poly::generator(ug, "u");
  Poly uinv = Poly::generator(ug, "u", -1);
  Poly one = u * uinv;
  CHECK(one == Poly::constant(ug, Scalar(1)));
  // exponent vectors add componentwise
  CHECK((pow(u, 3) * pow(uinv, 5)).terms().begin()->first == Exponents{-2, 0});
}

TEST_CASE("mismatched generator sets are rejected") {
  auto a = qp();
  auto b = GeneratorSet::make({"x", "y"});
  CHECK_THROWS_AS(Poly::generator(a, "q") + Poly::generator(b, "x"), Error);
  try {
    (void)(Poly::generator(a, "q") * Poly::generator(b, "x"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::generator_mismatch);
  }
}

TEST_CASE("partial_derivative examples") {
  auto g = qp();
  CHECK(partial_derivative(P("q^2*p", g), "q") == P("2*q*p", g));
  CHECK(partial_derivative(P("q", g), "p").is_zero());
  auto ug = GeneratorSet::make({"u"}, {GeneratorKind::angle_phase});
  Poly u2 = Poly::generator(ug, "u", 2);
  CHECK(partial_derivative(u2, "u") == Scalar(QComplex(0, 2)) * u2);
  // d/dphi e^{-i phi} = -i e^{-i phi}
  Poly um = Poly::generator(ug, "u", -1);
  CHECK(partial_derivative(um, "u") == Scalar(QComplex(0, -1)) * um);
  CHECK_THROWS_AS(partial_derivative(u2, "v"), Error);
}

TEST_CASE("theta_limit examples") {
  auto g = qp();
  CHECK(theta_limit(P("q*p + 2*i*theta*q*p - theta^2/2", g)) == P("q*p", g));
  Poly f = P("q^3 - 2*p + 1/3", g);
  CHECK(theta_limit(f) == f);
  CHECK(theta_limit(P("theta*q", g)).is_zero());
}

TEST_CASE("parse and print round trip") {
  auto g = qp();
  for (const char* text : {"q^2 + 2*q*p + p^2", "1/2*i*theta*q", "-q*p + (1 + 2*i)*p^3", "q*p + 1/2*i*theta"}) {
    Poly f = P(text, g);
    CHECK(P(to_text(f).c_str(), g) == f);
  }
  CHECK(to_text(P("q*p + 1/2*i*theta", g)) == "q*p + 1/2*i*theta");
  CHECK_THROWS_AS(P("q + x", g), Error);
  CHECK_THROWS_AS(P("q +", g), Error);
  CHECK_THROWS_AS(P("q^-1", g), Error);
}

TEST_CASE("ring axioms on random triples") {
  Rng rng(11);
  auto g = GeneratorSet::canonical(2);
  for (int trial = 0; trial < 60; ++trial) {
    Poly a = random_poly(rng, g, 3, 4, true);
    Poly b = random_poly(rng, g, 3, 4, true);
    Poly c = random_poly(rng, g, 3, 4, true);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("Leibniz rule for partial derivatives") {
  Rng rng(12);
  auto g = GeneratorSet::canonical(2);
  for (int trial = 0; trial < 40; ++trial) {
    Poly f = random_poly(rng, g, 3, 4, true);
    Poly h = random_poly(rng, g, 3, 4, true);
    for (std::size_t x = 0; x < g->size(); ++x) {
      CHECK(partial_derivative(f * h, x) == f * partial_derivative(h, x) + partial_derivative(f, x) * h);
    }
  }
  auto ug = GeneratorSet::make({"u", "I"}, {GeneratorKind::angle_phase, GeneratorKind::plain});
  Poly f = P("u^2*I + 3*u^(-1)", ug);
  Poly h = P("u*I^2 - u^(-2)", ug);
  CHECK(partial_derivative(f * h, "u") == f * partial_derivative(h, "u") + partial_derivative(f, "u") * h);
}

TEST_CASE("theta_limit is multiplicative") {
  Rng rng(13);
  auto g = GeneratorSet::canonical(1);
  for (int trial = 0; trial < 50; ++trial) {
    Poly f = random_poly(rng, g, 3, 4, true);
    Poly h = random_poly(rng, g, 3, 4, true);
    CHECK(theta_limit(f * h) == theta_limit(f) * theta_limit(h));
  }
}

TEST_CASE("substitution and numeric evaluation") {
  auto g = qp();
  Poly f = P("q^2*p - 3*p + 1", g);
  std::vector<Poly> images{P("q + p", g), P("2*p", g)};
  CHECK(substitute(f, images, g) == P("2*(q+p)^2*p - 6*p + 1", g));
  std::vector<std::complex<double>> pt{2.0, -1.0};
  CHECK(std::abs(evaluate(f, pt) - std::complex<double>(-4 + 3 + 1, 0)) < 1e-14);
}
