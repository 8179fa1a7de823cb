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
#include "aldyn/poisson.hpp"
#include "support.hpp"

using namespace aldyn;
using namespace aldyn::testing;

namespace {
Generators xyz() { return GeneratorSet::make({"x", "y", "z"}); }

PoissonTensor bad_tensor() {
  auto g = xyz();
  return PoissonTensor::from_components(g, {{0, 1, P("z", g)}, {1, 2, P("y", g)}});
}

// Independent oracle for the canonical bracket: sum_a dq_a f dp_a g - dp_a f dq_a g.
Poly canonical_oracle(const Poly& f, const Poly& g, int pairs) {
  Poly out(f.gens());
  for (int a = 1; a <= pairs; ++a) {
    std::string q = pairs == 1 ? "q" : "q" + std::to_string(a);
    std::string p = pairs == 1 ? "p" : "p" + std::to_string(a);
    out += partial_derivative(f, q) * partial_derivative(g, p) - partial_derivative(f, p) * partial_derivative(g, q);
  }
  return out;
}
}  // namespace

TEST_CASE("canonical bracket examples") {
  auto g = GeneratorSet::canonical(1);
  auto L = PoissonTensor::canonical(g);
  CHECK(bracket(L, P("q", g), P("p", g)) == P("1", g));
  Poly f = P("q^3*p - 2*p^2 + q", g);
  CHECK(bracket(L, f, f).is_zero());
  CHECK(bracket(L, P("q^2", g), P("p^2", g)) == P("4*q*p", g));
}

TEST_CASE("canonical bracket matches the explicit formula") {
  Rng rng(31);
  auto g = GeneratorSet::canonical(2);
  auto L = PoissonTensor::canonical(g);
  CHECK(bracket(L, P("q2", g), P("p2", g)) == P("1", g));
  CHECK(bracket(L, P("q1", g), P("p2", g)).is_zero());
  for (int trial = 0; trial < 20; ++trial) {
    Poly f = random_poly(rng, g, 3, 4, true);
    Poly h = random_poly(rng, g, 3, 4, true);
    CHECK(bracket(L, f, h) == canonical_oracle(f, h, 2));
  }
}

TEST_CASE("jacobi_check examples") {
  CHECK(jacobi_check(PoissonTensor::canonical(GeneratorSet::canonical(2))).passed);
  CHECK(jacobi_check(lie_poisson(LieAlgebra3d::su2())).passed);
  auto r = jacobi_check(bad_tensor());
  CHECK_FALSE(r.passed);
  REQUIRE(r.residual.has_value());
  CHECK_FALSE(r.residual->is_zero());
  CHECK(r.witness == std::array<std::size_t, 3>{0, 1, 2});
  // the residual equals the bracket cyclic sum on generators
  auto g = xyz();
  auto L = bad_tensor();
  Poly x = P("x", g), y = P("y", g), z = P("z", g);
  Poly cyc = bracket(L, x, bracket(L, y, z)) + bracket(L, y, bracket(L, z, x)) + bracket(L, z, bracket(L, x, y));
  CHECK((cyc == *r.residual || cyc == -*r.residual));
}

TEST_CASE("bracket axioms on random triples") {
  Rng rng(32);
  std::vector<PoissonTensor> tensors{PoissonTensor::canonical(GeneratorSet::canonical(2)),
                                     lie_poisson(LieAlgebra3d::su2()), lie_poisson(LieAlgebra3d::heisenberg())};
  for (const auto& L : tensors) {
    REQUIRE(jacobi_check(L).passed);
    for (int trial = 0; trial < 10; ++trial) {
      Poly f = random_poly(rng, L.gens(), 3, 3);
      Poly h = random_poly(rng, L.gens(), 3, 3);
      Poly k = random_poly(rng, L.gens(), 2, 3);
      CHECK(bracket(L, f, h) == -bracket(L, h, f));
      CHECK(bracket(L, f + k, h) == bracket(L, f, h) + bracket(L, k, h));
      CHECK(bracket(L, f * k, h) == f * bracket(L, k, h) + bracket(L, f, h) * k);
      Poly jac = bracket(L, f, bracket(L, h, k)) + bracket(L, h, bracket(L, k, f)) + bracket(L, k, bracket(L, f, h));
      CHECK(jac.is_zero());
    }
  }
}

TEST_CASE("hamiltonian_field examples") {
  auto g = GeneratorSet::make({"q", "p", "w"});
  auto L = PoissonTensor::from_components(g, {{0, 1, P("1", g)}});
  CHECK(hamiltonian_field(L, P("p^2/2", g)) == PolyDerivation::from_images(g, {{"q", P("p", g)}}));
  CHECK(hamiltonian_field(L, P("7/3 + i", g)).is_zero());
  auto osc = hamiltonian_field(L, P("(p^2 + w^2*q^2)/2", g));
  CHECK(osc == PolyDerivation::from_images(g, {{"q", P("p", g)}, {"p", P("-w^2*q", g)}}));
}

TEST_CASE("hamiltonian field applies as the bracket") {
  Rng rng(33);
  auto g = GeneratorSet::canonical(2);
  auto L = PoissonTensor::canonical(g);
  for (int trial = 0; trial < 15; ++trial) {
    Poly h = random_poly(rng, g, 3, 3);
    Poly f = random_poly(rng, g, 3, 3);
    CHECK(hamiltonian_field(L, h)(f) == bracket(L, f, h));
  }
}

TEST_CASE("hamiltonian fields form an antihomomorphism") {
  Rng rng(34);
  auto g = GeneratorSet::canonical(1);
  auto L = PoissonTensor::canonical(g);
  for (int trial = 0; trial < 15; ++trial) {
    Poly F = random_poly(rng, g, 3, 3);
    Poly G = random_poly(rng, g, 3, 3);
    auto lhs = commutator(hamiltonian_field(L, F), hamiltonian_field(L, G));
    CHECK(lhs == PolyDerivation::zero(g) - hamiltonian_field(L, bracket(L, F, G)));
  }
  auto su2 = lie_poisson(LieAlgebra3d::su2());
  for (int trial = 0; trial < 10; ++trial) {
    Poly F = random_poly(rng, su2.gens(), 3, 3);
    Poly G = random_poly(rng, su2.gens(), 3, 3);
    auto lhs = commutator(hamiltonian_field(su2, F), hamiltonian_field(su2, G));
    CHECK(lhs == PolyDerivation::zero(su2.gens()) - hamiltonian_field(su2, bracket(su2, F, G)));
  }
}

TEST_CASE("conserved_check examples") {
  auto g = GeneratorSet::canonical(1);
  auto L = PoissonTensor::canonical(g);
  Poly H = P("p^2/2", g);
  CHECK(conserved_check(L, H, H));
  CHECK(conserved_check(L, P("q^2 + p^2", g), P("q^2 + p^2", g)));
  CHECK(conserved_check(L, H, P("p", g)));
  CHECK_FALSE(conserved_check(L, H, P("q", g)));
}

TEST_CASE("lie_poisson examples") {
  auto g = xyz();
  auto su2 = lie_poisson(LieAlgebra3d::su2());
  CHECK(su2(0, 1) == P("z", g));
  CHECK(su2(1, 2) == P("x", g));
  CHECK(su2(2, 0) == P("y", g));
  auto ab = lie_poisson(LieAlgebra3d::abelian());
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) CHECK(ab(a, b).is_zero());
  auto h = lie_poisson(LieAlgebra3d::heisenberg());
  CHECK(h(0, 1) == P("z", g));
  CHECK(h(1, 2).is_zero());
  CHECK(h(2, 0).is_zero());
  LieAlgebra3d bad;
  bad.c[0][1][2] = 1;
  bad.c[1][0][2] = -1;
  bad.c[1][2][1] = 1;
  bad.c[2][1][1] = -1;
  CHECK_FALSE(bad.satisfies_jacobi());
  CHECK_THROWS_AS(lie_poisson(bad), Error);
}

TEST_CASE("casimir_check examples") {
  auto g = xyz();
  auto su2 = lie_poisson(LieAlgebra3d::su2());
  CHECK(casimir_check(su2, P("x^2 + y^2 + z^2", g)).passed);
  CHECK(casimir_check(lie_poisson(LieAlgebra3d::heisenberg()), P("z", g)).passed);
  auto r = casimir_check(su2, P("x", g));
  CHECK_FALSE(r.passed);
  CHECK(r.witness == std::size_t{1});
  CHECK(*r.value == P("-z", g));
}

TEST_CASE("Hamiltonian inverse search") {
  auto g = GeneratorSet::canonical(1);
  auto L = PoissonTensor::canonical(g);
  auto osc = PolyDerivation::from_images(g, {{"q", P("p", g)}, {"p", P("-q", g)}});
  auto found = find_hamiltonian(L, osc, 4);
  REQUIRE(found.hamiltonian.has_value());
  CHECK(*found.hamiltonian == P("(p^2 + q^2)/2", g));
  CHECK(found.ambiguity == 0);
  auto euler = PolyDerivation::from_images(g, {{"q", P("q", g)}, {"p", P("p", g)}});
  for (int d = 1; d <= 6; ++d) CHECK_FALSE(find_hamiltonian(L, euler, d).hamiltonian.has_value());
}
