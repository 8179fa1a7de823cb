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

#pragma once

#include <array>
#include <optional>
#include <tuple>
#include <vector>

#include "aldyn/derivation.hpp"
#include "aldyn/poly.hpp"

namespace aldyn {

/// Antisymmetric bivector Lambda^{ab} with polynomial entries.
class PoissonTensor {
 public:
  /// Throws precondition unless the matrix is antisymmetric with zero diagonal.
  PoissonTensor(Generators gens, std::vector<std::vector<Poly>> components);

  static PoissonTensor zero(Generators gens);
  /// {q^a, p^a} = 1 for every position/momentum pair of the generator set.
  static PoissonTensor canonical(Generators gens);
  /// Upper entries (a, b, Lambda^{ab}); the lower half follows by antisymmetry.
  static PoissonTensor from_components(Generators gens,
                                       const std::vector<std::tuple<std::size_t, std::size_t, Poly>>& upper);

  const Generators& gens() const { return gens_; }
  std::size_t dim() const { return gens_->size(); }
  const Poly& operator()(std::size_t a, std::size_t b) const { return lambda_.at(a).at(b); }
  const std::vector<std::vector<Poly>>& components() const { return lambda_; }

 private:
  Generators gens_;
  std::vector<std::vector<Poly>> lambda_;
};

/// {f, g} = Lambda^{ab} df/dx^a dg/dx^b.
Poly bracket(const PoissonTensor& lambda, const Poly& f, const Poly& g);

struct JacobiResult {
  bool passed = true;
  std::array<std::size_t, 3> witness{};
  std::optional<Poly> residual;
};

/// Cyclic sum Lambda^{ck} d_k Lambda^{ab} + cyclic, for every a < b < c.
JacobiResult jacobi_check(const PoissonTensor& lambda);

/// x^a -> {x^a, H}, so that the field applied to f equals {f, H}.
PolyDerivation hamiltonian_field(const PoissonTensor& lambda, const Poly& h);

bool conserved_check(const PoissonTensor& lambda, const Poly& h, const Poly& f);

/// Three dimensional Lie algebra, c[i][j][k] = c^k_{ij}.
struct LieAlgebra3d {
  std::array<std::array<std::array<Rational, 3>, 3>, 3> c{};

  static LieAlgebra3d su2();
  static LieAlgebra3d heisenberg();
  static LieAlgebra3d abelian();

  bool antisymmetric() const;
  bool satisfies_jacobi() const;
};

/// Lambda^{ij} = c^k_{ij} x_k on three generators (x, y, z by default).
/// Throws precondition when the constants are not a Lie algebra.
PoissonTensor lie_poisson(const LieAlgebra3d& g, Generators gens = nullptr);

struct CasimirResult {
  bool passed = true;
  std::optional<std::size_t> witness;
  std::optional<Poly> value;  // {x^witness, C}
};

CasimirResult casimir_check(const PoissonTensor& lambda, const Poly& c);

struct HamiltonianSearch {
  std::optional<Poly> hamiltonian;  // empty when no solution up to the cap
  int degree_cap = 0;
  /// Dimension of the space of solutions modulo constants (0 when unique).
  std::size_t ambiguity = 0;
};

/// Polynomial H of degree <= cap without constant term with
/// hamiltonian_field(lambda, H) = d, by an exact linear solve.
HamiltonianSearch find_hamiltonian(const PoissonTensor& lambda, const PolyDerivation& d, int cap = 6);

}  // namespace aldyn
