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

#include <cstdint>
#include <optional>
#include <vector>

#include "aldyn/poisson.hpp"
#include "aldyn/poly.hpp"

namespace aldyn {

using RationalMatrix = std::vector<std::vector<Rational>>;
using QMatrixData = std::vector<std::vector<QComplex>>;

/// Constant symplectic structure: Lambda^{ab} and its inverse omega_{ab}.
class StarContext {
 public:
  /// Throws precondition unless lambda is antisymmetric and invertible.
  StarContext(Generators gens, RationalMatrix lambda);

  /// Canonical pairs (q, p) or (q1, p1, q2, p2, ...) with {q^a, p^a} = 1.
  static StarContext canonical(int pairs);
  static StarContext canonical(Generators gens);

  const Generators& gens() const { return gens_; }
  std::size_t dim() const { return gens_->size(); }
  const RationalMatrix& lambda() const { return lambda_; }
  /// Inverse of lambda, so omega_{qp} = -1 for a canonical pair.
  const RationalMatrix& omega() const { return omega_; }
  PoissonTensor poisson() const;

 private:
  Generators gens_;
  RationalMatrix lambda_;
  RationalMatrix omega_;
};

/// k-th power of the bidifferential operator Lambda^{ab} d_a (x) d_b.
Poly bidifferential(const StarContext& ctx, const Poly& f, const Poly& g, int k);

/// sum_k (i theta / 2)^k / k! D_k(f, g); finite on polynomials.
Poly star(const StarContext& ctx, const Poly& f, const Poly& g);

/// f * g - g * f.
Poly star_commutator(const StarContext& ctx, const Poly& f, const Poly& g);

/// f -> (i / theta) [X, f], a derivation of the star product.
class StarDerivation {
 public:
  StarDerivation(StarContext ctx, Poly x) : ctx_(std::move(ctx)), x_(std::move(x)) {}
  const Poly& generator() const { return x_; }
  Poly apply(const Poly& f) const;
  Poly operator()(const Poly& f) const { return apply(f); }

 private:
  StarContext ctx_;
  Poly x_;
};

StarDerivation inner_star_derivation(const StarContext& ctx, const Poly& x);

struct SSpaceEntry {
  std::size_t i = 0, j = 0;
  Poly star_bracket;     // [b_i, b_j]_theta
  Poly poisson_bracket;  // {b_i, b_j}
};

struct SSpaceReport {
  std::vector<Poly> basis;           // every monomial of degree <= 2
  std::vector<SSpaceEntry> table;    // all ordered pairs, row major
  bool antisymmetric = true;
  bool closed = true;                // both brackets stay in the span of the basis
  bool brackets_agree = true;        // [f, g]_theta = i theta {f, g}
  bool passed() const { return antisymmetric && closed && brackets_agree; }
};

SSpaceReport s_space_check(const StarContext& ctx);

struct WignerReport {
  bool pointwise_leibniz = false;
  /// omega c + c^T omega = 0.
  bool symplectic = false;
  QMatrixData symplectic_residual;
  bool star_leibniz = false;
  /// Star Leibniz holds exactly when c is symplectic.
  bool consistent() const { return symplectic == star_leibniz; }
};

/// Extends x^a -> c(a, b) x^b by Leibniz and checks it against both the
/// pointwise and the star product on (q, p) style generator pairs and
/// `trials` random pairs of polynomials.
WignerReport wigner_ambiguity_check(const StarContext& ctx, const QMatrixData& c, int trials = 20,
                                    std::uint64_t seed = 1);

/// Derivation x^a -> c(a, b) x^b.
PolyDerivation linear_derivation(const Generators& gens, const QMatrixData& c);

}  // namespace aldyn
