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

#include <map>
#include <memory>
#include <vector>

#include "aldyn/matrix.hpp"

namespace aldyn {

/// Basis X_1..X_m of inner derivations a -> [a, X_j] by traceless matrices.
class DerivationBasis {
 public:
  /// Throws precondition unless the matrices are traceless and independent.
  explicit DerivationBasis(std::vector<QMatrix> generators);

  /// Generalized Gell-Mann matrices: symmetric and antisymmetric pairs, then
  /// diag(1, ..., 1, -l, 0, ...). For n = 2 these are the Pauli matrices.
  static std::shared_ptr<const DerivationBasis> gell_mann(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t size() const { return x_.size(); }
  const QMatrix& generator(std::size_t j) const { return x_.at(j); }
  const std::vector<QMatrix>& generators() const { return x_; }

  /// Coordinates of a matrix in the span of the generators. Throws precondition outside it.
  Vec coordinates(const QMatrix& m) const;
  /// c^j_{kl}: coordinates of the derivation bracket [X_k, X_l], which is
  /// the inner derivation by the matrix [X_l, X_k].
  const QComplex& structure(std::size_t j, std::size_t k, std::size_t l) const;

  /// Action of the field with basis coordinates x: a -> [a, x^j X_j].
  QMatrix act(const Vec& x, const QMatrix& a) const;
  QMatrix act(std::size_t j, const QMatrix& a) const { return commutator(a, x_.at(j)); }

 private:
  std::size_t n_ = 0;
  std::vector<QMatrix> x_;
  std::vector<QComplex> c_;  // index (j m + k) m + l
};

using BasisRef = std::shared_ptr<const DerivationBasis>;

/// Algebra-valued alternating form on the derivation basis. Only strictly
/// increasing index tuples are stored.
class KForm {
 public:
  using Index = std::vector<std::size_t>;

  KForm(BasisRef basis, std::size_t degree);

  static KForm zero(BasisRef basis, std::size_t degree) { return KForm(std::move(basis), degree); }
  /// Degree-0 form with value a.
  static KForm function(BasisRef basis, const QMatrix& a);
  /// Dual 1-form alpha^j with alpha^j(X_k) = delta^j_k 1.
  static KForm dual(BasisRef basis, std::size_t j);

  const BasisRef& basis() const { return basis_; }
  std::size_t degree() const { return degree_; }
  const std::map<Index, QMatrix>& coeffs() const { return coeffs_; }

  /// Sets the value on a tuple; any order, the sign is applied.
  void set(const Index& idx, const QMatrix& value);
  /// Value on basis fields in any order (zero on repeats).
  QMatrix at(const Index& idx) const;
  /// Multilinear evaluation on fields given by basis coordinates.
  QMatrix evaluate(const std::vector<Vec>& fields) const;

  bool is_zero() const { return coeffs_.empty(); }

  KForm& operator+=(const KForm& o);
  KForm& operator-=(const KForm& o);
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator*(const QComplex& c, const KForm& f);
  /// Left and right module actions of the algebra.
  friend KForm operator*(const QMatrix& a, const KForm& f);
  friend KForm operator*(const KForm& f, const QMatrix& a);
  friend bool operator==(const KForm& a, const KForm& b);

 private:
  BasisRef basis_;
  std::size_t degree_;
  std::map<Index, QMatrix> coeffs_;
};

KForm wedge(const KForm& a, const KForm& b);
KForm exterior_d(const KForm& f);
/// (i_X f)(X_1, ...) = f(X, X_1, ...). Throws precondition on degree 0.
KForm contract(const Vec& x, const KForm& f);
/// i_X d + d i_X, with i_X of a 0-form taken as zero.
KForm lie_derivative(const Vec& x, const KForm& f);

struct ExactnessObstruction {
  QComplex trace;            // tr alpha^j(X_j) = n
  bool differentials_traceless = true;
  bool solution_space_empty = true;  // dA = alpha^j has no solution
};

ExactnessObstruction exactness_obstruction(const BasisRef& basis, std::size_t j);

}  // namespace aldyn
