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

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "aldyn/linsolve.hpp"
#include "aldyn/rational.hpp"

namespace aldyn {

/// Square matrix with exact Gaussian-rational entries.
class QMatrix {
 public:
  QMatrix() = default;
  explicit QMatrix(std::size_t n) : n_(n), data_(n * n) {}

  static QMatrix zero(std::size_t n) { return QMatrix(n); }
  static QMatrix identity(std::size_t n);
  /// Matrix unit E_{rc}.
  static QMatrix unit(std::size_t n, std::size_t r, std::size_t c);
  static QMatrix diagonal(const std::vector<QComplex>& d);
  /// Row-major entries; throws size_mismatch unless the rows form a square.
  static QMatrix from_rows(const std::vector<std::vector<QComplex>>& rows);
  static QMatrix from_vec(std::size_t n, const Vec& v);

  std::size_t size() const { return n_; }
  QComplex& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const QComplex& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  /// Entries in row-major order.
  const Vec& vec() const { return data_; }

  bool is_zero() const;
  bool is_hermitian() const;
  QComplex trace() const;
  QMatrix adjoint() const;
  Eigen::MatrixXcd to_eigen() const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(const QComplex& c);
  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator-(QMatrix a) { return a *= QComplex(-1); }
  friend QMatrix operator*(QMatrix a, const QComplex& c) { return a *= c; }
  friend QMatrix operator*(const QComplex& c, QMatrix a) { return a *= c; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

 private:
  std::size_t n_ = 0;
  Vec data_;
};

/// Exact binary value of every entry as a Gaussian rational.
QMatrix rationalize(const Eigen::MatrixXcd& m);

/// Pauli matrices sigma_x, sigma_y, sigma_z.
QMatrix pauli(int which);

/// [a, b] = ab - ba.
QMatrix commutator(const QMatrix& a, const QMatrix& b);

/// Linear span of independent matrices of one size.
class MatrixSubspace {
 public:
  /// Throws precondition when the matrices are dependent or of mixed size.
  MatrixSubspace(std::size_t n, std::vector<QMatrix> basis);

  /// Independent spanning set drawn from arbitrary matrices.
  static MatrixSubspace span(std::size_t n, const std::vector<QMatrix>& generators);
  static MatrixSubspace full(std::size_t n);
  static MatrixSubspace diagonal(std::size_t n);
  /// Matrices (gamma 0; 0 0) with gamma in Mat_k.
  static MatrixSubspace top_block(std::size_t n, std::size_t k);

  std::size_t n() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<QMatrix>& basis() const { return basis_; }

  bool contains(const QMatrix& m) const;
  bool contains(const MatrixSubspace& other) const;
  bool closed_under_product() const;
  bool closed_under_commutator() const;

 private:
  std::size_t n_;
  std::vector<QMatrix> basis_;
};

/// a -> [a, X], stored through the traceless part of X.
class InnerDerivation {
 public:
  explicit InnerDerivation(const QMatrix& x);

  const QMatrix& generator() const { return x_; }
  QMatrix apply(const QMatrix& a) const { return commutator(a, x_); }
  QMatrix operator()(const QMatrix& a) const { return apply(a); }

  friend bool operator==(const InnerDerivation& a, const InnerDerivation& b) { return a.x_ == b.x_; }
  friend InnerDerivation operator+(const InnerDerivation& a, const InnerDerivation& b) {
    return InnerDerivation(a.x_ + b.x_);
  }

 private:
  QMatrix x_;
};

/// [d_X, d_Y] = d_X o d_Y - d_Y o d_X, which is d_{[Y, X]}.
InnerDerivation commutator(const InnerDerivation& dx, const InnerDerivation& dy);

/// -i [a, H]. Throws not_hermitian.
QMatrix heisenberg_derivative(const QMatrix& a, const QMatrix& h);

/// Entrywise conjugate symmetry to `tol`.
bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-12);

/// e^{itH} a e^{-itH}. Throws not_hermitian.
Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& h, double t);

/// Every f with [f, b] = 0 for all b in the subspace, in reduced echelon form.
MatrixSubspace commutant(const MatrixSubspace& s);

struct InvarianceResult {
  bool passed = true;
  std::optional<std::size_t> witness;  // basis index b with [b, H] outside the span
  std::optional<QMatrix> image;
};

/// Whether a -> [a, H] maps the subspace into itself. The subspace must
/// be closed under product.
InvarianceResult invariance_check(const QMatrix& h, const MatrixSubspace& s);

struct BlockSplit {
  InnerDerivation top;     // by H_U (+) 0
  InnerDerivation bottom;  // by 0 (+) H_F
};

/// Throws precondition unless H is block diagonal with a k x k top block.
BlockSplit block_split(const QMatrix& h, std::size_t k);

struct BiderivationResult {
  std::size_t n = 0;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  /// Basis of the solution space; entry (p, q, r) at index (p n^2 + q) n^2 + r
  /// is the E_r coefficient of {E_p, E_q}, with E_{ij} numbered i n + j.
  std::vector<Vec> solutions;
  bool contains_commutator = false;
  std::size_t dimension() const { return solutions.size(); }
};

/// Bilinear brackets on Mat_n obeying Leibniz in both slots.
BiderivationResult biderivation_solver(std::size_t n);

/// Distance from m to the span of the basis (least squares, Frobenius norm).
double span_residual(const Eigen::MatrixXcd& m, const std::vector<Eigen::MatrixXcd>& basis);

}  // namespace aldyn
