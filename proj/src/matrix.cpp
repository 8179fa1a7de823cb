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

#include "aldyn/matrix.hpp"

#include <cmath>

#include "aldyn/error.hpp"

namespace aldyn {

namespace {

void require_size(const QMatrix& a, const QMatrix& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::size_mismatch, "matrices have different sizes");
}

std::vector<Vec> vecs(const std::vector<QMatrix>& ms) {
  std::vector<Vec> out;
  for (const auto& m : ms) out.push_back(m.vec());
  return out;
}

}  // namespace

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = QComplex(1);
  return m;
}

QMatrix QMatrix::unit(std::size_t n, std::size_t r, std::size_t c) {
  QMatrix m(n);
  m(r, c) = QComplex(1);
  return m;
}

QMatrix QMatrix::diagonal(const std::vector<QComplex>& d) {
  QMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<QComplex>>& rows) {
  QMatrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw Error(ErrorKind::size_mismatch, "matrix is not square");
    for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QMatrix QMatrix::from_vec(std::size_t n, const Vec& v) {
  if (v.size() != n * n) throw Error(ErrorKind::size_mismatch, "vector length is not n^2");
  QMatrix m(n);
  m.data_ = v;
  return m;
}

bool QMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool QMatrix::is_hermitian() const { return *this == adjoint(); }

QComplex QMatrix::trace() const {
  QComplex t;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

QMatrix QMatrix::adjoint() const {
  QMatrix m(n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) m(c, r) = (*this)(r, c).conj();
  return m;
}

Eigen::MatrixXcd QMatrix::to_eigen() const {
  Eigen::MatrixXcd m(n_, n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t c = 0; c < n_; ++c) m(r, c) = (*this)(r, c).to_double();
  return m;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  require_size(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  require_size(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator*=(const QComplex& c) {
  for (auto& x : data_) x *= c;
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  require_size(a, b);
  const std::size_t n = a.size();
  QMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const QComplex& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (!b(k, c).is_zero()) m(r, c) += x * b(k, c);
      }
    }
  }
  return m;
}

QMatrix rationalize(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::size_mismatch, "matrix is not square");
  QMatrix out(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(r, c) = QComplex(rational_from_double(m(r, c).real()), rational_from_double(m(r, c).imag()));
  return out;
}

QMatrix pauli(int which) {
  QMatrix m(2);
  switch (which) {
    case 1: m(0, 1) = m(1, 0) = QComplex(1); break;
    case 2: m(0, 1) = QComplex(0, -1); m(1, 0) = QComplex(0, 1); break;
    case 3: m(0, 0) = QComplex(1); m(1, 1) = QComplex(-1); break;
    default: throw Error(ErrorKind::precondition, "Pauli index must be 1, 2 or 3");
  }
  return m;
}

QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

MatrixSubspace::MatrixSubspace(std::size_t n, std::vector<QMatrix> basis) : n_(n), basis_(std::move(basis)) {
  for (const auto& m : basis_) {
    if (m.size() != n_) throw Error(ErrorKind::size_mismatch, "subspace matrices have mixed sizes");
  }
  if (rank_of(vecs(basis_)) != basis_.size()) {
    throw Error(ErrorKind::precondition, "subspace basis is linearly dependent");
  }
}

MatrixSubspace MatrixSubspace::span(std::size_t n, const std::vector<QMatrix>& generators) {
  for (const auto& m : generators) {
    if (m.size() != n) throw Error(ErrorKind::size_mismatch, "subspace matrices have mixed sizes");
  }
  std::vector<QMatrix> basis;
  for (const auto& v : canonical_basis(vecs(generators))) basis.push_back(QMatrix::from_vec(n, v));
  return MatrixSubspace(n, std::move(basis));
}

MatrixSubspace MatrixSubspace::full(std::size_t n) { return top_block(n, n); }

MatrixSubspace MatrixSubspace::diagonal(std::size_t n) {
  std::vector<QMatrix> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back(QMatrix::unit(n, i, i));
  return MatrixSubspace(n, std::move(basis));
}

MatrixSubspace MatrixSubspace::top_block(std::size_t n, std::size_t k) {
  if (k > n) throw Error(ErrorKind::precondition, "block size exceeds the matrix size");
  std::vector<QMatrix> basis;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) basis.push_back(QMatrix::unit(n, i, j));
  return MatrixSubspace(n, std::move(basis));
}

bool MatrixSubspace::contains(const QMatrix& m) const {
  if (m.size() != n_) throw Error(ErrorKind::size_mismatch, "matrix size differs from the subspace");
  return in_span(vecs(basis_), m.vec());
}

bool MatrixSubspace::contains(const MatrixSubspace& other) const {
  for (const auto& m : other.basis())
    if (!contains(m)) return false;
  return true;
}

bool MatrixSubspace::closed_under_product() const {
  for (const auto& a : basis_)
    for (const auto& b : basis_)
      if (!contains(a * b)) return false;
  return true;
}

bool MatrixSubspace::closed_under_commutator() const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_.size(); ++j)
      if (!contains(commutator(basis_[i], basis_[j]))) return false;
  return true;
}

InnerDerivation::InnerDerivation(const QMatrix& x) : x_(x) {
  const std::size_t n = x.size();
  if (n == 0) return;
  QComplex shift = x.trace() / QComplex(Rational(static_cast<long>(n)));
  for (std::size_t i = 0; i < n; ++i) x_(i, i) -= shift;
}

InnerDerivation commutator(const InnerDerivation& dx, const InnerDerivation& dy) {
  return InnerDerivation(commutator(dy.generator(), dx.generator()));
}

QMatrix heisenberg_derivative(const QMatrix& a, const QMatrix& h) {
  require_size(a, h);
  if (!h.is_hermitian()) throw Error(ErrorKind::not_hermitian, "Hamiltonian is not Hermitian");
  return QComplex(0, -1) * commutator(a, h);
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
  return true;
}

Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& h, double t) {
  if (a.rows() != h.rows() || a.cols() != h.cols() || a.rows() != a.cols()) {
    throw Error(ErrorKind::size_mismatch, "observable and Hamiltonian sizes differ");
  }
  if (!is_hermitian(h)) throw Error(ErrorKind::not_hermitian, "Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::internal, "eigendecomposition failed");
  const Eigen::MatrixXcd& v = es.eigenvectors();
  Eigen::VectorXcd phase(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) phase(k) = std::polar(1.0, t * es.eigenvalues()(k));
  Eigen::MatrixXcd u_dag = v * phase.asDiagonal() * v.adjoint();  // e^{itH}
  return u_dag * a * u_dag.adjoint();
}

MatrixSubspace commutant(const MatrixSubspace& s) {
  const std::size_t n = s.n();
  LinearSystem sys(n * n);
  // entry (x, y) of f b - b f, with f_{rc} the unknown r n + c
  for (const auto& b : s.basis()) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        SparseRow row;
        for (std::size_t k = 0; k < n; ++k) {
          if (!b(k, y).is_zero()) row[x * n + k] += b(k, y);
          if (!b(x, k).is_zero()) row[k * n + y] -= b(x, k);
        }
        sys.add_equation(std::move(row));
      }
    }
  }
  auto sol = sys.solve();
  std::vector<QMatrix> basis;
  for (const auto& v : canonical_basis(sol.nullspace)) basis.push_back(QMatrix::from_vec(n, v));
  return MatrixSubspace(n, std::move(basis));
}

InvarianceResult invariance_check(const QMatrix& h, const MatrixSubspace& s) {
  if (h.size() != s.n()) throw Error(ErrorKind::size_mismatch, "Hamiltonian size differs from the subspace");
  if (!s.closed_under_product()) throw Error(ErrorKind::precondition, "subspace is not closed under product");
  for (std::size_t i = 0; i < s.dim(); ++i) {
    QMatrix img = commutator(s.basis()[i], h);
    if (!s.contains(img)) return {false, i, img};
  }
  return {};
}

BlockSplit block_split(const QMatrix& h, std::size_t k) {
  const std::size_t n = h.size();
  if (k > n) throw Error(ErrorKind::precondition, "block size exceeds the matrix size");
  QMatrix top(n), bottom(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      bool rt = r < k, ct = c < k;
      if (rt != ct) {
        if (!h(r, c).is_zero()) throw Error(ErrorKind::precondition, "Hamiltonian is not block diagonal");
        continue;
      }
      (rt ? top : bottom)(r, c) = h(r, c);
    }
  }
  return {InnerDerivation(top), InnerDerivation(bottom)};
}

BiderivationResult biderivation_solver(std::size_t n) {
  if (n == 0 || n > 4) throw Error(ErrorKind::precondition, "biderivation solver supports 1 <= n <= 4");
  const std::size_t m = n * n;
  BiderivationResult out;
  out.n = n;
  out.unknowns = m * m * m;
  auto var = [m](std::size_t p, std::size_t q, std::size_t r) { return (p * m + q) * m + r; };
  auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };
  LinearSystem sys(out.unknowns);
  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t ai = a / n, aj = a % n;
    for (std::size_t b = 0; b < m; ++b) {
      const std::size_t bi = b / n, bj = b % n;
      for (std::size_t c = 0; c < m; ++c) {
        const std::size_t ci = c / n, cj = c % n;
        for (std::size_t x = 0; x < n; ++x) {
          for (std::size_t y = 0; y < n; ++y) {
            const std::size_t r = idx(x, y);
            // {E_a E_b, E_c} - E_a {E_b, E_c} - {E_a, E_c} E_b
            SparseRow left;
            if (aj == bi) left[var(idx(ai, bj), c, r)] += QComplex(1);
            if (x == ai) left[var(b, c, idx(aj, y))] -= QComplex(1);
            if (y == bj) left[var(a, c, idx(x, bi))] -= QComplex(1);
            sys.add_equation(std::move(left));
            // {E_a, E_b E_c} - {E_a, E_b} E_c - E_b {E_a, E_c}
            SparseRow right;
            if (bj == ci) right[var(a, idx(bi, cj), r)] += QComplex(1);
            if (y == cj) right[var(a, b, idx(x, ci))] -= QComplex(1);
            if (x == bi) right[var(a, c, idx(bj, y))] -= QComplex(1);
            sys.add_equation(std::move(right));
            out.equations += 2;
          }
        }
      }
    }
  }
  auto sol = sys.solve();
  out.solutions = canonical_basis(sol.nullspace);
  Vec comm(out.unknowns);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = 0; q < m; ++q) {
      QMatrix e = commutator(QMatrix::unit(n, p / n, p % n), QMatrix::unit(n, q / n, q % n));
      for (std::size_t r = 0; r < m; ++r) comm[var(p, q, r)] = e.vec()[r];
    }
  }
  out.contains_commutator = in_span(out.solutions, comm);
  return out;
}

double span_residual(const Eigen::MatrixXcd& m, const std::vector<Eigen::MatrixXcd>& basis) {
  const Eigen::Index len = m.size();
  if (basis.empty()) return m.norm();
  Eigen::MatrixXcd a(len, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k].size() != len) throw Error(ErrorKind::size_mismatch, "basis matrices have mixed sizes");
    a.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::VectorXcd>(basis[k].data(), len);
  }
  Eigen::Map<const Eigen::VectorXcd> v(m.data(), len);
  Eigen::VectorXcd coeff = a.colPivHouseholderQr().solve(v);
  return (a * coeff - v).norm();
}

}  // namespace aldyn
