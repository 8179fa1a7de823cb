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

#include "aldyn/diffcalc.hpp"

#include <algorithm>
#include <optional>

#include "aldyn/error.hpp"
#include "aldyn/linsolve.hpp"

namespace aldyn {

namespace {

// Sorts in place; returns the permutation sign, or 0 on a repeated index.
int sort_with_sign(KForm::Index& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j) {
      if (idx[j] == idx[j + 1]) return 0;
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
    }
  }
  for (std::size_t j = 0; j + 1 < idx.size(); ++j)
    if (idx[j] == idx[j + 1]) return 0;
  return sign;
}

void combinations(std::size_t m, std::size_t k, std::vector<KForm::Index>& out) {
  if (k > m) return;
  KForm::Index c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

void require_same_basis(const KForm& a, const KForm& b) {
  if (a.basis() != b.basis() && !(a.basis()->generators() == b.basis()->generators())) {
    throw Error(ErrorKind::precondition, "forms use different derivation bases");
  }
}

}  // namespace

DerivationBasis::DerivationBasis(std::vector<QMatrix> generators) : x_(std::move(generators)) {
  if (!x_.empty()) n_ = x_.front().size();
  std::vector<Vec> vs;
  for (const auto& x : x_) {
    if (x.size() != n_) throw Error(ErrorKind::size_mismatch, "basis matrices have mixed sizes");
    if (!x.trace().is_zero()) throw Error(ErrorKind::precondition, "derivation generators must be traceless");
    vs.push_back(x.vec());
  }
  if (rank_of(vs) != x_.size()) throw Error(ErrorKind::precondition, "derivation generators are dependent");
  const std::size_t m = x_.size();
  c_.assign(m * m * m, QComplex());
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = 0; l < m; ++l) {
      Vec coords = coordinates(commutator(x_[l], x_[k]));
      for (std::size_t j = 0; j < m; ++j) c_[(j * m + k) * m + l] = coords[j];
    }
  }
}

std::shared_ptr<const DerivationBasis> DerivationBasis::gell_mann(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::precondition, "Gell-Mann basis needs n >= 2");
  std::vector<QMatrix> xs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      xs.push_back(QMatrix::unit(n, i, j) + QMatrix::unit(n, j, i));
      xs.push_back(QComplex(0, -1) * QMatrix::unit(n, i, j) + QComplex(0, 1) * QMatrix::unit(n, j, i));
    }
  }
  for (std::size_t l = 1; l < n; ++l) {
    QMatrix d(n);
    for (std::size_t i = 0; i < l; ++i) d(i, i) = QComplex(1);
    d(l, l) = QComplex(-static_cast<long>(l));
    xs.push_back(d);
  }
  return std::make_shared<const DerivationBasis>(std::move(xs));
}

Vec DerivationBasis::coordinates(const QMatrix& m) const {
  if (m.size() != n_) throw Error(ErrorKind::size_mismatch, "matrix size differs from the basis");
  LinearSystem sys(x_.size());
  for (std::size_t e = 0; e < n_ * n_; ++e) {
    SparseRow row;
    for (std::size_t j = 0; j < x_.size(); ++j)
      if (!x_[j].vec()[e].is_zero()) row[j] = x_[j].vec()[e];
    sys.add_equation(std::move(row), m.vec()[e]);
  }
  auto sol = sys.solve();
  if (!sol.consistent) throw Error(ErrorKind::precondition, "matrix is outside the span of the basis");
  return sol.particular;
}

const QComplex& DerivationBasis::structure(std::size_t j, std::size_t k, std::size_t l) const {
  const std::size_t m = x_.size();
  return c_.at((j * m + k) * m + l);
}

QMatrix DerivationBasis::act(const Vec& x, const QMatrix& a) const {
  if (x.size() != x_.size()) throw Error(ErrorKind::size_mismatch, "field has wrong number of coordinates");
  QMatrix gen(n_);
  for (std::size_t j = 0; j < x.size(); ++j)
    if (!x[j].is_zero()) gen += x[j] * x_[j];
  return commutator(a, gen);
}

KForm::KForm(BasisRef basis, std::size_t degree) : basis_(std::move(basis)), degree_(degree) {
  if (!basis_) throw Error(ErrorKind::precondition, "form without a basis");
}

KForm KForm::function(BasisRef basis, const QMatrix& a) {
  KForm f(std::move(basis), 0);
  f.set({}, a);
  return f;
}

KForm KForm::dual(BasisRef basis, std::size_t j) {
  if (j >= basis->size()) throw Error(ErrorKind::size_mismatch, "dual form index out of range");
  const std::size_t n = basis->n();
  KForm f(std::move(basis), 1);
  f.set({j}, QMatrix::identity(n));
  return f;
}

void KForm::set(const Index& idx, const QMatrix& value) {
  if (idx.size() != degree_) throw Error(ErrorKind::size_mismatch, "index tuple length differs from the degree");
  for (auto i : idx)
    if (i >= basis_->size()) throw Error(ErrorKind::size_mismatch, "form index out of range");
  if (value.size() != basis_->n()) throw Error(ErrorKind::size_mismatch, "form value has wrong size");
  Index s = idx;
  int sign = sort_with_sign(s);
  if (sign == 0) {
    if (!value.is_zero()) throw Error(ErrorKind::precondition, "alternating form must vanish on repeated fields");
    return;
  }
  QMatrix v = sign > 0 ? value : -value;
  if (v.is_zero()) {
    coeffs_.erase(s);
  } else {
    coeffs_[s] = std::move(v);
  }
}

QMatrix KForm::at(const Index& idx) const {
  if (idx.size() != degree_) throw Error(ErrorKind::size_mismatch, "index tuple length differs from the degree");
  Index s = idx;
  int sign = sort_with_sign(s);
  auto it = sign == 0 ? coeffs_.end() : coeffs_.find(s);
  if (it == coeffs_.end()) return QMatrix(basis_->n());
  return sign > 0 ? it->second : -it->second;
}

QMatrix KForm::evaluate(const std::vector<Vec>& fields) const {
  if (fields.size() != degree_) throw Error(ErrorKind::size_mismatch, "number of fields differs from the degree");
  for (const auto& x : fields)
    if (x.size() != basis_->size()) throw Error(ErrorKind::size_mismatch, "field has wrong number of coordinates");
  QMatrix out(basis_->n());
  for (const auto& [idx, value] : coeffs_) {
    // determinant of fields[i][idx[r]]
    std::vector<std::size_t> perm(degree_);
    for (std::size_t r = 0; r < degree_; ++r) perm[r] = r;
    QComplex det;
    do {
      Index p(perm.begin(), perm.end());
      int sign = sort_with_sign(p);
      QComplex term(sign);
      for (std::size_t i = 0; i < degree_ && !term.is_zero(); ++i) term *= fields[i][idx[perm[i]]];
      det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!det.is_zero()) out += det * value;
  }
  return out;
}

KForm& KForm::operator+=(const KForm& o) {
  require_same_basis(*this, o);
  if (degree_ != o.degree_) throw Error(ErrorKind::size_mismatch, "adding forms of different degree");
  for (const auto& [idx, v] : o.coeffs_) set(idx, at(idx) + v);
  return *this;
}

KForm& KForm::operator-=(const KForm& o) {
  require_same_basis(*this, o);
  if (degree_ != o.degree_) throw Error(ErrorKind::size_mismatch, "subtracting forms of different degree");
  for (const auto& [idx, v] : o.coeffs_) set(idx, at(idx) - v);
  return *this;
}

KForm operator*(const QComplex& c, const KForm& f) {
  KForm out(f.basis_, f.degree_);
  for (const auto& [idx, v] : f.coeffs_) out.set(idx, c * v);
  return out;
}

KForm operator*(const QMatrix& a, const KForm& f) {
  KForm out(f.basis_, f.degree_);
  for (const auto& [idx, v] : f.coeffs_) out.set(idx, a * v);
  return out;
}

KForm operator*(const KForm& f, const QMatrix& a) {
  KForm out(f.basis_, f.degree_);
  for (const auto& [idx, v] : f.coeffs_) out.set(idx, v * a);
  return out;
}

bool operator==(const KForm& a, const KForm& b) {
  return a.degree_ == b.degree_ && a.basis_->generators() == b.basis_->generators() && a.coeffs_ == b.coeffs_;
}

KForm wedge(const KForm& a, const KForm& b) {
  require_same_basis(a, b);
  KForm out(a.basis(), a.degree() + b.degree());
  for (const auto& [ia, va] : a.coeffs()) {
    for (const auto& [ib, vb] : b.coeffs()) {
      KForm::Index merged = ia;
      merged.insert(merged.end(), ib.begin(), ib.end());
      int sign = sort_with_sign(merged);
      if (sign == 0) continue;
      QMatrix prod = va * vb;
      out.set(merged, out.at(merged) + (sign > 0 ? prod : -prod));
    }
  }
  return out;
}

KForm exterior_d(const KForm& f) {
  const auto& basis = *f.basis();
  const std::size_t m = basis.size(), k = f.degree();
  KForm out(f.basis(), k + 1);
  if (f.is_zero()) return out;
  std::vector<KForm::Index> tuples;
  combinations(m, k + 1, tuples);
  for (const auto& idx : tuples) {
    QMatrix val(basis.n());
    for (std::size_t r = 0; r <= k; ++r) {
      KForm::Index rest;
      for (std::size_t t = 0; t <= k; ++t)
        if (t != r) rest.push_back(idx[t]);
      QMatrix term = basis.act(idx[r], f.at(rest));
      val += (r % 2 == 0) ? term : -term;
    }
    for (std::size_t r = 0; r <= k; ++r) {
      for (std::size_t s = r + 1; s <= k; ++s) {
        KForm::Index rest;
        for (std::size_t t = 0; t <= k; ++t)
          if (t != r && t != s) rest.push_back(idx[t]);
        QMatrix term(basis.n());
        for (std::size_t j = 0; j < m; ++j) {
          const QComplex& c = basis.structure(j, idx[r], idx[s]);
          if (c.is_zero()) continue;
          KForm::Index args{j};
          args.insert(args.end(), rest.begin(), rest.end());
          term += c * f.at(args);
        }
        val += ((r + s) % 2 == 0) ? term : -term;
      }
    }
    out.set(idx, val);
  }
  return out;
}

KForm contract(const Vec& x, const KForm& f) {
  if (f.degree() == 0) throw Error(ErrorKind::precondition, "cannot contract a 0-form");
  const auto& basis = *f.basis();
  if (x.size() != basis.size()) throw Error(ErrorKind::size_mismatch, "field has wrong number of coordinates");
  KForm out(f.basis(), f.degree() - 1);
  std::vector<KForm::Index> tuples;
  combinations(basis.size(), f.degree() - 1, tuples);
  for (const auto& idx : tuples) {
    QMatrix val(basis.n());
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j].is_zero()) continue;
      KForm::Index args{j};
      args.insert(args.end(), idx.begin(), idx.end());
      val += x[j] * f.at(args);
    }
    out.set(idx, val);
  }
  return out;
}

KForm lie_derivative(const Vec& x, const KForm& f) {
  KForm out = contract(x, exterior_d(f));
  if (f.degree() > 0) out += exterior_d(contract(x, f));
  return out;
}

ExactnessObstruction exactness_obstruction(const BasisRef& basis, std::size_t j) {
  const std::size_t n = basis->n(), m = basis->size();
  if (j >= m) throw Error(ErrorKind::size_mismatch, "dual form index out of range");
  ExactnessObstruction out;
  out.trace = KForm::dual(basis, j).at({j}).trace();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t k = 0; k < m; ++k)
        if (!basis->act(k, QMatrix::unit(n, r, s)).trace().is_zero()) out.differentials_traceless = false;
  // [A, X_k] = delta^j_k 1 entrywise, unknown A_{rc} at r n + c
  LinearSystem sys(n * n);
  for (std::size_t k = 0; k < m; ++k) {
    const QMatrix& x = basis->generator(k);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        SparseRow row;
        for (std::size_t t = 0; t < n; ++t) {
          if (!x(t, c).is_zero()) row[r * n + t] += x(t, c);
          if (!x(r, t).is_zero()) row[t * n + c] -= x(r, t);
        }
        sys.add_equation(std::move(row), (k == j && r == c) ? QComplex(1) : QComplex());
      }
    }
  }
  out.solution_space_empty = !sys.consistent();
  return out;
}

}  // namespace aldyn
