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

#include "aldyn/linsolve.hpp"

#include "aldyn/error.hpp"

namespace aldyn {

namespace {

// row -= factor * pivot, dropping cancelled entries.
void axpy(SparseRow& row, QComplex& rhs, const QComplex& factor, const SparseRow& pivot,
          const QComplex& pivot_rhs) {
  for (const auto& [col, v] : pivot) {
    auto [it, inserted] = row.emplace(col, QComplex());
    it->second -= factor * v;
    if (it->second.is_zero()) row.erase(it);
  }
  rhs -= factor * pivot_rhs;
}

}  // namespace

void LinearSystem::add_equation(SparseRow row, QComplex rhs) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= unknowns_) throw Error(ErrorKind::internal, "equation refers to an unknown out of range");
    if (it->second.is_zero()) {
      it = row.erase(it);
    } else {
      ++it;
    }
  }
  // Eliminate known pivots in increasing column order. Each pivot row only
  // touches columns at or after its own leading column.
  auto it = row.begin();
  while (it != row.end()) {
    auto pv = pivots_.find(it->first);
    if (pv == pivots_.end()) {
      ++it;
      continue;
    }
    std::size_t col = it->first;
    QComplex factor = it->second;
    axpy(row, rhs, factor, pv->second.row, pv->second.rhs);
    it = row.upper_bound(col);
  }
  if (row.empty()) {
    if (!rhs.is_zero()) consistent_ = false;
    return;
  }
  std::size_t lead = row.begin()->first;
  QComplex inv = row.begin()->second.inverse();
  for (auto& [c, v] : row) v *= inv;
  rhs *= inv;
  // Keep the echelon form reduced: remove the new leading column from
  // existing pivot rows.
  for (auto& [pc, p] : pivots_) {
    auto hit = p.row.find(lead);
    if (hit == p.row.end()) continue;
    QComplex factor = hit->second;
    axpy(p.row, p.rhs, factor, row, rhs);
  }
  pivots_.emplace(lead, Pivot{std::move(row), std::move(rhs)});
}

void LinearSystem::add_equation(const Vec& row, QComplex rhs) {
  SparseRow sparse;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!row[i].is_zero()) sparse.emplace(i, row[i]);
  }
  add_equation(std::move(sparse), std::move(rhs));
}

LinearSolution LinearSystem::solve() const {
  LinearSolution out;
  out.consistent = consistent_;
  out.rank = pivots_.size();
  // Pivot rows are fully reduced: each row holds its pivot and free columns only.
  if (consistent_) {
    out.particular.assign(unknowns_, QComplex());
    for (const auto& [col, p] : pivots_) out.particular[col] = p.rhs;
  }
  for (std::size_t free = 0; free < unknowns_; ++free) {
    if (pivots_.count(free)) continue;
    Vec v(unknowns_, QComplex());
    v[free] = QComplex(1);
    for (const auto& [col, p] : pivots_) {
      auto hit = p.row.find(free);
      if (hit != p.row.end()) v[col] = -hit->second;
    }
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

std::size_t rank_of(const std::vector<Vec>& vectors) {
  if (vectors.empty()) return 0;
  LinearSystem sys(vectors.front().size());
  for (const auto& v : vectors) sys.add_equation(v);
  return sys.rank();
}

bool in_span(const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) {
    for (const auto& x : v) {
      if (!x.is_zero()) return false;
    }
    return true;
  }
  LinearSystem sys(v.size());
  for (const auto& b : basis) sys.add_equation(b);
  std::size_t r = sys.rank();
  sys.add_equation(v);
  return sys.rank() == r;
}

std::vector<Vec> canonical_basis(const std::vector<Vec>& vectors) {
  if (vectors.empty()) return {};
  std::size_t n = vectors.front().size();
  LinearSystem sys(n);
  for (const auto& v : vectors) sys.add_equation(v);
  std::vector<Vec> out;
  for (const auto& row : sys.reduced_rows()) {
    Vec dense(n, QComplex());
    for (const auto& [c, v] : row) dense[c] = v;
    out.push_back(std::move(dense));
  }
  return out;
}

std::vector<SparseRow> LinearSystem::reduced_rows() const {
  std::vector<SparseRow> out;
  out.reserve(pivots_.size());
  for (const auto& [col, p] : pivots_) out.push_back(p.row);
  return out;
}

LinearSolution solve_poly_combination(const std::vector<std::vector<Poly>>& columns,
                                      const std::vector<Poly>& rhs) {
  std::size_t comps = rhs.size();
  for (const auto& col : columns) {
    if (col.size() != comps) throw Error(ErrorKind::internal, "ansatz column has the wrong length");
  }
  // One coordinate map per component; equations are assembled row-wise.
  std::vector<std::map<std::pair<Exponents, int>, SparseRow>> rows(comps);
  std::vector<std::map<std::pair<Exponents, int>, QComplex>> rhs_vals(comps);
  for (std::size_t u = 0; u < columns.size(); ++u) {
    for (std::size_t c = 0; c < comps; ++c) {
      for (const auto& [e, s] : columns[u][c].terms()) {
        for (const auto& [p, v] : s.terms()) rows[c][{e, p}][u] += v;
      }
    }
  }
  for (std::size_t c = 0; c < comps; ++c) {
    for (const auto& [e, s] : rhs[c].terms()) {
      for (const auto& [p, v] : s.terms()) {
        rows[c][{e, p}];
        rhs_vals[c][{e, p}] += v;
      }
    }
  }
  LinearSystem sys(columns.size());
  for (std::size_t c = 0; c < comps; ++c) {
    for (auto& [key, row] : rows[c]) {
      QComplex r;
      if (auto it = rhs_vals[c].find(key); it != rhs_vals[c].end()) r = it->second;
      sys.add_equation(std::move(row), r);
    }
  }
  return sys.solve();
}

}  // namespace aldyn
