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

#include <cstddef>
#include <map>
#include <vector>

#include "aldyn/poly.hpp"
#include "aldyn/rational.hpp"

namespace aldyn {

using SparseRow = std::map<std::size_t, QComplex>;
using Vec = std::vector<QComplex>;

struct LinearSolution {
  bool consistent = true;
  std::size_t rank = 0;
  /// Free unknowns set to zero. Empty when inconsistent.
  Vec particular;
  /// Basis of the homogeneous solution space, one vector per free unknown.
  std::vector<Vec> nullspace;
};

/// Exact linear system over Q(i). Equations are reduced against the current
/// echelon form as they arrive, so redundant equations cost no storage.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  std::size_t unknowns() const { return unknowns_; }
  void add_equation(SparseRow row, QComplex rhs = QComplex());
  void add_equation(const Vec& row, QComplex rhs = QComplex());

  bool consistent() const { return consistent_; }
  std::size_t rank() const { return pivots_.size(); }

  LinearSolution solve() const;
  /// Rows of the reduced echelon form, ordered by leading column.
  std::vector<SparseRow> reduced_rows() const;

 private:
  struct Pivot {
    SparseRow row;  // leading entry (its key) normalized to one
    QComplex rhs;
  };

  std::size_t unknowns_;
  std::map<std::size_t, Pivot> pivots_;
  bool consistent_ = true;
};

std::size_t rank_of(const std::vector<Vec>& vectors);
bool in_span(const std::vector<Vec>& basis, const Vec& v);
/// Reduced row echelon basis of the span: canonical for a given subspace.
std::vector<Vec> canonical_basis(const std::vector<Vec>& vectors);

/// Finds theta-independent constants x_u with sum_u x_u * columns[u][c] = rhs[c]
/// for every component c. Each (monomial, theta power) pair gives one equation.
LinearSolution solve_poly_combination(const std::vector<std::vector<Poly>>& columns,
                                      const std::vector<Poly>& rhs);

}  // namespace aldyn
