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

#include "aldyn/poisson.hpp"

#include "aldyn/error.hpp"
#include "aldyn/linsolve.hpp"

namespace aldyn {

PoissonTensor::PoissonTensor(Generators gens, std::vector<std::vector<Poly>> components)
    : gens_(std::move(gens)), lambda_(std::move(components)) {
  const std::size_t n = gens_->size();
  if (lambda_.size() != n) throw Error(ErrorKind::size_mismatch, "Poisson tensor has wrong dimension");
  for (const auto& row : lambda_) {
    if (row.size() != n) throw Error(ErrorKind::size_mismatch, "Poisson tensor has wrong dimension");
    for (const auto& entry : row) {
      if (!same_generators(entry.gens(), gens_)) {
        throw Error(ErrorKind::generator_mismatch, "Poisson tensor entry over other generators");
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!lambda_[a][a].is_zero()) throw Error(ErrorKind::precondition, "Poisson tensor has nonzero diagonal");
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!(lambda_[a][b] + lambda_[b][a]).is_zero()) {
        throw Error(ErrorKind::precondition, "Poisson tensor is not antisymmetric");
      }
    }
  }
}

PoissonTensor PoissonTensor::zero(Generators gens) {
  std::vector<std::vector<Poly>> m(gens->size(), std::vector<Poly>(gens->size(), Poly(gens)));
  return PoissonTensor(gens, std::move(m));
}

PoissonTensor PoissonTensor::canonical(Generators gens) {
  std::vector<std::tuple<std::size_t, std::size_t, Poly>> upper;
  for (std::size_t a = 0; a < gens->size(); ++a) {
    if (gens->kind(a) != GeneratorKind::position) continue;
    auto b = gens->conjugate(a);
    if (!b) throw Error(ErrorKind::precondition, "position " + gens->name(a) + " has no conjugate momentum");
    Poly one = Poly::constant(gens, Scalar(1));
    if (a < *b) {
      upper.emplace_back(a, *b, one);
    } else {
      upper.emplace_back(*b, a, -one);
    }
  }
  return from_components(gens, upper);
}

PoissonTensor PoissonTensor::from_components(Generators gens,
                                             const std::vector<std::tuple<std::size_t, std::size_t, Poly>>& upper) {
  const std::size_t n = gens->size();
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly(gens)));
  for (const auto& [a, b, f] : upper) {
    if (a >= n || b >= n) throw Error(ErrorKind::size_mismatch, "Poisson tensor index out of range");
    if (a == b) {
      if (!f.is_zero()) throw Error(ErrorKind::precondition, "Poisson tensor has nonzero diagonal");
      continue;
    }
    m[a][b] = f;
    m[b][a] = -f;
  }
  return PoissonTensor(gens, std::move(m));
}

Poly bracket(const PoissonTensor& lambda, const Poly& f, const Poly& g) {
  if (!same_generators(f.gens(), lambda.gens()) || !same_generators(g.gens(), lambda.gens())) {
    throw Error(ErrorKind::generator_mismatch, "bracket arguments are not over the tensor's generators");
  }
  const std::size_t n = lambda.dim();
  std::vector<Poly> df, dg;
  for (std::size_t a = 0; a < n; ++a) {
    df.push_back(partial_derivative(f, a));
    dg.push_back(partial_derivative(g, a));
  }
  Poly out(lambda.gens());
  for (std::size_t a = 0; a < n; ++a) {
    if (df[a].is_zero()) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (lambda(a, b).is_zero() || dg[b].is_zero()) continue;
      out += lambda(a, b) * df[a] * dg[b];
    }
  }
  return out;
}

JacobiResult jacobi_check(const PoissonTensor& lambda) {
  const std::size_t n = lambda.dim();
  auto term = [&](std::size_t c, std::size_t a, std::size_t b) {
    Poly out(lambda.gens());
    for (std::size_t k = 0; k < n; ++k) {
      if (lambda(c, k).is_zero()) continue;
      out += lambda(c, k) * partial_derivative(lambda(a, b), k);
    }
    return out;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        Poly sum = term(c, a, b) + term(a, b, c) + term(b, c, a);
        if (!sum.is_zero()) return {false, {a, b, c}, sum};
      }
    }
  }
  return {};
}

PolyDerivation hamiltonian_field(const PoissonTensor& lambda, const Poly& h) {
  std::vector<Poly> images;
  for (std::size_t a = 0; a < lambda.dim(); ++a) {
    images.push_back(bracket(lambda, Poly::generator(lambda.gens(), a), h));
  }
  return PolyDerivation(lambda.gens(), std::move(images));
}

bool conserved_check(const PoissonTensor& lambda, const Poly& h, const Poly& f) {
  return bracket(lambda, f, h).is_zero();
}

LieAlgebra3d LieAlgebra3d::su2() {
  LieAlgebra3d g;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    g.c[i][j][k] = 1;
    g.c[j][i][k] = -1;
  }
  return g;
}

LieAlgebra3d LieAlgebra3d::heisenberg() {
  LieAlgebra3d g;
  g.c[0][1][2] = 1;
  g.c[1][0][2] = -1;
  return g;
}

LieAlgebra3d LieAlgebra3d::abelian() { return {}; }

bool LieAlgebra3d::antisymmetric() const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (c[i][j][k] != -c[j][i][k]) return false;
  return true;
}

bool LieAlgebra3d::satisfies_jacobi() const {
  // sum_m c^m_{ij} c^l_{mk} + c^m_{jk} c^l_{mi} + c^m_{ki} c^l_{mj} = 0
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          Rational s = 0;
          for (int m = 0; m < 3; ++m) {
            s += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l];
          }
          if (s != 0) return false;
        }
  return true;
}

PoissonTensor lie_poisson(const LieAlgebra3d& g, Generators gens) {
  if (!gens) gens = GeneratorSet::make({"x", "y", "z"});
  if (gens->size() != 3) throw Error(ErrorKind::size_mismatch, "Lie-Poisson tensor needs three generators");
  if (!g.antisymmetric()) throw Error(ErrorKind::precondition, "structure constants are not antisymmetric");
  if (!g.satisfies_jacobi()) throw Error(ErrorKind::precondition, "structure constants violate the Jacobi identity");
  std::vector<std::vector<Poly>> m(3, std::vector<Poly>(3, Poly(gens)));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        if (g.c[i][j][k] != 0) m[i][j] += Poly::generator(gens, k) * Scalar(QComplex(g.c[i][j][k]));
  return PoissonTensor(gens, std::move(m));
}

CasimirResult casimir_check(const PoissonTensor& lambda, const Poly& c) {
  for (std::size_t a = 0; a < lambda.dim(); ++a) {
    Poly v = bracket(lambda, Poly::generator(lambda.gens(), a), c);
    if (!v.is_zero()) return {false, a, v};
  }
  return {};
}

HamiltonianSearch find_hamiltonian(const PoissonTensor& lambda, const PolyDerivation& d, int cap) {
  if (!same_generators(d.gens(), lambda.gens())) {
    throw Error(ErrorKind::generator_mismatch, "derivation and tensor use different generators");
  }
  HamiltonianSearch out;
  out.degree_cap = cap;
  auto monos = monomials_up_to(lambda.dim(), cap);
  monos.erase(monos.begin());  // constants give the zero field
  std::vector<std::vector<Poly>> columns;
  for (const auto& e : monos) {
    columns.push_back(hamiltonian_field(lambda, Poly::monomial(lambda.gens(), e)).images());
  }
  LinearSolution sol = solve_poly_combination(columns, d.images());
  if (!sol.consistent) return out;
  Poly h(lambda.gens());
  for (std::size_t u = 0; u < monos.size(); ++u) {
    if (!sol.particular[u].is_zero()) h.add_term(monos[u], Scalar(sol.particular[u]));
  }
  out.hamiltonian = h;
  out.ambiguity = sol.nullspace.size();
  return out;
}

}  // namespace aldyn
