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

#include "aldyn/moyal.hpp"

#include <map>
#include <random>

#include "aldyn/error.hpp"

namespace aldyn {

namespace {

std::optional<RationalMatrix> invert(RationalMatrix m) {
  const std::size_t n = m.size();
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Rational s = m[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      m[col][k] /= s;
      inv[col][k] /= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

void require_polynomial_context(const StarContext& ctx, const Poly& f) {
  if (!same_generators(f.gens(), ctx.gens())) {
    throw Error(ErrorKind::generator_mismatch, "polynomial is not over the star context's generators");
  }
}

// Cache of mixed partial derivatives keyed by the derivative multi-index.
class DerivativeCache {
 public:
  explicit DerivativeCache(const Poly& f) { cache_.emplace(Exponents(f.gens()->size(), 0), f); }

  const Poly& get(const Exponents& e) {
    if (auto it = cache_.find(e); it != cache_.end()) return it->second;
    std::size_t a = 0;
    while (e[a] == 0) ++a;
    Exponents lower = e;
    --lower[a];
    Poly d = partial_derivative(get(lower), a);
    return cache_.emplace(e, std::move(d)).first->second;
  }

 private:
  std::map<Exponents, Poly> cache_;
};

// Every D_k up to max_k in one pass over the bidifferential expansion.
std::vector<Poly> bidifferentials(const StarContext& ctx, const Poly& f, const Poly& g, int max_k) {
  require_polynomial_context(ctx, f);
  require_polynomial_context(ctx, g);
  const std::size_t n = ctx.dim();
  DerivativeCache df(f), dg(g);
  using Key = std::pair<Exponents, Exponents>;
  std::map<Key, Rational> layer;
  layer[{Exponents(n, 0), Exponents(n, 0)}] = 1;
  std::vector<Poly> out;
  out.push_back(f * g);
  for (int k = 1; k <= max_k; ++k) {
    std::map<Key, Rational> next;
    for (const auto& [key, coeff] : layer) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          const Rational& l = ctx.lambda()[a][b];
          if (l == 0) continue;
          Key nk = key;
          ++nk.first[a];
          ++nk.second[b];
          if (df.get(nk.first).is_zero() || dg.get(nk.second).is_zero()) continue;
          next[nk] += coeff * l;
        }
      }
    }
    layer.clear();
    for (auto& [key, coeff] : next) {
      if (coeff != 0) layer.emplace(key, coeff);
    }
    Poly dk(ctx.gens());
    for (const auto& [key, coeff] : layer) {
      dk += Scalar(QComplex(coeff)) * (df.get(key.first) * dg.get(key.second));
    }
    out.push_back(dk);
    if (layer.empty()) break;
  }
  while (static_cast<int>(out.size()) <= max_k) out.push_back(Poly(ctx.gens()));
  return out;
}

int star_order(const Poly& f, const Poly& g) { return std::min(f.degree(), g.degree()); }

}  // namespace

StarContext::StarContext(Generators gens, RationalMatrix lambda) : gens_(std::move(gens)), lambda_(std::move(lambda)) {
  const std::size_t n = gens_->size();
  for (std::size_t a = 0; a < n; ++a) {
    if (gens_->kind(a) == GeneratorKind::angle_phase) {
      throw Error(ErrorKind::precondition, "star product is not defined on angle-phase generators");
    }
  }
  if (lambda_.size() != n) throw Error(ErrorKind::size_mismatch, "pairing matrix has wrong dimension");
  for (std::size_t a = 0; a < n; ++a) {
    if (lambda_[a].size() != n) throw Error(ErrorKind::size_mismatch, "pairing matrix has wrong dimension");
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (lambda_[a][b] != -lambda_[b][a]) throw Error(ErrorKind::precondition, "pairing is not antisymmetric");
    }
  }
  auto inv = invert(lambda_);
  if (!inv) throw Error(ErrorKind::precondition, "pairing is degenerate");
  omega_ = std::move(*inv);
}

StarContext StarContext::canonical(int pairs) { return canonical(GeneratorSet::canonical(pairs)); }

StarContext StarContext::canonical(Generators gens) {
  auto tensor = PoissonTensor::canonical(gens);
  const std::size_t n = gens->size();
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m[a][b] = tensor(a, b).constant_term().constant_term().re();
  return StarContext(gens, std::move(m));
}

PoissonTensor StarContext::poisson() const {
  const std::size_t n = dim();
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n, Poly(gens_)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (lambda_[a][b] != 0) m[a][b] = Poly::constant(gens_, Scalar(QComplex(lambda_[a][b])));
  return PoissonTensor(gens_, std::move(m));
}

Poly bidifferential(const StarContext& ctx, const Poly& f, const Poly& g, int k) {
  if (k < 0) throw Error(ErrorKind::precondition, "negative bidifferential order");
  return bidifferentials(ctx, f, g, k).at(k);
}

Poly star(const StarContext& ctx, const Poly& f, const Poly& g) {
  const int order = star_order(f, g);
  auto dks = bidifferentials(ctx, f, g, order);
  Poly out(ctx.gens());
  QComplex half_i(0, Rational(1, 2));
  QComplex factor(1);
  for (int k = 0; k <= order; ++k) {
    if (k > 0) factor = factor * half_i / QComplex(Rational(k));
    if (dks[k].is_zero()) continue;
    out += Scalar::term(k, factor) * dks[k];
  }
  return out;
}

Poly star_commutator(const StarContext& ctx, const Poly& f, const Poly& g) {
  return star(ctx, f, g) - star(ctx, g, f);
}

Poly StarDerivation::apply(const Poly& f) const {
  Poly c = star_commutator(ctx_, x_, f);
  return Scalar::i() * shift_theta(c, -1);
}

StarDerivation inner_star_derivation(const StarContext& ctx, const Poly& x) {
  require_polynomial_context(ctx, x);
  return StarDerivation(ctx, x);
}

SSpaceReport s_space_check(const StarContext& ctx) {
  SSpaceReport report;
  for (const auto& e : monomials_up_to(ctx.dim(), 2)) report.basis.push_back(Poly::monomial(ctx.gens(), e));
  const auto tensor = ctx.poisson();
  const std::size_t n = report.basis.size();
  Scalar i_theta = Scalar::i() * Scalar::theta();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      SSpaceEntry entry{i, j, star_commutator(ctx, report.basis[i], report.basis[j]),
                        bracket(tensor, report.basis[i], report.basis[j])};
      if (entry.poisson_bracket.degree() > 2 || !entry.poisson_bracket.is_theta_free()) report.closed = false;
      if (entry.star_bracket.degree() > 2) report.closed = false;
      if (!(entry.star_bracket == i_theta * entry.poisson_bracket)) report.brackets_agree = false;
      report.table.push_back(std::move(entry));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = report.table[i * n + j];
      const auto& b = report.table[j * n + i];
      if (!(a.star_bracket == -b.star_bracket) || !(a.poisson_bracket == -b.poisson_bracket)) {
        report.antisymmetric = false;
      }
    }
  }
  return report;
}

PolyDerivation linear_derivation(const Generators& gens, const QMatrixData& c) {
  const std::size_t n = gens->size();
  if (c.size() != n) throw Error(ErrorKind::size_mismatch, "matrix size differs from the generator count");
  std::vector<Poly> images;
  for (std::size_t a = 0; a < n; ++a) {
    if (c[a].size() != n) throw Error(ErrorKind::size_mismatch, "matrix is not square");
    Poly img(gens);
    for (std::size_t b = 0; b < n; ++b) {
      if (!c[a][b].is_zero()) img += Scalar(c[a][b]) * Poly::generator(gens, b);
    }
    images.push_back(std::move(img));
  }
  return PolyDerivation(gens, std::move(images));
}

WignerReport wigner_ambiguity_check(const StarContext& ctx, const QMatrixData& c, int trials, std::uint64_t seed) {
  const auto& gens = ctx.gens();
  const std::size_t n = gens->size();
  auto d = linear_derivation(gens, c);
  WignerReport report;

  report.symplectic_residual.assign(n, std::vector<QComplex>(n));
  report.symplectic = true;
  const auto& w = ctx.omega();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      QComplex s;
      for (std::size_t k = 0; k < n; ++k) {
        s += QComplex(w[a][k]) * c[k][b] + c[k][a] * QComplex(w[k][b]);
      }
      if (!s.is_zero()) report.symplectic = false;
      report.symplectic_residual[a][b] = s;
    }
  }

  std::vector<std::pair<Poly, Poly>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) pairs.emplace_back(Poly::generator(gens, a), Poly::generator(gens, b));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3), terms(1, 4);
  auto monos = monomials_up_to(n, 3);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  auto random_poly = [&] {
    Poly p(gens);
    for (int t = terms(rng); t > 0; --t) {
      Rational r(num(rng), den(rng));
      r.canonicalize();
      p.add_term(monos[pick(rng)], Scalar(QComplex(r)));
    }
    return p;
  };
  for (int t = 0; t < trials; ++t) pairs.emplace_back(random_poly(), random_poly());

  report.pointwise_leibniz = true;
  report.star_leibniz = true;
  for (const auto& [f, g] : pairs) {
    if (!(d(f * g) == f * d(g) + d(f) * g)) report.pointwise_leibniz = false;
    if (!(d(star(ctx, f, g)) == star(ctx, d(f), g) + star(ctx, f, d(g)))) report.star_leibniz = false;
  }
  return report;
}

}  // namespace aldyn
