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

// Random generators for property tests. Every generator takes the engine
// explicitly so failures reproduce from the seed.

#pragma once

#include <random>
#include <vector>

#include "aldyn/derivation.hpp"
#include "aldyn/matrix.hpp"
#include "aldyn/parse.hpp"
#include "aldyn/poly.hpp"

namespace aldyn::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int range = 5) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, 3);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline QComplex random_qcomplex(Rng& rng, bool complex_values = true) {
  std::bernoulli_distribution imag(0.3);
  if (complex_values && imag(rng)) return {random_rational(rng), random_rational(rng)};
  return {random_rational(rng), 0};
}

/// Random polynomial of total degree <= max_degree with a few terms.
/// `theta` adds random theta powers to the coefficients.
inline Poly random_poly(Rng& rng, const Generators& gens, int max_degree, int max_terms = 4,
                        bool theta = false, bool complex_values = true) {
  auto monos = monomials_up_to(gens->size(), max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  std::uniform_int_distribution<int> count(1, max_terms);
  std::uniform_int_distribution<int> tpow(0, 2);
  Poly p(gens);
  int n = count(rng);
  for (int k = 0; k < n; ++k) {
    Scalar c = Scalar::term(theta ? tpow(rng) : 0, random_qcomplex(rng, complex_values));
    p.add_term(monos[pick(rng)], c);
  }
  return p;
}

inline PolyDerivation random_derivation(Rng& rng, const Generators& gens, int max_degree, int max_terms = 3) {
  std::vector<Poly> images;
  for (std::size_t a = 0; a < gens->size(); ++a) {
    images.push_back(random_poly(rng, gens, max_degree, max_terms, false, false));
  }
  return PolyDerivation(gens, std::move(images));
}

inline QMatrix random_qmatrix(Rng& rng, std::size_t n, bool complex_values = true) {
  QMatrix m(n);
  std::bernoulli_distribution sparse(0.3);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (!sparse(rng)) m(r, c) = random_qcomplex(rng, complex_values);
  return m;
}

inline QMatrix random_hermitian(Rng& rng, std::size_t n) {
  QMatrix m = random_qmatrix(rng, n);
  return m + m.adjoint();
}

inline Poly P(const char* text, const Generators& gens) { return parse_poly(text, gens); }

}  // namespace aldyn::testing
