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

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aldyn/scalar.hpp"

namespace aldyn {

enum class GeneratorKind {
  plain,
  position,
  momentum,
  /// u = e^{i phi}; exponents may be negative and d/du acts as d/dphi.
  angle_phase,
};

std::string_view to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(std::string_view text);

/// Kind implied by a name: q, q1, q2... are positions, p, p1... momenta.
GeneratorKind infer_generator_kind(std::string_view name);

/// Ordered, named generators of a polynomial algebra.
class GeneratorSet {
 public:
  GeneratorSet(std::vector<std::string> names, std::vector<GeneratorKind> kinds);

  /// Kinds inferred from the names.
  static std::shared_ptr<const GeneratorSet> make(std::vector<std::string> names);
  static std::shared_ptr<const GeneratorSet> make(std::vector<std::string> names,
                                                  std::vector<GeneratorKind> kinds);
  /// (q, p) for one pair, (q1, p1, q2, p2, ...) otherwise.
  static std::shared_ptr<const GeneratorSet> canonical(int pairs);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  GeneratorKind kind(std::size_t i) const { return kinds_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<GeneratorKind>& kinds() const { return kinds_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws unknown_generator.
  std::size_t index(std::string_view name) const;

  /// Index of the conjugate generator when position/momentum pairs are
  /// matched by suffix (q2 <-> p2).
  std::optional<std::size_t> conjugate(std::size_t i) const;

  friend bool operator==(const GeneratorSet& a, const GeneratorSet& b) {
    return a.names_ == b.names_ && a.kinds_ == b.kinds_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<GeneratorKind> kinds_;
};

using Generators = std::shared_ptr<const GeneratorSet>;

/// Same set with one extra plain generator appended (used for the formal time t).
Generators with_generator(const Generators& gens, std::string name);

bool same_generators(const Generators& a, const Generators& b);

using Exponents = std::vector<int>;

/// Graded lexicographic order: lower total degree first, then lexicographic.
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

int total_degree(const Exponents& e);

/// Sparse multivariate (Laurent in angle-phase generators) polynomial with
/// Q(i)[theta] coefficients. Values are immutable in practice; every
/// operation returns a fresh polynomial.
class Poly {
 public:
  using Terms = std::map<Exponents, Scalar, GradedLex>;

  explicit Poly(Generators gens);

  static Poly constant(Generators gens, Scalar c);
  static Poly monomial(Generators gens, Exponents exps, Scalar c = Scalar(1));
  static Poly generator(Generators gens, std::string_view name, int power = 1);
  static Poly generator(Generators gens, std::size_t index, int power = 1);

  const Generators& gens() const { return gens_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  bool is_constant() const;
  /// Highest total degree (0 for the zero polynomial).
  int degree() const;
  /// Highest exponent of one generator.
  int degree_in(std::size_t index) const;
  bool is_theta_free() const;

  Scalar coefficient(const Exponents& e) const;
  /// Coefficient of the constant monomial.
  Scalar constant_term() const;

  void add_term(const Exponents& e, const Scalar& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Scalar& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  Generators gens_;
  Terms terms_;
};

/// Throws generator_mismatch unless both polynomials share a generator set.
void require_same_generators(const Poly& a, const Poly& b);

Poly pow(const Poly& f, int n);

/// Formal partial derivative. For an angle-phase generator u = e^{i phi}
/// this is d/dphi, so d(u^k) = i k u^k.
Poly partial_derivative(const Poly& f, std::string_view gen);
Poly partial_derivative(const Poly& f, std::size_t index);

/// Algebraic derivative d/dx (k x^{k-1} also for angle-phase generators);
/// the Leibniz extension of generator images uses this one.
Poly formal_derivative(const Poly& f, std::size_t index);

/// Keeps only the theta^0 part of every coefficient.
Poly theta_limit(const Poly& f);

/// Coefficient of theta^power, as a theta-free polynomial.
Poly theta_coefficient(const Poly& f, int power);

/// Multiplies every coefficient by theta^delta (delta may be negative when
/// theta divides every coefficient).
Poly shift_theta(const Poly& f, int delta);

/// Re-expresses f over a larger generator set that starts with f's generators.
Poly extend(const Poly& f, const Generators& target);

/// Replaces generator a by images[a]; all images share one generator set.
/// Negative exponents are only allowed when the image is a single monomial
/// with an invertible theta-free coefficient.
Poly substitute(const Poly& f, std::span<const Poly> images, const Generators& target);

/// Every monomial of total degree <= cap with non-negative exponents, in
/// graded lexicographic order.
std::vector<Exponents> monomials_up_to(std::size_t vars, int cap);
/// Monomials of exactly the given degree.
std::vector<Exponents> monomials_of_degree(std::size_t vars, int degree);

/// Polynomial with floating complex coefficients; results of numerical flows.
class NumPoly {
 public:
  using Terms = std::map<Exponents, std::complex<double>, GradedLex>;

  explicit NumPoly(Generators gens) : gens_(std::move(gens)) {}
  /// Evaluates theta numerically.
  static NumPoly from(const Poly& f, double theta = 0.0);

  const Generators& gens() const { return gens_; }
  const Terms& terms() const { return terms_; }
  std::complex<double> coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, std::complex<double> c);

  NumPoly& operator+=(const NumPoly& o);
  friend NumPoly operator+(NumPoly a, const NumPoly& b) { return a += b; }
  friend NumPoly operator*(const NumPoly& a, const NumPoly& b);
  friend NumPoly operator*(std::complex<double> c, const NumPoly& a);

  std::complex<double> evaluate(std::span<const std::complex<double>> point) const;
  /// Drops coefficients with modulus below tol.
  NumPoly pruned(double tol) const;

 private:
  Generators gens_;
  Terms terms_;
};

double max_abs_difference(const NumPoly& a, const NumPoly& b);

NumPoly substitute(const NumPoly& f, std::span<const NumPoly> images, const Generators& target);

std::complex<double> evaluate(const Poly& f, std::span<const std::complex<double>> point,
                              double theta = 0.0);

}  // namespace aldyn
