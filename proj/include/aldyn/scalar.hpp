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
#include <map>
#include <string>

#include "aldyn/rational.hpp"

namespace aldyn {

/// Element of Q(i)[theta]: a polynomial in the formal deformation parameter
/// with complex rational coefficients. Zero coefficients are never stored.
class Scalar {
 public:
  using Terms = std::map<int, QComplex>;

  Scalar() = default;
  Scalar(QComplex c);                   // NOLINT
  Scalar(const Rational& r) : Scalar(QComplex(r)) {}  // NOLINT
  Scalar(int v) : Scalar(QComplex(v)) {}  // NOLINT

  static Scalar theta(int power = 1);
  static Scalar term(int power, QComplex c);
  static Scalar i() { return Scalar(QComplex::i()); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  /// True when no positive theta power is present.
  bool is_theta_free() const;
  /// Single theta power with a purely real or purely imaginary coefficient.
  bool is_simple() const;

  QComplex coefficient(int power) const;
  /// Value at theta = 0.
  QComplex constant_term() const { return coefficient(0); }
  int max_power() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  int min_power() const { return terms_.empty() ? 0 : terms_.begin()->first; }

  /// Multiplies by theta^delta. Throws when a negative power would appear.
  Scalar shift(int delta) const;
  std::complex<double> evaluate(double theta) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(int power, const QComplex& c);

  Terms terms_;
};

/// Human-readable form, e.g. "1/2*i*theta" or "(1 + theta)". Parentheses are
/// added when `wrap` is set and the value has more than one summand.
std::string to_text(const Scalar& s, bool wrap = true);

}  // namespace aldyn
