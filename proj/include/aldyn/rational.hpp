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
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace aldyn {

/// Arbitrary precision rational. GMP keeps it canonical (positive
/// denominator, reduced) after every arithmetic operation.
using Rational = mpq_class;

/// Parses "p/q", "p" or a finite decimal such as "-0.25".
Rational parse_rational(std::string_view text);

/// Always "p/q", with q = 1 for integers.
std::string to_string(const Rational& r);

/// Shortest human form: "3", "-1/2".
std::string to_text(const Rational& r);

/// Element of Q(i).
class QComplex {
 public:
  QComplex() = default;
  QComplex(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}  // NOLINT
  QComplex(long v) : re_(v), im_(0) {}  // NOLINT
  QComplex(int v) : re_(v), im_(0) {}   // NOLINT

  static QComplex i() { return {0, 1}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_imaginary() const { return sgn(re_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  QComplex conj() const { return {re_, -im_}; }
  QComplex inverse() const;
  Rational norm2() const { return re_ * re_ + im_ * im_; }

  QComplex& operator+=(const QComplex& o);
  QComplex& operator-=(const QComplex& o);
  QComplex& operator*=(const QComplex& o);
  QComplex& operator/=(const QComplex& o);

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  friend QComplex operator-(const QComplex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_double() const { return {re_.get_d(), im_.get_d()}; }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// "1/2", "-i", "3/4*i", "(1 + 2*i)". `wrap` parenthesizes mixed values.
std::string to_text(const QComplex& c, bool wrap = true);

/// Exact rational approximation of a double (binary expansion).
Rational rational_from_double(double v);

}  // namespace aldyn
