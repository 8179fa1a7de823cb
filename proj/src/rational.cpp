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

#include "aldyn/rational.hpp"

#include <cctype>
#include <cmath>

#include "aldyn/error.hpp"

namespace aldyn {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorKind::parse, "not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    mpz_class d{std::string(den)};
    if (d == 0) throw Error(ErrorKind::parse, "zero denominator in '" + std::string(text) + "'");
    out = Rational(mpz_class(std::string(num)), d);
    out.canonicalize();
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      bad(text);
    }
    mpz_class scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    mpz_class num = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole));
    num = num * scale + (frac.empty() ? mpz_class(0) : mpz_class(std::string(frac)));
    out = Rational(num, scale);
    out.canonicalize();
  } else {
    if (!all_digits(s)) bad(text);
    out = Rational(mpz_class(std::string(s)));
  }
  if (negative) out = -out;
  return out;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_text(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_str();
}

QComplex QComplex::inverse() const {
  Rational n = norm2();
  if (sgn(n) == 0) throw Error(ErrorKind::precondition, "division by zero");
  return {re_ / n, -im_ / n};
}

QComplex& QComplex::operator+=(const QComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

QComplex& QComplex::operator-=(const QComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

QComplex& QComplex::operator*=(const QComplex& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

QComplex& QComplex::operator/=(const QComplex& o) { return *this *= o.inverse(); }

std::string to_text(const QComplex& c, bool wrap) {
  if (c.is_real()) return to_text(c.re());
  auto imag_part = [](const Rational& v) -> std::string {
    if (v == 1) return "i";
    if (v == -1) return "-i";
    return to_text(v) + "*i";
  };
  if (c.is_imaginary()) return imag_part(c.im());
  std::string s = to_text(c.re());
  if (sgn(c.im()) < 0) {
    s += " - " + imag_part(-c.im());
  } else {
    s += " + " + imag_part(c.im());
  }
  return wrap ? "(" + s + ")" : s;
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::precondition, "non-finite value");
  Rational r(v);
  r.canonicalize();
  return r;
}

}  // namespace aldyn
