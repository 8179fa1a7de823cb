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

#include "aldyn/scalar.hpp"

#include <cmath>

#include "aldyn/error.hpp"

namespace aldyn {

Scalar::Scalar(QComplex c) {
  if (!c.is_zero()) terms_.emplace(0, std::move(c));
}

Scalar Scalar::theta(int power) { return term(power, QComplex(1)); }

Scalar Scalar::term(int power, QComplex c) {
  if (power < 0) throw Error(ErrorKind::precondition, "negative theta power");
  Scalar s;
  if (!c.is_zero()) s.terms_.emplace(power, std::move(c));
  return s;
}

bool Scalar::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_one();
}

bool Scalar::is_theta_free() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

bool Scalar::is_simple() const {
  if (terms_.size() != 1) return false;
  const QComplex& c = terms_.begin()->second;
  return c.is_real() || c.is_imaginary();
}

QComplex Scalar::coefficient(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? QComplex() : it->second;
}

Scalar Scalar::shift(int delta) const {
  Scalar out;
  for (const auto& [p, c] : terms_) {
    if (p + delta < 0) throw Error(ErrorKind::precondition, "theta does not divide the value");
    out.terms_.emplace(p + delta, c);
  }
  return out;
}

std::complex<double> Scalar::evaluate(double theta) const {
  std::complex<double> acc = 0;
  for (const auto& [p, c] : terms_) acc += c.to_double() * std::pow(theta, p);
  return acc;
}

void Scalar::add_term(int power, const QComplex& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(power, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (const auto& [p, c] : o.terms_) add_term(p, -c);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar out;
  for (const auto& [pa, ca] : a.terms_) {
    for (const auto& [pb, cb] : b.terms_) out.add_term(pa + pb, ca * cb);
  }
  return out;
}

Scalar operator-(const Scalar& a) {
  Scalar out;
  for (const auto& [p, c] : a.terms_) out.terms_.emplace(p, -c);
  return out;
}

std::string to_text(const Scalar& s, bool wrap) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  // Highest theta power last reads naturally: "1 + 2*theta".
  for (const auto& [p, c] : s.terms()) {
    std::string coeff = to_text(c, true);
    bool negative = false;
    if (c.is_real() && sgn(c.re()) < 0) {
      negative = true;
      coeff = to_text(QComplex(-c.re()), true);
    } else if (c.is_imaginary() && sgn(c.im()) < 0) {
      negative = true;
      coeff = to_text(QComplex(0, -c.im()), true);
    }
    std::string body;
    if (p == 0) {
      body = coeff;
    } else {
      std::string th = p == 1 ? "theta" : "theta^" + std::to_string(p);
      body = (coeff == "1") ? th : coeff + "*" + th;
    }
    if (first) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " + body : " + " + body;
    }
    first = false;
  }
  if (wrap && s.terms().size() > 1) return "(" + out + ")";
  return out;
}

}  // namespace aldyn
