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

#include "aldyn/parse.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "aldyn/error.hpp"

namespace aldyn {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Generators& gens) : text_(text), gens_(gens) {}

  Poly run() {
    Poly value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::parse,
                "polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Poly d = unary();
        if (!d.is_constant() || d.is_zero() || !d.constant_term().is_theta_free()) {
          pos_ = at;
          fail("division is only defined by non-zero constants");
        }
        acc *= Scalar(d.constant_term().constant_term().inverse());
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  int integer_exponent() {
    skip_space();
    bool paren = accept('(');
    bool negative = accept('-');
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    long v = std::stol(std::string(text_.substr(start, pos_ - start)));
    if (v > 1000) fail("exponent too large");
    if (paren && !accept(')')) fail("expected ')'");
    return negative ? -static_cast<int>(v) : static_cast<int>(v);
  }

  Poly power() {
    Poly base = atom();
    if (!accept('^')) return base;
    int k = integer_exponent();
    if (k >= 0) return pow(base, k);
    // Negative powers: invertible monomials only (angle-phase generators).
    if (base.term_count() != 1) fail("negative power of a non-monomial");
    const auto& [e, c] = *base.terms().begin();
    if (!c.is_theta_free()) fail("negative power of theta");
    Exponents inv(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) inv[i] = e[i] * k;
    QComplex ci = c.constant_term().inverse();
    QComplex ck(1);
    for (int j = 0; j < -k; ++j) ck *= ci;
    return Poly::monomial(gens_, inv, Scalar(ck));
  }

  Poly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      return Poly::constant(gens_, Scalar(parse_rational(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_' || text_[pos_] == '\'')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (name == "i") return Poly::constant(gens_, Scalar::i());
      if (name == "theta") return Poly::constant(gens_, Scalar::theta());
      auto idx = gens_->find(name);
      if (!idx) {
        pos_ = start;
        throw Error(ErrorKind::unknown_generator,
                    "polynomial '" + std::string(text_) + "': unknown generator '" + name + "'");
      }
      return Poly::generator(gens_, *idx);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Generators& gens_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const Exponents& e, const GeneratorSet& gens) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += gens.name(i);
    if (e[i] < 0) {
      out += "^(" + std::to_string(e[i]) + ")";
    } else if (e[i] != 1) {
      out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

}  // namespace

Poly parse_poly(std::string_view text, const Generators& gens) { return Parser(text, gens).run(); }

std::string to_text(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono = monomial_text(e, *f.gens());
    bool negative = false;
    std::string coeff;
    if (c.is_simple()) {
      const auto& [p, v] = *c.terms().begin();
      QComplex mag = v;
      if ((v.is_real() && sgn(v.re()) < 0) || (v.is_imaginary() && sgn(v.im()) < 0)) {
        negative = true;
        mag = -v;
      }
      coeff = to_text(Scalar::term(p, mag), true);
    } else {
      coeff = to_text(c, true);
    }
    std::string body;
    if (mono.empty()) {
      body = coeff;
    } else if (coeff == "1") {
      body = mono;
    } else {
      body = coeff + "*" + mono;
    }
    if (first) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " + body : " + " + body;
    }
    first = false;
  }
  return out;
}

std::string to_text(const NumPoly& f, int digits) {
  if (f.terms().empty()) return "0";
  std::ostringstream os;
  os.precision(digits);
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono = monomial_text(e, *f.gens());
    bool real = c.imag() == 0.0;
    bool negative = real && c.real() < 0;
    if (!first) {
      os << (negative ? " - " : " + ");
    } else if (negative) {
      os << "-";
    }
    first = false;
    double mag = negative ? -c.real() : c.real();
    if (real) {
      if (mag != 1.0 || mono.empty()) {
        os << mag;
        if (!mono.empty()) os << "*";
      }
    } else {
      os << "(" << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "*i)";
      if (!mono.empty()) os << "*";
    }
    os << mono;
  }
  return os.str();
}

}  // namespace aldyn
