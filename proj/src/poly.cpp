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

#include "aldyn/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "aldyn/error.hpp"

namespace aldyn {

// --- generators -----------------------------------------------------------

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::plain: return "plain";
    case GeneratorKind::position: return "position";
    case GeneratorKind::momentum: return "momentum";
    case GeneratorKind::angle_phase: return "angle-phase";
  }
  return "plain";
}

GeneratorKind parse_generator_kind(std::string_view text) {
  if (text == "plain") return GeneratorKind::plain;
  if (text == "position") return GeneratorKind::position;
  if (text == "momentum") return GeneratorKind::momentum;
  if (text == "angle-phase") return GeneratorKind::angle_phase;
  throw Error(ErrorKind::parse, "unknown generator kind '" + std::string(text) + "'");
}

GeneratorKind infer_generator_kind(std::string_view name) {
  if (name.empty()) return GeneratorKind::plain;
  auto suffix = name.substr(1);
  bool digits = std::all_of(suffix.begin(), suffix.end(),
                            [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (!digits) return GeneratorKind::plain;
  if (name.front() == 'q') return GeneratorKind::position;
  if (name.front() == 'p') return GeneratorKind::momentum;
  return GeneratorKind::plain;
}

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s.front())) && s.front() != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

}  // namespace

GeneratorSet::GeneratorSet(std::vector<std::string> names, std::vector<GeneratorKind> kinds)
    : names_(std::move(names)), kinds_(std::move(kinds)) {
  if (names_.size() != kinds_.size()) {
    throw Error(ErrorKind::precondition, "generator names and kinds differ in length");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!valid_identifier(n)) throw Error(ErrorKind::precondition, "invalid generator name '" + n + "'");
    if (n == "i" || n == "theta") {
      throw Error(ErrorKind::precondition, "'" + n + "' is reserved and cannot name a generator");
    }
    if (!seen.insert(n).second) throw Error(ErrorKind::precondition, "duplicate generator '" + n + "'");
  }
}

Generators GeneratorSet::make(std::vector<std::string> names) {
  std::vector<GeneratorKind> kinds;
  kinds.reserve(names.size());
  for (const auto& n : names) kinds.push_back(infer_generator_kind(n));
  return std::make_shared<const GeneratorSet>(std::move(names), std::move(kinds));
}

Generators GeneratorSet::make(std::vector<std::string> names, std::vector<GeneratorKind> kinds) {
  return std::make_shared<const GeneratorSet>(std::move(names), std::move(kinds));
}

Generators GeneratorSet::canonical(int pairs) {
  if (pairs < 1) throw Error(ErrorKind::precondition, "at least one canonical pair required");
  if (pairs == 1) return make({"q", "p"});
  std::vector<std::string> names;
  for (int a = 1; a <= pairs; ++a) {
    names.push_back("q" + std::to_string(a));
    names.push_back("p" + std::to_string(a));
  }
  return make(std::move(names));
}

std::optional<std::size_t> GeneratorSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t GeneratorSet::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorKind::unknown_generator, "unknown generator '" + std::string(name) + "'");
}

std::optional<std::size_t> GeneratorSet::conjugate(std::size_t i) const {
  GeneratorKind k = kinds_.at(i);
  if (k != GeneratorKind::position && k != GeneratorKind::momentum) return std::nullopt;
  std::string suffix = names_[i].substr(1);
  char want = k == GeneratorKind::position ? 'p' : 'q';
  GeneratorKind want_kind = k == GeneratorKind::position ? GeneratorKind::momentum : GeneratorKind::position;
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (kinds_[j] == want_kind && names_[j].size() == names_[i].size() && names_[j][0] == want &&
        names_[j].substr(1) == suffix) {
      return j;
    }
  }
  return std::nullopt;
}

Generators with_generator(const Generators& gens, std::string name) {
  auto names = gens->names();
  auto kinds = gens->kinds();
  names.push_back(std::move(name));
  kinds.push_back(GeneratorKind::plain);
  return GeneratorSet::make(std::move(names), std::move(kinds));
}

bool same_generators(const Generators& a, const Generators& b) {
  return a == b || (a && b && *a == *b);
}

// --- ordering -------------------------------------------------------------

int total_degree(const Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

bool GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  int da = total_degree(a);
  int db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

// --- Poly -------------------------------------------------------------------

Poly::Poly(Generators gens) : gens_(std::move(gens)) {
  if (!gens_) throw Error(ErrorKind::precondition, "polynomial without generator set");
}

Poly Poly::constant(Generators gens, Scalar c) {
  Poly p(std::move(gens));
  p.add_term(Exponents(p.gens_->size(), 0), c);
  return p;
}

Poly Poly::monomial(Generators gens, Exponents exps, Scalar c) {
  Poly p(std::move(gens));
  p.add_term(exps, c);
  return p;
}

Poly Poly::generator(Generators gens, std::string_view name, int power) {
  std::size_t i = gens->index(name);
  return generator(std::move(gens), i, power);
}

Poly Poly::generator(Generators gens, std::size_t index, int power) {
  Exponents e(gens->size(), 0);
  e.at(index) = power;
  return monomial(std::move(gens), std::move(e));
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                      [](int x) { return x == 0; }));
}

int Poly::degree() const {
  int d = 0;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    int td = total_degree(e);
    if (first || td > d) d = td;
    first = false;
  }
  return d;
}

int Poly::degree_in(std::size_t index) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(index));
  return d;
}

bool Poly::is_theta_free() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.is_theta_free(); });
}

Scalar Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar() : it->second;
}

Scalar Poly::constant_term() const { return coefficient(Exponents(gens_->size(), 0)); }

void Poly::add_term(const Exponents& e, const Scalar& c) {
  if (e.size() != gens_->size()) {
    throw Error(ErrorKind::generator_mismatch, "exponent vector length does not match generators");
  }
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 && gens_->kind(i) != GeneratorKind::angle_phase) {
      throw Error(ErrorKind::precondition,
                  "negative exponent on non angle-phase generator '" + gens_->name(i) + "'");
    }
  }
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void require_same_generators(const Poly& a, const Poly& b) {
  if (!same_generators(a.gens(), b.gens())) {
    throw Error(ErrorKind::generator_mismatch, "polynomials over different generator sets");
  }
}

Poly& Poly::operator+=(const Poly& o) {
  require_same_generators(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_generators(*this, o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = it->second * c;
    if (it->second.is_zero()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

Poly operator-(const Poly& a) {
  Poly out(a.gens_);
  for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_generators(a, b);
  Poly out(a.gens_);
  Exponents e(a.gens_->size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  return same_generators(a.gens_, b.gens_) && a.terms_ == b.terms_;
}

Poly pow(const Poly& f, int n) {
  if (n < 0) throw Error(ErrorKind::precondition, "negative power of a polynomial");
  Poly result = Poly::constant(f.gens(), Scalar(1));
  Poly base = f;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Poly partial_derivative(const Poly& f, std::string_view gen) {
  return partial_derivative(f, f.gens()->index(gen));
}

Poly partial_derivative(const Poly& f, std::size_t index) {
  if (index >= f.gens()->size()) throw Error(ErrorKind::unknown_generator, "generator index out of range");
  if (f.gens()->kind(index) != GeneratorKind::angle_phase) return formal_derivative(f, index);
  Poly out(f.gens());
  for (const auto& [e, c] : f.terms()) {
    if (e[index] == 0) continue;
    out.add_term(e, c * Scalar(QComplex(0, e[index])));
  }
  return out;
}

Poly formal_derivative(const Poly& f, std::size_t index) {
  if (index >= f.gens()->size()) throw Error(ErrorKind::unknown_generator, "generator index out of range");
  Poly out(f.gens());
  for (const auto& [e, c] : f.terms()) {
    int k = e[index];
    if (k == 0) continue;
    Exponents d = e;
    d[index] -= 1;
    out.add_term(d, c * Scalar(k));
  }
  return out;
}

Poly theta_limit(const Poly& f) { return theta_coefficient(f, 0); }

Poly theta_coefficient(const Poly& f, int power) {
  Poly out(f.gens());
  for (const auto& [e, c] : f.terms()) out.add_term(e, Scalar(c.coefficient(power)));
  return out;
}

Poly shift_theta(const Poly& f, int delta) {
  Poly out(f.gens());
  for (const auto& [e, c] : f.terms()) out.add_term(e, c.shift(delta));
  return out;
}

Poly extend(const Poly& f, const Generators& target) {
  const auto& src = *f.gens();
  if (target->size() < src.size()) throw Error(ErrorKind::generator_mismatch, "target generator set is smaller");
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src.name(i) != target->name(i) || src.kind(i) != target->kind(i)) {
      throw Error(ErrorKind::generator_mismatch, "target generator set does not extend the source");
    }
  }
  Poly out(target);
  for (const auto& [e, c] : f.terms()) {
    Exponents x = e;
    x.resize(target->size(), 0);
    out.add_term(x, c);
  }
  return out;
}

Poly substitute(const Poly& f, std::span<const Poly> images, const Generators& target) {
  if (images.size() != f.gens()->size()) {
    throw Error(ErrorKind::generator_mismatch, "one image per generator required");
  }
  for (const auto& im : images) {
    if (!same_generators(im.gens(), target)) {
      throw Error(ErrorKind::generator_mismatch, "substitution images over a different generator set");
    }
  }
  // Cache powers per generator; negative powers only for invertible monomials.
  std::vector<std::map<int, Poly>> cache(images.size());
  auto power_of = [&](std::size_t a, int k) -> const Poly& {
    auto it = cache[a].find(k);
    if (it != cache[a].end()) return it->second;
    Poly value(target);
    if (k >= 0) {
      value = pow(images[a], k);
    } else {
      const Poly& im = images[a];
      if (im.term_count() != 1 || !im.terms().begin()->second.is_theta_free()) {
        throw Error(ErrorKind::precondition, "cannot invert a non-monomial image");
      }
      const auto& [e, c] = *im.terms().begin();
      Exponents inv(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) inv[i] = -e[i] * (-k);
      QComplex cinv = c.constant_term().inverse();
      QComplex ck(1);
      for (int j = 0; j < -k; ++j) ck *= cinv;
      value = Poly::monomial(target, inv, Scalar(ck));
    }
    return cache[a].emplace(k, std::move(value)).first->second;
  };
  Poly out(target);
  for (const auto& [e, c] : f.terms()) {
    Poly term = Poly::constant(target, c);
    for (std::size_t a = 0; a < e.size(); ++a) {
      if (e[a] != 0) term = term * power_of(a, e[a]);
    }
    out += term;
  }
  return out;
}

namespace {

void enumerate_degree(std::size_t vars, int degree, std::size_t pos, Exponents& cur,
                      std::vector<Exponents>& out) {
  if (pos + 1 == vars) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (int k = degree; k >= 0; --k) {
    cur[pos] = k;
    enumerate_degree(vars, degree - k, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Exponents> monomials_of_degree(std::size_t vars, int degree) {
  std::vector<Exponents> out;
  if (degree < 0) return out;
  if (vars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponents cur(vars, 0);
  enumerate_degree(vars, degree, 0, cur, out);
  std::sort(out.begin(), out.end(), GradedLex{});
  return out;
}

std::vector<Exponents> monomials_up_to(std::size_t vars, int cap) {
  std::vector<Exponents> out;
  for (int d = 0; d <= cap; ++d) {
    auto part = monomials_of_degree(vars, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// --- NumPoly ----------------------------------------------------------------

NumPoly NumPoly::from(const Poly& f, double theta) {
  NumPoly out(f.gens());
  for (const auto& [e, c] : f.terms()) out.add_term(e, c.evaluate(theta));
  return out;
}

std::complex<double> NumPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? std::complex<double>() : it->second;
}

void NumPoly::add_term(const Exponents& e, std::complex<double> c) {
  if (e.size() != gens_->size()) {
    throw Error(ErrorKind::generator_mismatch, "exponent vector length does not match generators");
  }
  if (c == std::complex<double>()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == std::complex<double>()) terms_.erase(it);
  }
}

NumPoly& NumPoly::operator+=(const NumPoly& o) {
  if (!same_generators(gens_, o.gens_)) throw Error(ErrorKind::generator_mismatch, "different generator sets");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

NumPoly operator*(const NumPoly& a, const NumPoly& b) {
  if (!same_generators(a.gens_, b.gens_)) throw Error(ErrorKind::generator_mismatch, "different generator sets");
  NumPoly out(a.gens_);
  Exponents e(a.gens_->size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

NumPoly operator*(std::complex<double> c, const NumPoly& a) {
  NumPoly out(a.gens_);
  for (const auto& [e, v] : a.terms_) out.add_term(e, c * v);
  return out;
}

std::complex<double> NumPoly::evaluate(std::span<const std::complex<double>> point) const {
  if (point.size() != gens_->size()) throw Error(ErrorKind::size_mismatch, "evaluation point has wrong size");
  std::complex<double> acc = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> m = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) m *= std::pow(point[i], e[i]);
    }
    acc += m;
  }
  return acc;
}

NumPoly NumPoly::pruned(double tol) const {
  NumPoly out(gens_);
  for (const auto& [e, c] : terms_) {
    if (std::abs(c) >= tol) out.terms_.emplace(e, c);
  }
  return out;
}

double max_abs_difference(const NumPoly& a, const NumPoly& b) {
  double worst = 0;
  for (const auto& [e, c] : a.terms()) worst = std::max(worst, std::abs(c - b.coefficient(e)));
  for (const auto& [e, c] : b.terms()) worst = std::max(worst, std::abs(c - a.coefficient(e)));
  return worst;
}

NumPoly substitute(const NumPoly& f, std::span<const NumPoly> images, const Generators& target) {
  if (images.size() != f.gens()->size()) {
    throw Error(ErrorKind::generator_mismatch, "one image per generator required");
  }
  std::vector<std::map<int, NumPoly>> cache(images.size());
  auto power_of = [&](std::size_t a, int k) -> const NumPoly& {
    if (k < 0) throw Error(ErrorKind::precondition, "negative exponent in numerical substitution");
    auto it = cache[a].find(k);
    if (it != cache[a].end()) return it->second;
    NumPoly value(target);
    value.add_term(Exponents(target->size(), 0), 1.0);
    for (int j = 0; j < k; ++j) value = value * images[a];
    return cache[a].emplace(k, std::move(value)).first->second;
  };
  NumPoly out(target);
  for (const auto& [e, c] : f.terms()) {
    NumPoly term(target);
    term.add_term(Exponents(target->size(), 0), c);
    for (std::size_t a = 0; a < e.size(); ++a) {
      if (e[a] != 0) term = term * power_of(a, e[a]);
    }
    out += term;
  }
  return out;
}

std::complex<double> evaluate(const Poly& f, std::span<const std::complex<double>> point, double theta) {
  return NumPoly::from(f, theta).evaluate(point);
}

}  // namespace aldyn
