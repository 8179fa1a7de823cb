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

#include "aldyn/reduction.hpp"

#include "aldyn/error.hpp"

namespace aldyn {

namespace {

void require_gens(const Generators& gens, const PolyDerivation& d) {
  if (!same_generators(gens, d.gens())) {
    throw Error(ErrorKind::generator_mismatch, "vector field over other generators");
  }
}

Poly combine(const Generators& gens, const std::vector<Exponents>& monos, const Vec& coeffs, std::size_t offset) {
  Poly p(gens);
  for (std::size_t u = 0; u < monos.size(); ++u) {
    if (!coeffs[offset + u].is_zero()) p.add_term(monos[u], Scalar(coeffs[offset + u]));
  }
  return p;
}

// Exact value at a rational point; empty when theta survives.
std::optional<QComplex> value_at(const Poly& f, const std::vector<Rational>& point) {
  std::vector<Poly> images;
  for (const auto& x : point) images.push_back(Poly::constant(f.gens(), Scalar(QComplex(x))));
  Scalar s = substitute(f, images, f.gens()).constant_term();
  if (!s.is_theta_free()) return std::nullopt;
  return s.constant_term();
}

std::optional<Vec> field_at(const PolyDerivation& d, const std::vector<Rational>& point) {
  Vec v;
  for (const auto& img : d.images()) {
    auto x = value_at(img, point);
    if (!x) return std::nullopt;
    v.push_back(*x);
  }
  return v;
}

}  // namespace

Distribution::Distribution(Generators gens, std::vector<PolyDerivation> fields)
    : gens_(std::move(gens)), fields_(std::move(fields)) {
  for (const auto& y : fields_) require_gens(gens_, y);
}

bool Distribution::involutive(int cap) const {
  for (std::size_t i = 0; i < fields_.size(); ++i)
    for (std::size_t j = i + 1; j < fields_.size(); ++j)
      if (!express_in(commutator(fields_[i], fields_[j]), *this, cap)) return false;
  return true;
}

std::optional<std::vector<Poly>> express_in(const PolyDerivation& x, const Distribution& d, int cap) {
  require_gens(d.gens(), x);
  if (x.is_zero()) return std::vector<Poly>(d.rank(), Poly(d.gens()));
  if (d.rank() == 0) return std::nullopt;
  auto monos = monomials_up_to(d.gens()->size(), cap);
  std::vector<std::vector<Poly>> columns;
  for (const auto& y : d.fields()) {
    for (const auto& m : monos) columns.push_back((Poly::monomial(d.gens(), m) * y).images());
  }
  auto sol = solve_poly_combination(columns, x.images());
  if (!sol.consistent) return std::nullopt;
  std::vector<Poly> h;
  for (std::size_t k = 0; k < d.rank(); ++k) h.push_back(combine(d.gens(), monos, sol.particular, k * monos.size()));
  return h;
}

std::vector<Poly> invariant_subalgebra(const Distribution& d, int cap) {
  if (cap < 0) throw Error(ErrorKind::precondition, "degree cap must be non-negative");
  auto monos = monomials_up_to(d.gens()->size(), cap);
  std::vector<std::vector<Poly>> columns;
  for (const auto& m : monos) {
    std::vector<Poly> col;
    Poly mono = Poly::monomial(d.gens(), m);
    for (const auto& y : d.fields()) col.push_back(y(mono));
    columns.push_back(std::move(col));
  }
  std::vector<Poly> zero(d.rank(), Poly(d.gens()));
  std::vector<Vec> kernel;
  if (d.rank() == 0) {
    for (std::size_t u = 0; u < monos.size(); ++u) {
      Vec v(monos.size());
      v[u] = QComplex(1);
      kernel.push_back(std::move(v));
    }
  } else {
    kernel = solve_poly_combination(columns, zero).nullspace;
  }
  std::vector<Poly> out;
  for (const auto& v : canonical_basis(kernel)) {
    Poly f = combine(d.gens(), monos, v, 0);
    for (const auto& y : d.fields()) {
      if (!y(f).is_zero()) throw Error(ErrorKind::internal, "invariant basis element is not annihilated");
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::member: return "member";
    case Verdict::non_member: return "non-member";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<std::vector<Rational>> default_sample_points(std::size_t dim, std::size_t count) {
  std::vector<std::vector<Rational>> pts;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Rational> p;
    for (std::size_t a = 0; a < dim; ++a) p.emplace_back(static_cast<long>((k * 7 + a * 3 + 1) % 11) - 5);
    pts.push_back(std::move(p));
  }
  return pts;
}

NormalizerResult normalizer_check(const PolyDerivation& delta, const Distribution& d, int cap,
                                  const std::vector<std::vector<Rational>>& points) {
  require_gens(d.gens(), delta);
  const auto& pts = points.empty() ? default_sample_points(d.gens()->size()) : points;
  NormalizerResult out;
  for (std::size_t j = 0; j < d.rank(); ++j) {
    PolyDerivation c = commutator(delta, d.fields()[j]);
    if (auto h = express_in(c, d, cap)) {
      out.coefficients.push_back(std::move(*h));
      continue;
    }
    out.field = j;
    out.bracket = c;
    out.coefficients.clear();
    for (const auto& pt : pts) {
      if (pt.size() != d.gens()->size()) throw Error(ErrorKind::size_mismatch, "sample point has wrong dimension");
      std::vector<Vec> span;
      bool exact = true;
      for (const auto& y : d.fields()) {
        auto v = field_at(y, pt);
        if (!v) {
          exact = false;
          break;
        }
        span.push_back(std::move(*v));
      }
      auto cv = field_at(c, pt);
      if (!exact || !cv) continue;
      if (!in_span(span, *cv)) {
        out.verdict = Verdict::non_member;
        out.certificate_point = pt;
        return out;
      }
    }
    out.verdict = Verdict::inconclusive;
    return out;
  }
  return out;
}

FRelatedResult f_related_reduce(const PolyDerivation& delta, const std::vector<Poly>& f, int cap) {
  const auto& gens = delta.gens();
  for (const auto& fi : f) {
    if (!same_generators(gens, fi.gens())) throw Error(ErrorKind::generator_mismatch, "map component over other generators");
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < f.size(); ++i) names.push_back("y" + std::to_string(i + 1));
  auto target = GeneratorSet::make(names);
  auto monos = monomials_up_to(f.size(), cap);
  std::vector<std::vector<Poly>> columns;
  for (const auto& m : monos) {
    Poly pulled = Poly::constant(gens, Scalar(1));
    for (std::size_t i = 0; i < m.size(); ++i) pulled = pulled * pow(f[i], m[i]);
    columns.push_back({pulled});
  }
  FRelatedResult out;
  std::vector<Poly> images;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto sol = solve_poly_combination(columns, {delta(f[i])});
    if (!sol.consistent) {
      out.failed_component = i;
      return out;
    }
    images.push_back(combine(target, monos, sol.particular, 0));
  }
  out.reduced = PolyDerivation(target, std::move(images));
  return out;
}

ConnectionP::ConnectionP(Distribution d, std::vector<std::vector<Poly>> forms)
    : d_(std::move(d)), forms_(std::move(forms)) {
  const std::size_t n = d_.gens()->size();
  if (forms_.size() != d_.rank()) throw Error(ErrorKind::size_mismatch, "one 1-form per field is required");
  for (const auto& a : forms_) {
    if (a.size() != n) throw Error(ErrorKind::size_mismatch, "1-form has wrong number of components");
    for (const auto& c : a) {
      if (!same_generators(c.gens(), d_.gens())) throw Error(ErrorKind::generator_mismatch, "1-form over other generators");
    }
  }
  for (std::size_t j = 0; j < d_.rank(); ++j) {
    for (std::size_t k = 0; k < d_.rank(); ++k) {
      Poly expected = Poly::constant(d_.gens(), Scalar(j == k ? 1 : 0));
      if (!(contract(d_.fields()[j], k) == expected)) {
        throw Error(ErrorKind::precondition, "connection violates i_{Y_j} alpha^k = delta^k_j");
      }
    }
  }
}

Poly ConnectionP::contract(const PolyDerivation& x, std::size_t j) const {
  require_gens(d_.gens(), x);
  Poly out(d_.gens());
  for (std::size_t a = 0; a < x.images().size(); ++a) out += x.image(a) * forms_.at(j)[a];
  return out;
}

PolyDerivation ConnectionP::apply(const PolyDerivation& x) const {
  PolyDerivation out = PolyDerivation::zero(d_.gens());
  for (std::size_t j = 0; j < d_.rank(); ++j) out += contract(x, j) * d_.fields()[j];
  return out;
}

std::optional<ConnectionP> find_connection(const Distribution& d, int cap) {
  const std::size_t n = d.gens()->size();
  auto monos = monomials_up_to(n, cap);
  std::vector<std::vector<Poly>> columns;
  for (std::size_t a = 0; a < n; ++a) {
    for (const auto& m : monos) {
      Poly mono = Poly::monomial(d.gens(), m);
      std::vector<Poly> col;
      for (const auto& y : d.fields()) col.push_back(mono * y.image(a));
      columns.push_back(std::move(col));
    }
  }
  std::vector<std::vector<Poly>> forms;
  for (std::size_t k = 0; k < d.rank(); ++k) {
    std::vector<Poly> rhs;
    for (std::size_t j = 0; j < d.rank(); ++j) rhs.push_back(Poly::constant(d.gens(), Scalar(j == k ? 1 : 0)));
    auto sol = solve_poly_combination(columns, rhs);
    if (!sol.consistent) return std::nullopt;
    std::vector<Poly> alpha;
    for (std::size_t a = 0; a < n; ++a) alpha.push_back(combine(d.gens(), monos, sol.particular, a * monos.size()));
    forms.push_back(std::move(alpha));
  }
  return ConnectionP(d, std::move(forms));
}

Split split_dynamics(const PolyDerivation& delta, const ConnectionP& p, int cap) {
  auto n = normalizer_check(delta, p.distribution(), cap);
  if (n.verdict != Verdict::member) {
    throw Error(ErrorKind::precondition, std::string("dynamics does not normalize the distribution (") +
                                             std::string(to_string(n.verdict)) + ")");
  }
  Split s{p(delta), delta - p(delta)};
  s.commuting = commutator(s.along, s.transverse).is_zero();
  s.constant_of_motion = s.transverse.is_zero();
  return s;
}

SubalgebraInvariance invariance_of_subalgebra(const PolyDerivation& delta, const std::vector<Poly>& basis,
                                              const Distribution& d) {
  require_gens(d.gens(), delta);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Poly img = delta(basis[i]);
    for (const auto& y : d.fields()) {
      if (!y(img).is_zero()) return {false, i};
    }
  }
  return {};
}

}  // namespace aldyn
