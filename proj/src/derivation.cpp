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

#include "aldyn/derivation.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "aldyn/error.hpp"

namespace aldyn {

PolyDerivation::PolyDerivation(Generators gens, std::vector<Poly> images)
    : gens_(std::move(gens)), images_(std::move(images)) {
  if (images_.size() != gens_->size()) {
    throw Error(ErrorKind::generator_mismatch, "derivation needs one image per generator");
  }
  for (const auto& im : images_) {
    if (!same_generators(im.gens(), gens_)) {
      throw Error(ErrorKind::generator_mismatch, "derivation image over a different generator set");
    }
  }
}

PolyDerivation PolyDerivation::zero(Generators gens) {
  std::vector<Poly> images(gens->size(), Poly(gens));
  return PolyDerivation(gens, std::move(images));
}

PolyDerivation PolyDerivation::from_images(Generators gens, const std::map<std::string, Poly>& images) {
  std::vector<Poly> out(gens->size(), Poly(gens));
  for (const auto& [name, poly] : images) out[gens->index(name)] = poly;
  return PolyDerivation(gens, std::move(out));
}

PolyDerivation PolyDerivation::coordinate(Generators gens, std::string_view name) {
  std::vector<Poly> out(gens->size(), Poly(gens));
  out[gens->index(name)] = Poly::constant(gens, Scalar(1));
  return PolyDerivation(gens, std::move(out));
}

bool PolyDerivation::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [](const Poly& p) { return p.is_zero(); });
}

Poly PolyDerivation::apply(const Poly& f) const {
  if (!same_generators(f.gens(), gens_)) {
    throw Error(ErrorKind::generator_mismatch, "derivation applied to a polynomial over other generators");
  }
  Poly out(gens_);
  for (std::size_t a = 0; a < images_.size(); ++a) {
    if (images_[a].is_zero()) continue;
    Poly d = formal_derivative(f, a);
    if (!d.is_zero()) out += images_[a] * d;
  }
  return out;
}

PolyDerivation& PolyDerivation::operator+=(const PolyDerivation& o) {
  if (!same_generators(gens_, o.gens_)) throw Error(ErrorKind::generator_mismatch, "derivations over different generators");
  for (std::size_t a = 0; a < images_.size(); ++a) images_[a] += o.images_[a];
  return *this;
}

PolyDerivation& PolyDerivation::operator-=(const PolyDerivation& o) {
  if (!same_generators(gens_, o.gens_)) throw Error(ErrorKind::generator_mismatch, "derivations over different generators");
  for (std::size_t a = 0; a < images_.size(); ++a) images_[a] -= o.images_[a];
  return *this;
}

PolyDerivation operator*(const Poly& h, const PolyDerivation& d) {
  std::vector<Poly> out;
  out.reserve(d.images_.size());
  for (const auto& im : d.images_) out.push_back(h * im);
  return PolyDerivation(d.gens_, std::move(out));
}

bool operator==(const PolyDerivation& a, const PolyDerivation& b) {
  return same_generators(a.gens_, b.gens_) && a.images_ == b.images_;
}

PolyDerivation commutator(const PolyDerivation& d1, const PolyDerivation& d2) {
  if (!same_generators(d1.gens(), d2.gens())) {
    throw Error(ErrorKind::generator_mismatch, "derivations over different generators");
  }
  std::vector<Poly> out;
  out.reserve(d1.gens()->size());
  for (std::size_t a = 0; a < d1.gens()->size(); ++a) {
    out.push_back(d1.apply(d2.image(a)) - d2.apply(d1.image(a)));
  }
  return PolyDerivation(d1.gens(), std::move(out));
}

std::optional<int> nilpotency_order(const PolyDerivation& d, int cutoff) {
  if (cutoff < 1) throw Error(ErrorKind::precondition, "nilpotency cutoff must be at least 1");
  std::vector<Poly> cur = d.images();
  for (int k = 1; k <= cutoff; ++k) {
    if (std::all_of(cur.begin(), cur.end(), [](const Poly& p) { return p.is_zero(); })) return k;
    for (auto& p : cur) p = d.apply(p);
  }
  return std::nullopt;
}

namespace {

void require_truncating(const PolyDerivation& d, int cutoff, int& order) {
  for (std::size_t a = 0; a < d.images().size(); ++a) {
    for (const auto& [e, c] : d.image(a).terms()) {
      bool ok = total_degree(e) <= 1 && std::all_of(e.begin(), e.end(), [](int x) { return x >= 0; });
      if (!ok) {
        throw Error(ErrorKind::precondition,
                    "image of '" + d.gens()->name(a) +
                        "' has degree > 1; the exponential series need not truncate (use a truncated flow)");
      }
    }
  }
  auto k = nilpotency_order(d, cutoff);
  if (!k) {
    throw Error(ErrorKind::precondition,
                "derivation is not nilpotent on generators within cutoff " + std::to_string(cutoff));
  }
  order = *k;
}

Poly series(const PolyDerivation& d, const Poly& f, const Generators& ext, int max_order, bool must_vanish) {
  std::size_t t_index = ext->size() - 1;
  Poly out(ext);
  Poly cur = f;
  Rational factorial = 1;
  for (int k = 0; k <= max_order; ++k) {
    if (cur.is_zero()) return out;
    if (k > 0) factorial *= k;
    out += Poly::generator(ext, t_index, k) * extend(cur, ext) * Scalar(Rational(1) / factorial);
    cur = d.apply(cur);
  }
  if (must_vanish && !cur.is_zero()) {
    throw Error(ErrorKind::internal, "exponential series failed to truncate");
  }
  return out;
}

Generators time_extended(const Generators& gens) {
  if (gens->find("t")) {
    throw Error(ErrorKind::precondition, "generator 't' is reserved for the flow time");
  }
  return with_generator(gens, "t");
}

}  // namespace

Poly flow_nilpotent(const PolyDerivation& d, const Poly& f, int cutoff) {
  if (!same_generators(f.gens(), d.gens())) throw Error(ErrorKind::generator_mismatch, "flow of a foreign polynomial");
  int order = 0;
  require_truncating(d, cutoff, order);
  for (const auto& [e, c] : f.terms()) {
    if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; })) {
      throw Error(ErrorKind::precondition, "nilpotent flow of a Laurent polynomial");
    }
  }
  // delta^m kills a degree-D monomial once m > D * (order - 1).
  int bound = std::max(1, f.degree()) * order + 1;
  return series(d, f, time_extended(d.gens()), bound, true);
}

FlowResult flow_nilpotent(const PolyDerivation& d, int cutoff) {
  FlowResult out;
  out.gens = time_extended(d.gens());
  std::size_t t_index = out.gens->size() - 1;
  for (std::size_t a = 0; a < d.gens()->size(); ++a) {
    Poly img = flow_nilpotent(d, Poly::generator(d.gens(), a), cutoff);
    out.truncation_order = std::max(out.truncation_order, img.degree_in(t_index));
    // Re-home onto the shared extended generator set.
    Poly moved(out.gens);
    for (const auto& [e, c] : img.terms()) moved.add_term(e, c);
    out.images.push_back(std::move(moved));
  }
  return out;
}

Poly flow_truncated(const PolyDerivation& d, const Poly& f, int order) {
  if (order < 0) throw Error(ErrorKind::precondition, "negative truncation order");
  if (!same_generators(f.gens(), d.gens())) throw Error(ErrorKind::generator_mismatch, "flow of a foreign polynomial");
  return series(d, f, time_extended(d.gens()), order, false);
}

Eigen::MatrixXcd linear_part(const PolyDerivation& d) {
  std::size_t n = d.gens()->size();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (const auto& [e, s] : d.image(a).terms()) {
      bool linear = total_degree(e) == 1 && std::all_of(e.begin(), e.end(), [](int x) { return x >= 0; });
      if (!linear || !s.is_theta_free()) {
        throw Error(ErrorKind::precondition,
                    "image of '" + d.gens()->name(a) + "' is not homogeneous linear with constant coefficients");
      }
      auto b = static_cast<Eigen::Index>(std::find(e.begin(), e.end(), 1) - e.begin());
      c(static_cast<Eigen::Index>(a), b) = s.constant_term().to_double();
    }
  }
  return c;
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::size_mismatch, "matrix exponential of a non-square matrix");
  if (m.size() == 0) return m;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() == Eigen::Success) {
    const Eigen::MatrixXcd& v = es.eigenvectors();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
    const auto& sv = svd.singularValues();
    double smin = sv(sv.size() - 1);
    if (smin > 0 && sv(0) / smin < 1e6) {
      Eigen::MatrixXcd vinv = v.inverse();
      double scale = std::max(1.0, m.norm());
      Eigen::MatrixXcd recon = v * es.eigenvalues().asDiagonal() * vinv;
      if ((recon - m).norm() <= tol * scale) {
        Eigen::VectorXcd ex = es.eigenvalues().array().exp();
        return v * ex.asDiagonal() * vinv;
      }
    }
  }
  return m.exp();
}

NumPoly flow_linear(const PolyDerivation& d, std::complex<double> t, const NumPoly& f) {
  if (!same_generators(f.gens(), d.gens())) throw Error(ErrorKind::generator_mismatch, "flow of a foreign polynomial");
  Eigen::MatrixXcd e = expm(t * linear_part(d));
  std::size_t n = d.gens()->size();
  std::vector<NumPoly> images;
  images.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    NumPoly img(d.gens());
    for (std::size_t b = 0; b < n; ++b) {
      Exponents x(n, 0);
      x[b] = 1;
      img.add_term(x, e(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
    }
    images.push_back(std::move(img));
  }
  return substitute(f, images, d.gens());
}

NumPoly flow_linear(const PolyDerivation& d, std::complex<double> t, const Poly& f) {
  if (!f.is_theta_free()) throw Error(ErrorKind::precondition, "numerical flow of a theta-dependent polynomial");
  return flow_linear(d, t, NumPoly::from(f));
}

std::vector<std::complex<double>> flow_action_angle(const std::vector<double>& action,
                                                    const std::vector<double>& angle, double t) {
  if (action.size() != angle.size()) throw Error(ErrorKind::size_mismatch, "action and angle counts differ");
  std::vector<std::complex<double>> out;
  out.reserve(action.size());
  for (std::size_t a = 0; a < action.size(); ++a) {
    if (!std::isfinite(action[a]) || !std::isfinite(angle[a]) || !std::isfinite(t)) {
      throw Error(ErrorKind::precondition, "non-finite action-angle input");
    }
    out.push_back(std::polar(1.0, t * action[a] + angle[a]));
  }
  return out;
}

PolyDerivation action_angle_derivation(int n) {
  if (n < 1) throw Error(ErrorKind::precondition, "at least one action-angle pair required");
  std::vector<std::string> names;
  std::vector<GeneratorKind> kinds;
  for (int a = 1; a <= n; ++a) {
    names.push_back(n == 1 ? "u" : "u" + std::to_string(a));
    kinds.push_back(GeneratorKind::angle_phase);
  }
  for (int a = 1; a <= n; ++a) {
    names.push_back(n == 1 ? "I" : "I" + std::to_string(a));
    kinds.push_back(GeneratorKind::plain);
  }
  Generators gens = GeneratorSet::make(std::move(names), std::move(kinds));
  std::vector<Poly> images(gens->size(), Poly(gens));
  for (int a = 0; a < n; ++a) {
    images[a] = Poly::generator(gens, static_cast<std::size_t>(a)) *
                Poly::generator(gens, static_cast<std::size_t>(n + a)) * Scalar::i();
  }
  return PolyDerivation(gens, std::move(images));
}

std::vector<std::complex<double>> flow_action_angle_series(const std::vector<double>& action,
                                                           const std::vector<double>& angle, double t,
                                                           int terms) {
  if (action.size() != angle.size()) throw Error(ErrorKind::size_mismatch, "action and angle counts differ");
  if (action.empty()) return {};
  int n = static_cast<int>(action.size());
  PolyDerivation d = action_angle_derivation(n);
  std::vector<std::complex<double>> point;
  for (int a = 0; a < n; ++a) point.push_back(std::polar(1.0, angle[a]));
  for (int a = 0; a < n; ++a) point.emplace_back(action[a], 0.0);
  std::vector<std::complex<double>> out;
  for (int a = 0; a < n; ++a) {
    Poly cur = Poly::generator(d.gens(), static_cast<std::size_t>(a));
    std::complex<double> sum = 0;
    double weight = 1;  // t^k / k!
    for (int k = 0; k < terms; ++k) {
      sum += weight * evaluate(cur, point);
      cur = d.apply(cur);
      weight *= t / (k + 1);
    }
    out.push_back(sum);
  }
  return out;
}

}  // namespace aldyn
