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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aldyn/poly.hpp"

namespace aldyn {

/// Derivation of a commutative polynomial algebra, fixed by the images of
/// the generators and extended by linearity and the Leibniz rule:
/// delta(f) = sum_a delta(x^a) * df/dx^a.
class PolyDerivation {
 public:
  PolyDerivation(Generators gens, std::vector<Poly> images);

  static PolyDerivation zero(Generators gens);
  /// Generators missing from the map are sent to zero.
  static PolyDerivation from_images(Generators gens, const std::map<std::string, Poly>& images);
  /// Coordinate field d/dx^a.
  static PolyDerivation coordinate(Generators gens, std::string_view name);

  const Generators& gens() const { return gens_; }
  const std::vector<Poly>& images() const { return images_; }
  const Poly& image(std::size_t i) const { return images_.at(i); }
  const Poly& image(std::string_view name) const { return images_.at(gens_->index(name)); }

  bool is_zero() const;
  Poly apply(const Poly& f) const;
  Poly operator()(const Poly& f) const { return apply(f); }

  PolyDerivation& operator+=(const PolyDerivation& o);
  PolyDerivation& operator-=(const PolyDerivation& o);
  friend PolyDerivation operator+(PolyDerivation a, const PolyDerivation& b) { return a += b; }
  friend PolyDerivation operator-(PolyDerivation a, const PolyDerivation& b) { return a -= b; }
  /// Module action of the algebra: (h * Y)(f) = h * Y(f).
  friend PolyDerivation operator*(const Poly& h, const PolyDerivation& d);
  friend bool operator==(const PolyDerivation& a, const PolyDerivation& b);

 private:
  Generators gens_;
  std::vector<Poly> images_;
};

/// [d1, d2] = d1 o d2 - d2 o d1, computed on generators.
PolyDerivation commutator(const PolyDerivation& d1, const PolyDerivation& d2);

/// Smallest k <= cutoff with delta^k(x^a) = 0 for every generator.
std::optional<int> nilpotency_order(const PolyDerivation& d, int cutoff = 16);

/// Images of the generators under the exponential flow, as polynomials in
/// the original generators and the formal time symbol "t".
struct FlowResult {
  Generators gens;  // original generators plus "t"
  std::vector<Poly> images;
  /// Highest power of t that occurs; the series is exact.
  int truncation_order = 0;
};

/// Exact e^{t delta} for a nilpotent derivation whose generator images have
/// total degree <= 1. Throws precondition when the series would not truncate.
FlowResult flow_nilpotent(const PolyDerivation& d, int cutoff = 16);
Poly flow_nilpotent(const PolyDerivation& d, const Poly& f, int cutoff = 16);

/// sum_{k <= order} t^k / k! delta^k f, for derivations outside the
/// truncating class.
Poly flow_truncated(const PolyDerivation& d, const Poly& f, int order);

/// Matrix c with delta(x^a) = c(a, b) x^b. Throws when an image is not
/// homogeneous linear with constant, theta-free coefficients.
Eigen::MatrixXcd linear_part(const PolyDerivation& d);

/// Matrix exponential: eigendecomposition when the eigenvector basis is
/// well conditioned, Pade scaling and squaring otherwise.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& m, double tol = 1e-12);

/// f(e^{tc} x) for a linear derivation with matrix c.
NumPoly flow_linear(const PolyDerivation& d, std::complex<double> t, const NumPoly& f);
NumPoly flow_linear(const PolyDerivation& d, std::complex<double> t, const Poly& f);

/// u^a(t) = exp(i (t I^a + phi^a)) for action-angle data.
std::vector<std::complex<double>> flow_action_angle(const std::vector<double>& action,
                                                    const std::vector<double>& angle, double t);

/// Same values from the exponential series of delta'(u) = i I u on the
/// algebra C[u, u^-1, I], summed to `terms` terms and evaluated at the point.
std::vector<std::complex<double>> flow_action_angle_series(const std::vector<double>& action,
                                                           const std::vector<double>& angle, double t,
                                                           int terms = 40);

/// Generators u1..uN (angle-phase) followed by I1..IN and the derivation
/// u^a -> i I^a u^a, I^a -> 0.
PolyDerivation action_angle_derivation(int n);

}  // namespace aldyn
