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

#include <optional>
#include <string>
#include <vector>

#include "aldyn/derivation.hpp"
#include "aldyn/linsolve.hpp"

namespace aldyn {

/// Distribution spanned by polynomial vector fields Y_j.
class Distribution {
 public:
  Distribution(Generators gens, std::vector<PolyDerivation> fields);

  const Generators& gens() const { return gens_; }
  const std::vector<PolyDerivation>& fields() const { return fields_; }
  std::size_t rank() const { return fields_.size(); }

  /// Every [Y_i, Y_j] is a polynomial combination of the Y_k (degree <= cap).
  bool involutive(int cap = 4) const;

 private:
  Generators gens_;
  std::vector<PolyDerivation> fields_;
};

/// Coefficients h_k of degree <= cap with X = h_k Y_k, if any.
std::optional<std::vector<Poly>> express_in(const PolyDerivation& x, const Distribution& d, int cap);

/// Polynomials of degree <= cap annihilated by every field, as a reduced
/// echelon basis over the monomials in graded lexicographic order.
std::vector<Poly> invariant_subalgebra(const Distribution& d, int cap);

enum class Verdict { member, non_member, inconclusive };
std::string_view to_string(Verdict v);

struct NormalizerResult {
  Verdict verdict = Verdict::member;
  /// Field whose bracket with delta left the distribution (or was undecided).
  std::optional<std::size_t> field;
  std::optional<PolyDerivation> bracket;
  /// Point where [delta, Y_j] is outside the span of the Y_k.
  std::optional<std::vector<Rational>> certificate_point;
  /// h_j^k with [delta, Y_j] = h_j^k Y_k, per field, when a member.
  std::vector<std::vector<Poly>> coefficients;
};

/// Integer points used when looking for pointwise rank certificates.
std::vector<std::vector<Rational>> default_sample_points(std::size_t dim, std::size_t count = 12);

NormalizerResult normalizer_check(const PolyDerivation& delta, const Distribution& d, int cap = 4,
                                  const std::vector<std::vector<Rational>>& points = {});

struct FRelatedResult {
  std::optional<PolyDerivation> reduced;  // on the fresh generators y1, y2, ...
  /// First component whose image is not a polynomial in F within the cap.
  std::optional<std::size_t> failed_component;
};

FRelatedResult f_related_reduce(const PolyDerivation& delta, const std::vector<Poly>& f, int cap = 4);

/// P = Y_j (x) alpha^j with i_{Y_j} alpha^k = delta^k_j.
class ConnectionP {
 public:
  /// forms[j][a] is the dx^a component of alpha^j. Throws precondition when
  /// the duality fails.
  ConnectionP(Distribution d, std::vector<std::vector<Poly>> forms);

  const Distribution& distribution() const { return d_; }
  const std::vector<std::vector<Poly>>& forms() const { return forms_; }

  /// i_X alpha^j.
  Poly contract(const PolyDerivation& x, std::size_t j) const;
  /// (i_X alpha^j) Y_j.
  PolyDerivation apply(const PolyDerivation& x) const;
  PolyDerivation operator()(const PolyDerivation& x) const { return apply(x); }

 private:
  Distribution d_;
  std::vector<std::vector<Poly>> forms_;
};

/// Polynomial connection with components of degree <= cap, if one exists.
std::optional<ConnectionP> find_connection(const Distribution& d, int cap = 4);

struct Split {
  PolyDerivation along;       // P(delta)
  PolyDerivation transverse;  // delta - P(delta)
  bool commuting = false;     // [along, transverse] = 0
  bool constant_of_motion = false;  // transverse = 0
};

/// Throws precondition unless delta normalizes the distribution.
Split split_dynamics(const PolyDerivation& delta, const ConnectionP& p, int cap = 4);

struct SubalgebraInvariance {
  bool passed = true;
  std::optional<std::size_t> witness;  // index into the basis
};

/// Every delta(f) is again annihilated by the distribution.
SubalgebraInvariance invariance_of_subalgebra(const PolyDerivation& delta, const std::vector<Poly>& basis,
                                              const Distribution& d);

}  // namespace aldyn
