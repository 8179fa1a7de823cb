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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "aldyn/derivation.hpp"
#include "aldyn/diffcalc.hpp"
#include "aldyn/matrix.hpp"
#include "aldyn/moyal.hpp"
#include "aldyn/poisson.hpp"
#include "aldyn/reduction.hpp"

namespace aldyn::io {

using json = nlohmann::ordered_json;

/// Readers throw SchemaError carrying the JSON pointer `at` of the bad node.
/// Polynomials may be given as inline text when `gens` is known.

json to_json(const Rational& r);
Rational rational_from_json(const json& j, const std::string& at);

json to_json(const QComplex& c);
QComplex qcomplex_from_json(const json& j, const std::string& at);

json to_json(const Generators& gens);
Generators generators_from_json(const json& j, const std::string& at);

json to_json(const Poly& f);
Poly poly_from_json(const json& j, const std::string& at, const Generators& gens = nullptr);

json to_json(const NumPoly& f);

json to_json(const PolyDerivation& d);
PolyDerivation derivation_from_json(const json& j, const std::string& at, const Generators& gens = nullptr);

json to_json(const PoissonTensor& t);
/// Object form, or one of "canonical", "canonical1", "canonical2", ..., "su2",
/// "heisenberg", "abelian".
PoissonTensor tensor_from_json(const json& j, const std::string& at, const Generators& gens = nullptr);

json to_json(const LieAlgebra3d& g);
LieAlgebra3d lie_algebra_from_json(const json& j, const std::string& at);

json to_json(const QMatrix& m);
QMatrix qmatrix_from_json(const json& j, const std::string& at);
json to_json(const Eigen::MatrixXcd& m);
/// Float or exact entries.
Eigen::MatrixXcd fmatrix_from_json(const json& j, const std::string& at);

json to_json(const MatrixSubspace& s);
MatrixSubspace subspace_from_json(const json& j, const std::string& at);

json to_json(const KForm& f);
KForm kform_from_json(const json& j, const std::string& at);

json to_json(const Distribution& d);
Distribution distribution_from_json(const json& j, const std::string& at, const Generators& gens);

json to_json(const ConnectionP& p);
ConnectionP connection_from_json(const json& j, const std::string& at, const Distribution& d);

Vec vec_from_json(const json& j, const std::string& at);
json to_json(const Vec& v);

/// Helpers for request objects.
const json& require(const json& obj, const std::string& key, const std::string& at);
int int_field(const json& obj, const std::string& key, const std::string& at, int fallback);
double double_field(const json& obj, const std::string& key, const std::string& at, double fallback);
std::string pointer(const std::string& at, const std::string& key);
std::string pointer(const std::string& at, std::size_t index);

}  // namespace aldyn::io
