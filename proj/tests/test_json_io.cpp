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

#include <functional>
#include <random>

#include "doctest.h"
#include "support.hpp"

#include "aldyn/error.hpp"
#include "aldyn/json_io.hpp"

using namespace aldyn;
using namespace aldyn::io;
using aldyn::testing::P;
using aldyn::testing::Rng;

namespace {

std::string pointer_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const SchemaError& e) {
    return e.pointer();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("polynomials survive a text round trip through json") {
  Rng rng(11);
  auto gens = GeneratorSet::canonical(2);
  for (int k = 0; k < 30; ++k) {
    Poly f = aldyn::testing::random_poly(rng, gens, 3, 5, true);
    json j = json::parse(to_json(f).dump());
    CHECK(poly_from_json(j, "") == f);
  }
}

TEST_CASE("angle-phase generators keep their kind") {
  auto gens = GeneratorSet::make({"u", "I"}, {GeneratorKind::angle_phase, GeneratorKind::plain});
  Poly f = P("u^-2*I + 3*i*u", gens);
  json j = to_json(f);
  CHECK(j["generators"][0]["kind"] == std::string(to_string(GeneratorKind::angle_phase)));
  Poly back = poly_from_json(j, "");
  CHECK(back == f);
  CHECK(back.gens()->kind(0) == GeneratorKind::angle_phase);
}

TEST_CASE("inline text is accepted where the generators are known") {
  auto gens = GeneratorSet::canonical(1);
  CHECK(poly_from_json("q^2 - theta*p", "", gens) == P("q^2 - theta*p", gens));
  CHECK(pointer_of([] { poly_from_json("q", "/f"); }) == "/f");
  CHECK(pointer_of([&] { poly_from_json("q + w", "/f", gens); }) == "/f");
}

TEST_CASE("derivations, tensors and Lie algebras round trip") {
  Rng rng(5);
  auto gens = GeneratorSet::canonical(2);
  for (int k = 0; k < 10; ++k) {
    auto d = aldyn::testing::random_derivation(rng, gens, 2);
    CHECK(derivation_from_json(json::parse(to_json(d).dump()), "") == d);
  }
  auto su2 = lie_poisson(LieAlgebra3d::su2());
  auto back = tensor_from_json(json::parse(to_json(su2).dump()), "");
  CHECK(back.components() == su2.components());
  CHECK(same_generators(back.gens(), su2.gens()));

  auto lie = lie_algebra_from_json(json::parse(to_json(LieAlgebra3d::heisenberg()).dump()), "");
  CHECK(lie.c == LieAlgebra3d::heisenberg().c);
}

TEST_CASE("tensor presets") {
  auto two = tensor_from_json("canonical2", "");
  CHECK(two.gens()->names() == std::vector<std::string>{"q", "p"});
  auto four = tensor_from_json("canonical4", "");
  CHECK(four.dim() == 4);
  CHECK(pointer_of([] { tensor_from_json("canonical3", "/tensor"); }) == "/tensor");
  CHECK(pointer_of([] { tensor_from_json("sl7", "/tensor"); }) == "/tensor");
}

TEST_CASE("tensor objects report bad components by pointer") {
  json j = json::parse(R"({"dim": 3, "components": [{"a": 0, "b": 1, "poly": "z"}, {"a": 1, "b": 5, "poly": "x"}]})");
  CHECK(pointer_of([&] { tensor_from_json(j, ""); }) == "/components/1/b");
  j["components"][1]["b"] = 2;
  auto t = tensor_from_json(j, "");
  CHECK(t(0, 1) == P("z", t.gens()));
  CHECK(t(2, 1) == -P("x", t.gens()));
  json missing = json::parse(R"({"dim": 2})");
  CHECK(pointer_of([&] { tensor_from_json(missing, ""); }) == "/components");
}

TEST_CASE("exact and floating matrices") {
  Rng rng(9);
  for (int k = 0; k < 10; ++k) {
    QMatrix m = aldyn::testing::random_qmatrix(rng, 3);
    CHECK(qmatrix_from_json(json::parse(to_json(m).dump()), "") == m);
  }
  json plain = json::parse(R"({"entries": [[1, "1/2"], [{"im": "-1"}, 0]]})");
  QMatrix m = qmatrix_from_json(plain, "");
  CHECK(m(0, 1) == QComplex(Rational(1, 2)));
  CHECK(m(1, 0) == QComplex(0, -1));
  json fractional = json::parse(R"({"entries": [[0.5]]})");
  CHECK(pointer_of([&] { qmatrix_from_json(fractional, "/h"); }) == "/h/entries/0/0");
  CHECK(fmatrix_from_json(fractional, "")(0, 0) == std::complex<double>(0.5, 0));
  json ragged = json::parse(R"({"entries": [[1, 2], [3]]})");
  CHECK(pointer_of([&] { qmatrix_from_json(ragged, ""); }) == "/entries/1");
}

TEST_CASE("subspaces, forms, distributions and connections round trip") {
  auto s = MatrixSubspace::top_block(4, 2);
  auto back = subspace_from_json(json::parse(to_json(s).dump()), "");
  CHECK(back.dim() == s.dim());
  CHECK(back.contains(s));
  CHECK(subspace_from_json(json::parse(R"({"preset": "top-block", "n": 4, "k": 2})"), "").dim() == 4);

  auto basis = DerivationBasis::gell_mann(2);
  KForm f = wedge(KForm::dual(basis, 0), KForm::dual(basis, 2));
  f.set({0, 1}, pauli(3));
  CHECK(kform_from_json(json::parse(to_json(f).dump()), "") == f);
  json bad = to_json(f);
  bad["coeffs"][0]["idx"] = json::array({0, 7});
  CHECK(pointer_of([&] { kform_from_json(bad, ""); }) == "/coeffs/0/idx/1");

  auto gens = GeneratorSet::canonical(1);
  Distribution d(gens, {PolyDerivation::coordinate(gens, "q")});
  auto d2 = distribution_from_json(json::parse(to_json(d).dump()), "", gens);
  CHECK(d2.fields().front() == d.fields().front());
  ConnectionP p(d, {{P("1", gens), P("0", gens)}});
  auto p2 = connection_from_json(json::parse(to_json(p).dump()), "", d);
  CHECK(p2.forms() == p.forms());
}
