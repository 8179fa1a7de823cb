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

#include "aldyn/json_io.hpp"

#include <cmath>

#include "aldyn/error.hpp"
#include "aldyn/parse.hpp"

namespace aldyn::io {

namespace {

[[noreturn]] void fail(const std::string& at, const std::string& what) { throw SchemaError(at, what); }

const json& array_at(const json& j, const std::string& at) {
  if (!j.is_array()) fail(at, "expected an array");
  return j;
}

const json& object_at(const json& j, const std::string& at) {
  if (!j.is_object()) fail(at, "expected an object");
  return j;
}

long long integer_at(const json& j, const std::string& at) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_unsigned()) return static_cast<long long>(j.get<unsigned long long>());
  fail(at, "expected an integer");
}

std::size_t index_at(const json& j, const std::string& at, std::size_t bound) {
  long long v = integer_at(j, at);
  if (v < 0 || static_cast<unsigned long long>(v) >= bound) fail(at, "index out of range");
  return static_cast<std::size_t>(v);
}

// Library errors raised while building a value are reported at the node.
template <typename F>
auto guarded(const std::string& at, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse || e.kind() == ErrorKind::unknown_generator ||
        e.kind() == ErrorKind::generator_mismatch || e.kind() == ErrorKind::size_mismatch) {
      fail(at, e.what());
    }
    throw;
  }
}

Generators default_generators(std::size_t dim) {
  if (dim % 2 == 0 && dim > 0) return GeneratorSet::canonical(static_cast<int>(dim / 2));
  if (dim == 3) return GeneratorSet::make({"x", "y", "z"});
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i + 1));
  return GeneratorSet::make(names);
}

Rational real_rational(const json& j, const std::string& at) {
  if (j.is_string()) return guarded(at, [&] { return parse_rational(j.get<std::string>()); });
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(static_cast<long>(integer_at(j, at)));
  fail(at, "expected a rational as \"p/q\" or an integer");
}

double real_double(const json& j, const std::string& at) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return guarded(at, [&] { return parse_rational(j.get<std::string>()).get_d(); });
  fail(at, "expected a number");
}

}  // namespace

std::string pointer(const std::string& at, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') {
      escaped += "~0";
    } else if (c == '/') {
      escaped += "~1";
    } else {
      escaped += c;
    }
  }
  return at + "/" + escaped;
}

std::string pointer(const std::string& at, std::size_t index) { return at + "/" + std::to_string(index); }

const json& require(const json& obj, const std::string& key, const std::string& at) {
  object_at(obj, at);
  auto it = obj.find(key);
  if (it == obj.end()) fail(pointer(at, key), "missing required field");
  return *it;
}

int int_field(const json& obj, const std::string& key, const std::string& at, int fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return static_cast<int>(integer_at(obj.at(key), pointer(at, key)));
}

double double_field(const json& obj, const std::string& key, const std::string& at, double fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return real_double(obj.at(key), pointer(at, key));
}

json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j, const std::string& at) { return real_rational(j, at); }

json to_json(const QComplex& c) { return json{{"re", to_string(c.re())}, {"im", to_string(c.im())}}; }

QComplex qcomplex_from_json(const json& j, const std::string& at) {
  if (j.is_object()) {
    Rational re = j.contains("re") ? real_rational(j.at("re"), pointer(at, "re")) : Rational(0);
    Rational im = j.contains("im") ? real_rational(j.at("im"), pointer(at, "im")) : Rational(0);
    for (const auto& [k, v] : j.items()) {
      if (k != "re" && k != "im") fail(pointer(at, k), "unknown field");
    }
    return {re, im};
  }
  return {real_rational(j, at), 0};
}

json to_json(const Generators& gens) {
  json out = json::array();
  for (std::size_t i = 0; i < gens->size(); ++i) {
    if (gens->kind(i) == infer_generator_kind(gens->name(i))) {
      out.push_back(gens->name(i));
    } else {
      out.push_back(json{{"name", gens->name(i)}, {"kind", std::string(to_string(gens->kind(i)))}});
    }
  }
  return out;
}

Generators generators_from_json(const json& j, const std::string& at) {
  array_at(j, at);
  std::vector<std::string> names;
  std::vector<GeneratorKind> kinds;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& g = j[i];
    auto here = pointer(at, i);
    if (g.is_string()) {
      names.push_back(g.get<std::string>());
      kinds.push_back(infer_generator_kind(names.back()));
    } else if (g.is_object()) {
      const auto& name = require(g, "name", here);
      if (!name.is_string()) fail(pointer(here, "name"), "expected a string");
      names.push_back(name.get<std::string>());
      if (g.contains("kind")) {
        if (!g.at("kind").is_string()) fail(pointer(here, "kind"), "expected a string");
        kinds.push_back(guarded(pointer(here, "kind"),
                                [&] { return parse_generator_kind(g.at("kind").get<std::string>()); }));
      } else {
        kinds.push_back(infer_generator_kind(names.back()));
      }
    } else {
      fail(here, "expected a generator name or {\"name\", \"kind\"}");
    }
  }
  try {
    return GeneratorSet::make(names, kinds);
  } catch (const Error& e) {
    fail(at, e.what());
  }
}

json to_json(const Poly& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) {
    json coeff = json::array();
    for (const auto& [k, v] : c.terms()) {
      coeff.push_back(json{{"theta", k}, {"re", to_string(v.re())}, {"im", to_string(v.im())}});
    }
    terms.push_back(json{{"exps", e}, {"coeff", coeff}});
  }
  return json{{"generators", to_json(f.gens())}, {"terms", terms}};
}

Poly poly_from_json(const json& j, const std::string& at, const Generators& gens) {
  if (j.is_string()) {
    if (!gens) fail(at, "inline polynomial text needs known generators");
    return guarded(at, [&] { return parse_poly(j.get<std::string>(), gens); });
  }
  if (j.is_number_integer()) {
    if (!gens) fail(at, "constant polynomial needs known generators");
    return Poly::constant(gens, Scalar(QComplex(Rational(static_cast<long>(integer_at(j, at))))));
  }
  object_at(j, at);
  Generators g = j.contains("generators") ? generators_from_json(j.at("generators"), pointer(at, "generators")) : gens;
  if (!g) fail(pointer(at, "generators"), "missing required field");
  if (gens && !same_generators(g, gens)) fail(pointer(at, "generators"), "generators differ from the context");
  Poly p(gens ? gens : g);
  const auto& terms = array_at(require(j, "terms", at), pointer(at, "terms"));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    auto here = pointer(pointer(at, "terms"), t);
    const auto& exps = array_at(require(terms[t], "exps", here), pointer(here, "exps"));
    if (exps.size() != g->size()) fail(pointer(here, "exps"), "exponent vector length differs from the generator count");
    Exponents e;
    for (std::size_t a = 0; a < exps.size(); ++a) {
      e.push_back(static_cast<int>(integer_at(exps[a], pointer(pointer(here, "exps"), a))));
    }
    const auto& coeff = array_at(require(terms[t], "coeff", here), pointer(here, "coeff"));
    Scalar s;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
      auto ch = pointer(pointer(here, "coeff"), k);
      object_at(coeff[k], ch);
      long long power = coeff[k].contains("theta") ? integer_at(coeff[k].at("theta"), pointer(ch, "theta")) : 0;
      if (power < 0) fail(pointer(ch, "theta"), "theta exponent must be non-negative");
      json value = json::object();
      if (coeff[k].contains("re")) value["re"] = coeff[k].at("re");
      if (coeff[k].contains("im")) value["im"] = coeff[k].at("im");
      s += Scalar::term(static_cast<int>(power), qcomplex_from_json(value, ch));
    }
    guarded(here, [&] {
      p.add_term(e, s);
      return 0;
    });
  }
  return p;
}

json to_json(const NumPoly& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back(json{{"exps", e}, {"re", c.real()}, {"im", c.imag()}});
  return json{{"generators", to_json(f.gens())}, {"terms", terms}};
}

json to_json(const PolyDerivation& d) {
  json images = json::object();
  for (std::size_t a = 0; a < d.gens()->size(); ++a) images[d.gens()->name(a)] = to_json(d.image(a));
  return json{{"generators", to_json(d.gens())}, {"images", images}};
}

PolyDerivation derivation_from_json(const json& j, const std::string& at, const Generators& gens) {
  object_at(j, at);
  Generators g = gens;
  if (j.contains("generators")) {
    g = generators_from_json(j.at("generators"), pointer(at, "generators"));
    if (gens && !same_generators(g, gens)) fail(pointer(at, "generators"), "generators differ from the context");
    if (gens) g = gens;
  }
  const auto& images = object_at(require(j, "images", at), pointer(at, "images"));
  if (!g) {
    for (const auto& [k, v] : images.items()) {
      if (v.is_object() && v.contains("generators")) {
        g = generators_from_json(v.at("generators"), pointer(pointer(pointer(at, "images"), k), "generators"));
        break;
      }
    }
  }
  if (!g) fail(pointer(at, "generators"), "missing required field");
  std::map<std::string, Poly> m;
  for (const auto& [k, v] : images.items()) {
    auto here = pointer(pointer(at, "images"), k);
    if (!g->find(k)) fail(here, "unknown generator '" + k + "'");
    m.emplace(k, poly_from_json(v, here, g));
  }
  return PolyDerivation::from_images(g, m);
}

json to_json(const PoissonTensor& t) {
  json comps = json::array();
  for (std::size_t a = 0; a < t.dim(); ++a)
    for (std::size_t b = a + 1; b < t.dim(); ++b)
      if (!t(a, b).is_zero()) comps.push_back(json{{"a", a}, {"b", b}, {"poly", to_json(t(a, b))}});
  return json{{"generators", to_json(t.gens())}, {"dim", t.dim()}, {"components", comps}};
}

PoissonTensor tensor_from_json(const json& j, const std::string& at, const Generators& gens) {
  if (j.is_string()) {
    std::string name = j.get<std::string>();
    auto checked = [&](PoissonTensor t) {
      if (gens && !same_generators(gens, t.gens())) fail(at, "tensor generators differ from the context");
      return t;
    };
    if (name == "su2") return checked(lie_poisson(LieAlgebra3d::su2(), gens));
    if (name == "heisenberg") return checked(lie_poisson(LieAlgebra3d::heisenberg(), gens));
    if (name == "abelian") return checked(lie_poisson(LieAlgebra3d::abelian(), gens));
    if (name == "canonical") return guarded(at, [&] { return PoissonTensor::canonical(gens ? gens : GeneratorSet::canonical(1)); });
    if (name.rfind("canonical", 0) == 0) {
      std::string digits = name.substr(9);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 3) {
        fail(at, "unknown tensor preset '" + name + "'");
      }
      int dim = std::stoi(digits);
      if (dim <= 0 || dim % 2 != 0) fail(at, "canonical tensor needs an even dimension");
      return checked(PoissonTensor::canonical(GeneratorSet::canonical(dim / 2)));
    }
    fail(at, "unknown tensor preset '" + name + "'");
  }
  object_at(j, at);
  std::size_t dim = static_cast<std::size_t>(integer_at(require(j, "dim", at), pointer(at, "dim")));
  Generators g = gens;
  if (j.contains("generators")) {
    g = generators_from_json(j.at("generators"), pointer(at, "generators"));
    if (gens && !same_generators(g, gens)) fail(pointer(at, "generators"), "generators differ from the context");
  }
  if (!g) g = default_generators(dim);
  if (g->size() != dim) fail(pointer(at, "dim"), "dimension differs from the generator count");
  const auto& comps = array_at(require(j, "components", at), pointer(at, "components"));
  std::vector<std::tuple<std::size_t, std::size_t, Poly>> upper;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    auto here = pointer(pointer(at, "components"), i);
    std::size_t a = index_at(require(comps[i], "a", here), pointer(here, "a"), dim);
    std::size_t b = index_at(require(comps[i], "b", here), pointer(here, "b"), dim);
    Poly f = poly_from_json(require(comps[i], "poly", here), pointer(here, "poly"), g);
    if (a > b) {
      upper.emplace_back(b, a, -f);
    } else {
      upper.emplace_back(a, b, f);
    }
  }
  try {
    return PoissonTensor::from_components(g, upper);
  } catch (const Error& e) {
    fail(pointer(at, "components"), e.what());
  }
}

json to_json(const LieAlgebra3d& g) {
  json c = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) {
      json cell = json::array();
      for (int k = 0; k < 3; ++k) cell.push_back(to_string(g.c[i][j][k]));
      row.push_back(cell);
    }
    c.push_back(row);
  }
  return json{{"c", c}};
}

LieAlgebra3d lie_algebra_from_json(const json& j, const std::string& at) {
  if (j.is_string()) {
    std::string name = j.get<std::string>();
    if (name == "su2") return LieAlgebra3d::su2();
    if (name == "heisenberg") return LieAlgebra3d::heisenberg();
    if (name == "abelian") return LieAlgebra3d::abelian();
    fail(at, "unknown Lie algebra '" + name + "'");
  }
  const auto& c = array_at(require(j, "c", at), pointer(at, "c"));
  auto cat = pointer(at, "c");
  if (c.size() != 3) fail(cat, "expected a 3x3x3 array");
  LieAlgebra3d g;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& row = array_at(c[i], pointer(cat, i));
    if (row.size() != 3) fail(pointer(cat, i), "expected three entries");
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& cell = array_at(row[k], pointer(pointer(cat, i), k));
      if (cell.size() != 3) fail(pointer(pointer(cat, i), k), "expected three entries");
      for (std::size_t l = 0; l < 3; ++l) {
        g.c[i][k][l] = real_rational(cell[l], pointer(pointer(pointer(cat, i), k), l));
      }
    }
  }
  return g;
}

json to_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.size(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return json{{"n", m.size()}, {"entries", rows}};
}

QMatrix qmatrix_from_json(const json& j, const std::string& at) {
  object_at(j, at);
  const auto& entries = array_at(require(j, "entries", at), pointer(at, "entries"));
  std::size_t n = j.contains("n") ? static_cast<std::size_t>(integer_at(j.at("n"), pointer(at, "n"))) : entries.size();
  if (entries.size() != n) fail(pointer(at, "entries"), "row count differs from n");
  QMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    auto rat = pointer(pointer(at, "entries"), r);
    const auto& row = array_at(entries[r], rat);
    if (row.size() != n) fail(rat, "row length differs from n");
    for (std::size_t c = 0; c < n; ++c) {
      const auto& e = row[c];
      auto here = pointer(rat, c);
      auto exact = [&](const json& v, const std::string& p) -> Rational {
        if (v.is_number_float()) {
          double d = v.get<double>();
          if (std::floor(d) != d) fail(p, "exact entries must be integers or \"p/q\" strings");
          return Rational(d);
        }
        return real_rational(v, p);
      };
      if (e.is_object()) {
        Rational re = e.contains("re") ? exact(e.at("re"), pointer(here, "re")) : Rational(0);
        Rational im = e.contains("im") ? exact(e.at("im"), pointer(here, "im")) : Rational(0);
        m(r, c) = QComplex(re, im);
      } else {
        m(r, c) = QComplex(exact(e, here));
      }
    }
  }
  return m;
}

json to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json{{"re", m(r, c).real()}, {"im", m(r, c).imag()}});
    rows.push_back(row);
  }
  return json{{"n", m.rows()}, {"entries", rows}};
}

Eigen::MatrixXcd fmatrix_from_json(const json& j, const std::string& at) {
  object_at(j, at);
  const auto& entries = array_at(require(j, "entries", at), pointer(at, "entries"));
  std::size_t n = j.contains("n") ? static_cast<std::size_t>(integer_at(j.at("n"), pointer(at, "n"))) : entries.size();
  if (entries.size() != n) fail(pointer(at, "entries"), "row count differs from n");
  Eigen::MatrixXcd m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    auto rat = pointer(pointer(at, "entries"), r);
    const auto& row = array_at(entries[r], rat);
    if (row.size() != n) fail(rat, "row length differs from n");
    for (std::size_t c = 0; c < n; ++c) {
      const auto& e = row[c];
      auto here = pointer(rat, c);
      if (e.is_object()) {
        double re = e.contains("re") ? real_double(e.at("re"), pointer(here, "re")) : 0.0;
        double im = e.contains("im") ? real_double(e.at("im"), pointer(here, "im")) : 0.0;
        m(r, c) = {re, im};
      } else {
        m(r, c) = real_double(e, here);
      }
    }
  }
  return m;
}

json to_json(const MatrixSubspace& s) {
  json out = json::array();
  for (const auto& m : s.basis()) out.push_back(to_json(m));
  return out;
}

MatrixSubspace subspace_from_json(const json& j, const std::string& at) {
  if (j.is_object() && j.contains("preset")) {
    const auto& preset = j.at("preset");
    if (!preset.is_string()) fail(pointer(at, "preset"), "expected a string");
    std::size_t n = static_cast<std::size_t>(integer_at(require(j, "n", at), pointer(at, "n")));
    if (n == 0 || n > 16) fail(pointer(at, "n"), "matrix size must be between 1 and 16");
    std::string name = preset.get<std::string>();
    if (name == "full") return MatrixSubspace::full(n);
    if (name == "diagonal") return MatrixSubspace::diagonal(n);
    if (name == "top-block") {
      std::size_t k = static_cast<std::size_t>(integer_at(require(j, "k", at), pointer(at, "k")));
      if (k > n) fail(pointer(at, "k"), "block size exceeds n");
      return MatrixSubspace::top_block(n, k);
    }
    fail(pointer(at, "preset"), "unknown subspace preset '" + name + "'");
  }
  array_at(j, at);
  if (j.empty()) fail(at, "subspace needs at least one matrix");
  std::vector<QMatrix> basis;
  for (std::size_t i = 0; i < j.size(); ++i) basis.push_back(qmatrix_from_json(j[i], pointer(at, i)));
  try {
    return MatrixSubspace(basis.front().size(), basis);
  } catch (const Error& e) {
    fail(at, e.what());
  }
}

json to_json(const KForm& f) {
  json coeffs = json::array();
  for (const auto& [idx, v] : f.coeffs()) coeffs.push_back(json{{"idx", idx}, {"value", to_json(v)}});
  return json{{"degree", f.degree()}, {"basis", "gell-mann"}, {"n", f.basis()->n()}, {"coeffs", coeffs}};
}

KForm kform_from_json(const json& j, const std::string& at) {
  object_at(j, at);
  std::size_t degree = static_cast<std::size_t>(integer_at(require(j, "degree", at), pointer(at, "degree")));
  if (j.contains("basis") && j.at("basis") != "gell-mann") fail(pointer(at, "basis"), "only the gell-mann basis is supported");
  long long n = integer_at(require(j, "n", at), pointer(at, "n"));
  if (n < 2 || n > 8) fail(pointer(at, "n"), "matrix size must be between 2 and 8");
  auto basis = DerivationBasis::gell_mann(static_cast<std::size_t>(n));
  if (degree > basis->size()) fail(pointer(at, "degree"), "degree exceeds the basis size");
  KForm f(basis, degree);
  const auto& coeffs = array_at(require(j, "coeffs", at), pointer(at, "coeffs"));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    auto here = pointer(pointer(at, "coeffs"), i);
    const auto& idx = array_at(require(coeffs[i], "idx", here), pointer(here, "idx"));
    if (idx.size() != degree) fail(pointer(here, "idx"), "index tuple length differs from the degree");
    KForm::Index ix;
    for (std::size_t k = 0; k < idx.size(); ++k) ix.push_back(index_at(idx[k], pointer(pointer(here, "idx"), k), basis->size()));
    QMatrix v = qmatrix_from_json(require(coeffs[i], "value", here), pointer(here, "value"));
    if (v.size() != basis->n()) fail(pointer(here, "value"), "value size differs from n");
    try {
      f.set(ix, f.at(ix) + v);
    } catch (const Error& e) {
      fail(here, e.what());
    }
  }
  return f;
}

json to_json(const Distribution& d) {
  json out = json::array();
  for (const auto& y : d.fields()) out.push_back(to_json(y));
  return out;
}

Distribution distribution_from_json(const json& j, const std::string& at, const Generators& gens) {
  array_at(j, at);
  std::vector<PolyDerivation> fields;
  for (std::size_t i = 0; i < j.size(); ++i) fields.push_back(derivation_from_json(j[i], pointer(at, i), gens));
  return Distribution(gens, std::move(fields));
}

json to_json(const ConnectionP& p) {
  json forms = json::array();
  const auto& gens = p.distribution().gens();
  for (const auto& alpha : p.forms()) {
    json f = json::object();
    for (std::size_t a = 0; a < gens->size(); ++a)
      if (!alpha[a].is_zero()) f[gens->name(a)] = to_json(alpha[a]);
    forms.push_back(f);
  }
  return json{{"forms", forms}};
}

ConnectionP connection_from_json(const json& j, const std::string& at, const Distribution& d) {
  const auto& forms = array_at(require(j, "forms", at), pointer(at, "forms"));
  const auto& gens = d.gens();
  std::vector<std::vector<Poly>> out;
  for (std::size_t k = 0; k < forms.size(); ++k) {
    auto here = pointer(pointer(at, "forms"), k);
    object_at(forms[k], here);
    std::vector<Poly> alpha(gens->size(), Poly(gens));
    for (const auto& [name, v] : forms[k].items()) {
      auto idx = gens->find(name);
      if (!idx) fail(pointer(here, name), "unknown generator '" + name + "'");
      alpha[*idx] = poly_from_json(v, pointer(here, name), gens);
    }
    out.push_back(std::move(alpha));
  }
  try {
    return ConnectionP(d, std::move(out));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::size_mismatch) fail(pointer(at, "forms"), e.what());
    throw;
  }
}

Vec vec_from_json(const json& j, const std::string& at) {
  array_at(j, at);
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(qcomplex_from_json(j[i], pointer(at, i)));
  return v;
}

json to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

}  // namespace aldyn::io
