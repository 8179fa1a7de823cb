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

#include "aldyn/commands.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "aldyn/error.hpp"
#include "aldyn/parse.hpp"

namespace aldyn {

using io::json;
using io::pointer;

namespace {

std::string fmt(double v) {
  if (std::abs(v) < 1e-13) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double clean(double v) { return std::abs(v) < 1e-13 ? 0.0 : v; }

std::string fmt(std::complex<double> z) {
  double re = clean(z.real());
  double im = clean(z.imag());
  if (im == 0.0) return fmt(re);
  if (re == 0.0) return fmt(im) + "*i";
  return fmt(re) + (im < 0 ? " - " : " + ") + fmt(std::abs(im)) + "*i";
}

json complex_json(std::complex<double> z) { return json{{"re", clean(z.real())}, {"im", clean(z.imag())}}; }

json clean_matrix(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd c = m;
  for (Eigen::Index r = 0; r < c.rows(); ++r)
    for (Eigen::Index k = 0; k < c.cols(); ++k) c(r, k) = {clean(c(r, k).real()), clean(c(r, k).imag())};
  return io::to_json(c);
}

// Per-run state: request access, option resolution and the report being built.
class Run {
 public:
  Run(std::string command, const json& req) : req_(req) {
    report_.command = std::move(command);
    if (!req_.is_object()) throw SchemaError("", "request must be a JSON object");
    if (req_.contains("options")) {
      const auto& o = req_.at("options");
      if (!o.is_object()) throw SchemaError("/options", "expected an object");
      for (const auto& [k, v] : o.items()) {
        if (k != "degree_cap" && k != "ansatz_cap" && k != "tol" && k != "theta" && k != "timing") {
          throw SchemaError(pointer("/options", k), "unknown option");
        }
      }
    }
    if (const char* env = std::getenv("ALDYN_DEGREE_CAP"); env && *env) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (*end != '\0' || v < 0 || v > 64) {
        throw SchemaError("", "ALDYN_DEGREE_CAP must be an integer between 0 and 64");
      }
      env_cap_ = static_cast<int>(v);
    }
  }

  const json& req() const { return req_; }
  RunReport& report() { return report_; }

  int degree_cap(int fallback) const { return cap("degree_cap", fallback); }
  int ansatz_cap(int fallback) const { return cap("ansatz_cap", fallback); }
  double tol() const {
    double t = io::double_field(options(), "tol", "/options", 1e-10);
    if (!(t > 0)) throw SchemaError("/options/tol", "tolerance must be positive");
    return t;
  }
  std::optional<double> theta() const {
    if (!options().contains("theta")) return std::nullopt;
    return io::double_field(options(), "theta", "/options", 0.0);
  }

  bool has(const std::string& key) const { return req_.contains(key); }
  bool has_option(const std::string& key) const { return options().contains(key); }
  const json& at(const std::string& key) const { return io::require(req_, key, ""); }
  std::string path(const std::string& key) const { return pointer("", key); }

  void check(const std::string& what, bool passed) {
    report_.verified.push_back(json{{"check", what}, {"passed", passed}});
    if (!passed) failed_check_ = true;
  }
  void say(const std::string& line) { report_.trace.push_back(line); }
  json& result() { return report_.result; }
  void set_status(RunStatus s) { report_.status = s; }

  void finish() {
    if (failed_check_ && report_.status == RunStatus::ok) report_.status = RunStatus::fail;
  }

 private:
  const json& options() const {
    static const json empty = json::object();
    return req_.contains("options") ? req_.at("options") : empty;
  }
  int cap(const char* key, int fallback) const {
    int v = io::int_field(options(), key, "/options", env_cap_.value_or(fallback));
    if (v < 0 || v > 64) throw SchemaError(pointer("/options", key), "cap must be between 0 and 64");
    return v;
  }

  const json& req_;
  RunReport report_;
  std::optional<int> env_cap_;
  bool failed_check_ = false;
};

// ---- request readers ----

Generators request_generators(const Run& r) {
  if (!r.has("generators")) return nullptr;
  return io::generators_from_json(r.at("generators"), "/generators");
}

// "q = p, p = -q" shorthand for generator images.
json images_from_text(const std::string& text, const std::string& at) {
  json images = json::object();
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw SchemaError(at, "expected 'name = expression' items separated by commas");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string name = trim(item.substr(0, eq));
    std::string expr = trim(item.substr(eq + 1));
    if (name.empty() || expr.empty()) throw SchemaError(at, "empty name or expression in '" + item + "'");
    if (images.contains(name)) throw SchemaError(at, "generator '" + name + "' given twice");
    images[name] = expr;
  }
  if (images.empty()) throw SchemaError(at, "no generator images given");
  return images;
}

PolyDerivation read_derivation(const json& j, const std::string& at, Generators& gens) {
  json obj = j.is_string() ? json{{"images", images_from_text(j.get<std::string>(), at)}} : j;
  if (!obj.is_object()) throw SchemaError(at, "expected a derivation object or 'name = expression' text");
  if (!gens && !obj.contains("generators") && obj.contains("images") && obj.at("images").is_object()) {
    bool textual = true;
    std::vector<std::string> names;
    for (const auto& [k, v] : obj.at("images").items()) {
      names.push_back(k);
      if (!v.is_string() && !v.is_number_integer()) textual = false;
    }
    if (textual) gens = GeneratorSet::make(names);
  }
  auto d = io::derivation_from_json(obj, at, gens);
  if (!gens) gens = d.gens();
  return d;
}

PolyDerivation request_derivation(const Run& r, const std::string& key, Generators& gens) {
  return read_derivation(r.at(key), r.path(key), gens);
}

Poly request_poly(const Run& r, const std::string& key, const Generators& gens) {
  return io::poly_from_json(r.at(key), r.path(key), gens);
}

PoissonTensor request_tensor(const Run& r, const Generators& gens) {
  if (!r.has("tensor")) {
    if (gens) return PoissonTensor::canonical(gens);
    return PoissonTensor::canonical(GeneratorSet::canonical(1));
  }
  const auto& t = r.at("tensor");
  if (t.is_object() && t.contains("c")) {
    try {
      return lie_poisson(io::lie_algebra_from_json(t, "/tensor"), gens);
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError("/tensor/c", e.what());
    }
  }
  return io::tensor_from_json(t, "/tensor", gens);
}

StarContext request_star_context(const Run& r) {
  Generators gens = request_generators(r);
  if (r.has("lambda")) {
    if (!gens) throw SchemaError("/generators", "a custom lambda needs explicit generators");
    const auto& l = r.at("lambda");
    if (!l.is_array() || l.size() != gens->size()) throw SchemaError("/lambda", "expected a square matrix matching the generators");
    RationalMatrix m;
    for (std::size_t a = 0; a < l.size(); ++a) {
      auto row_at = pointer("/lambda", a);
      if (!l[a].is_array() || l[a].size() != gens->size()) throw SchemaError(row_at, "row length differs from the generator count");
      std::vector<Rational> row;
      for (std::size_t b = 0; b < l[a].size(); ++b) row.push_back(io::rational_from_json(l[a][b], pointer(row_at, b)));
      m.push_back(std::move(row));
    }
    try {
      return StarContext(gens, m);
    } catch (const Error& e) {
      throw SchemaError("/lambda", e.what());
    }
  }
  if (gens) {
    try {
      return StarContext::canonical(gens);
    } catch (const Error& e) {
      throw SchemaError("/generators", e.what());
    }
  }
  int pairs = io::int_field(r.req(), "pairs", "", 1);
  if (pairs < 1 || pairs > 8) throw SchemaError("/pairs", "pairs must be between 1 and 8");
  return StarContext::canonical(pairs);
}

json matrix_object(const json& j) { return j.is_array() ? json{{"entries", j}} : j; }

QMatrix request_qmatrix(const Run& r, const std::string& key) {
  return io::qmatrix_from_json(matrix_object(r.at(key)), r.path(key));
}

Eigen::MatrixXcd request_fmatrix(const Run& r, const std::string& key) {
  return io::fmatrix_from_json(matrix_object(r.at(key)), r.path(key));
}

MatrixSubspace request_subspace(const Run& r, const std::string& key) {
  json j = r.at(key);
  if (j.is_array()) {
    for (auto& m : j) m = matrix_object(m);
  }
  return io::subspace_from_json(j, r.path(key));
}

Distribution request_distribution(const Run& r, Generators& gens) {
  const auto& j = r.at("distribution");
  if (!j.is_array() || j.empty()) throw SchemaError("/distribution", "expected a non-empty array of derivations");
  std::vector<PolyDerivation> fields;
  for (std::size_t i = 0; i < j.size(); ++i) fields.push_back(read_derivation(j[i], pointer("/distribution", i), gens));
  return Distribution(gens, std::move(fields));
}

std::vector<Poly> request_poly_list(const Run& r, const std::string& key, const Generators& gens) {
  const auto& j = r.at(key);
  if (!j.is_array() || j.empty()) throw SchemaError(r.path(key), "expected a non-empty array of polynomials");
  std::vector<Poly> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(io::poly_from_json(j[i], pointer(r.path(key), i), gens));
  return out;
}

KForm read_form(const json& j, const std::string& at) {
  if (j.is_object() && (j.contains("dual") || j.contains("function"))) {
    long long n = io::int_field(j, "n", at, 2);
    if (n < 2 || n > 8) throw SchemaError(pointer(at, "n"), "matrix size must be between 2 and 8");
    auto basis = DerivationBasis::gell_mann(static_cast<std::size_t>(n));
    if (j.contains("dual")) {
      int idx = io::int_field(j, "dual", at, 0);
      if (idx < 0 || static_cast<std::size_t>(idx) >= basis->size()) throw SchemaError(pointer(at, "dual"), "index out of range");
      return KForm::dual(basis, static_cast<std::size_t>(idx));
    }
    QMatrix a = io::qmatrix_from_json(matrix_object(j.at("function")), pointer(at, "function"));
    if (a.size() != basis->n()) throw SchemaError(pointer(at, "function"), "matrix size differs from n");
    return KForm::function(basis, a);
  }
  return io::kform_from_json(j, at);
}

KForm request_form(const Run& r, const std::string& key) { return read_form(r.at(key), r.path(key)); }

Vec request_field(const Run& r, const KForm& f) {
  Vec x = io::vec_from_json(r.at("field"), "/field");
  if (x.size() != f.basis()->size()) throw SchemaError("/field", "field needs one coordinate per basis derivation");
  return x;
}

Rational exact_number(const json& j, const std::string& at) {
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  return io::rational_from_json(j, at);
}

// ---- result writers ----

json poly_out(const Run& r, const Poly& f) {
  json out{{"poly", io::to_json(f)}, {"text", to_text(f)}};
  if (auto th = r.theta()) {
    NumPoly v = NumPoly::from(f, *th);
    out["at_theta"] = json{{"theta", *th}, {"poly", io::to_json(v)}, {"text", to_text(v)}};
  }
  return out;
}

json derivation_out(const PolyDerivation& d) {
  json text = json::object();
  for (std::size_t a = 0; a < d.gens()->size(); ++a) text[d.gens()->name(a)] = to_text(d.image(a));
  return json{{"derivation", io::to_json(d)}, {"images", text}};
}

std::string derivation_text(const PolyDerivation& d) {
  std::string s;
  for (std::size_t a = 0; a < d.gens()->size(); ++a) {
    if (a) s += ", ";
    s += d.gens()->name(a) + " -> " + to_text(d.image(a));
  }
  return s;
}

json poly_list_out(const std::vector<Poly>& fs) {
  json out = json::array();
  for (const auto& f : fs) out.push_back(json{{"poly", io::to_json(f)}, {"text", to_text(f)}});
  return out;
}

std::string poly_list_text(const std::vector<Poly>& fs) {
  std::string s = "{";
  for (std::size_t i = 0; i < fs.size(); ++i) s += (i ? ", " : "") + to_text(fs[i]);
  return s + "}";
}

std::string form_text(const KForm& f) {
  return "degree " + std::to_string(f.degree()) + " form with " + std::to_string(f.coeffs().size()) +
         " nonzero components";
}

bool antisymmetric(const PoissonTensor& t) {
  for (std::size_t a = 0; a < t.dim(); ++a)
    for (std::size_t b = 0; b < t.dim(); ++b)
      if (!(t(a, b) == -t(b, a))) return false;
  return true;
}

// Substitutes the formal time by a rational value.
Poly at_time(const Poly& f, const Generators& gens, const Rational& t) {
  std::vector<Poly> images;
  for (std::size_t a = 0; a < gens->size(); ++a) images.push_back(Poly::generator(gens, a));
  images.push_back(Poly::constant(gens, Scalar(t)));
  return substitute(f, images, gens);
}

// delta extended to gens + t with t -> 0.
PolyDerivation time_extension(const PolyDerivation& d, const Generators& ext) {
  std::vector<Poly> images;
  for (const auto& img : d.images()) images.push_back(extend(img, ext));
  images.push_back(Poly(ext));
  return PolyDerivation(ext, std::move(images));
}

bool linear_homogeneous(const PolyDerivation& d) {
  for (const auto& img : d.images())
    for (const auto& [e, c] : img.terms())
      if (total_degree(e) != 1 || !c.is_theta_free() ||
          std::any_of(e.begin(), e.end(), [](int x) { return x < 0; }))
        return false;
  return true;
}

bool affine(const PolyDerivation& d) {
  for (const auto& img : d.images())
    if (img.degree() > 1) return false;
  return true;
}

// ---- poisson ----

void cmd_bracket(Run& r) {
  auto lambda = request_tensor(r, request_generators(r));
  Poly f = request_poly(r, "f", lambda.gens());
  Poly g = request_poly(r, "g", lambda.gens());
  Poly v = bracket(lambda, f, g);
  r.check("antisymmetry {g, f} = -{f, g}", bracket(lambda, g, f) == -v);
  r.check("Hamiltonian field of g applied to f equals {f, g}", hamiltonian_field(lambda, g).apply(f) == v);
  r.result()["bracket"] = poly_out(r, v);
  r.say("{" + to_text(f) + ", " + to_text(g) + "} = " + to_text(v));
}

void cmd_jacobi(Run& r) {
  auto lambda = request_tensor(r, request_generators(r));
  auto res = jacobi_check(lambda);
  r.check("tensor antisymmetric", antisymmetric(lambda));
  r.result()["passed"] = res.passed;
  r.result()["tensor"] = io::to_json(lambda);
  if (res.passed) {
    r.say("Jacobi identity holds for every generator triple");
  } else {
    json w = json::array();
    for (auto i : res.witness) w.push_back(lambda.gens()->name(i));
    r.result()["witness"] = w;
    r.result()["residual"] = poly_out(r, *res.residual);
    r.say("Jacobi identity fails on (" + w[0].get<std::string>() + ", " + w[1].get<std::string>() + ", " +
          w[2].get<std::string>() + "), residual " + to_text(*res.residual));
    r.set_status(RunStatus::fail);
  }
}

void cmd_hamfield(Run& r) {
  auto lambda = request_tensor(r, request_generators(r));
  const auto& gens = lambda.gens();
  if (r.has("h")) {
    Poly h = request_poly(r, "h", gens);
    auto d = hamiltonian_field(lambda, h);
    bool images_ok = true;
    for (std::size_t a = 0; a < gens->size(); ++a)
      images_ok = images_ok && d.image(a) == bracket(lambda, Poly::generator(gens, a), h);
    r.check("generator images equal {x^a, H}", images_ok);
    r.check("H is conserved by its own field", d.apply(h).is_zero());
    r.result()["field"] = derivation_out(d);
    r.say("delta_H: " + derivation_text(d));
    if (r.has("observable")) {
      Poly f = request_poly(r, "observable", gens);
      bool conserved = conserved_check(lambda, h, f);
      r.result()["observable"] = to_text(f);
      r.result()["conserved"] = conserved;
      r.say(to_text(f) + (conserved ? " is conserved" : " is not conserved"));
    }
    return;
  }
  if (!r.has("derivation")) throw SchemaError("/h", "missing required field (or give a derivation to search for H)");
  Generators g = gens;
  auto d = request_derivation(r, "derivation", g);
  int cap = r.degree_cap(6);
  auto search = find_hamiltonian(lambda, d, cap);
  r.result()["degree_cap"] = cap;
  r.result()["field"] = derivation_out(d);
  if (search.hamiltonian) {
    r.check("Hamiltonian field of the solution reproduces the derivation",
            hamiltonian_field(lambda, *search.hamiltonian) == d);
    r.result()["hamiltonian"] = poly_out(r, *search.hamiltonian);
    r.result()["ambiguity"] = search.ambiguity;
    r.say("H = " + to_text(*search.hamiltonian));
  } else {
    r.result()["hamiltonian"] = nullptr;
    r.say("no Hamiltonian of degree <= " + std::to_string(cap));
    r.set_status(RunStatus::fail);
  }
}

void cmd_casimir(Run& r) {
  auto lambda = request_tensor(r, request_generators(r));
  Poly c = request_poly(r, "c", lambda.gens());
  auto res = casimir_check(lambda, c);
  bool all_zero = true;
  for (std::size_t a = 0; a < lambda.dim(); ++a)
    all_zero = all_zero && bracket(lambda, Poly::generator(lambda.gens(), a), c).is_zero();
  r.check("brackets with every generator recomputed", all_zero == res.passed);
  r.result()["passed"] = res.passed;
  if (res.passed) {
    r.say(to_text(c) + " is a Casimir");
  } else {
    r.result()["witness"] = lambda.gens()->name(*res.witness);
    r.result()["value"] = poly_out(r, *res.value);
    r.say("{" + lambda.gens()->name(*res.witness) + ", " + to_text(c) + "} = " + to_text(*res.value));
    r.set_status(RunStatus::fail);
  }
}

// ---- moyal ----

void cmd_star(Run& r, bool commutator) {
  auto ctx = request_star_context(r);
  Poly f = request_poly(r, "f", ctx.gens());
  Poly g = request_poly(r, "g", ctx.gens());
  auto pb = ctx.poisson();
  if (commutator) {
    Poly v = star_commutator(ctx, f, g);
    r.check("antisymmetry", star_commutator(ctx, g, f) == -v);
    r.check("theta^0 term vanishes", theta_coefficient(v, 0).is_zero());
    r.check("theta^1 term equals i{f, g}",
            theta_coefficient(v, 1) == Scalar::i() * bracket(pb, theta_limit(f), theta_limit(g)));
    r.result()["commutator"] = poly_out(r, v);
    r.say("[" + to_text(f) + ", " + to_text(g) + "]_theta = " + to_text(v));
  } else {
    Poly v = star(ctx, f, g);
    r.check("theta^0 term equals the pointwise product", theta_limit(v) == theta_limit(f) * theta_limit(g));
    r.check("f * g - g * f equals the star commutator", v - star(ctx, g, f) == star_commutator(ctx, f, g));
    r.result()["product"] = poly_out(r, v);
    r.say(to_text(f) + " * " + to_text(g) + " = " + to_text(v));
  }
}

// ---- derivations ----

void cmd_flow(Run& r) {
  Generators gens = request_generators(r);
  auto d = request_derivation(r, "derivation", gens);
  int cap = r.degree_cap(16);
  std::optional<Poly> f;
  if (r.has("observable")) f = request_poly(r, "observable", gens);
  auto order = nilpotency_order(d, cap);
  r.result()["field"] = derivation_out(d);
  r.result()["nilpotency_order"] = order ? json(*order) : json(nullptr);

  if (order && affine(d)) {
    r.result()["method"] = "nilpotent";
    auto fr = flow_nilpotent(d, cap);
    auto ext = time_extension(d, fr.gens);
    std::vector<Poly> targets = fr.images;
    if (f) targets = {flow_nilpotent(d, *f, cap)};
    bool ode = true;
    for (const auto& F : targets) ode = ode && partial_derivative(F, "t") == ext.apply(F);
    r.check("d/dt of the flow equals delta applied to the flow", ode);
    json images = json::object();
    for (std::size_t a = 0; a < gens->size(); ++a) images[gens->name(a)] = to_text(fr.images[a]);
    r.result()["images"] = images;
    r.result()["truncation_order"] = fr.truncation_order;
    for (std::size_t a = 0; a < gens->size(); ++a) r.say(gens->name(a) + "(t) = " + to_text(fr.images[a]));
    if (f) {
      r.result()["flow"] = poly_out(r, targets.front());
      r.say(to_text(*f) + "(t) = " + to_text(targets.front()));
    }
    if (r.has("t")) {
      Rational t = exact_number(r.at("t"), "/t");
      r.result()["t"] = io::to_json(t);
      Poly base = f ? *f : Poly::generator(gens, 0);
      Poly at = at_time(targets.front(), gens, t);
      std::vector<Poly> moved;
      for (const auto& img : fr.images) moved.push_back(at_time(img, gens, t));
      r.check("value equals the observable at the flowed generators", substitute(base, moved, gens) == at);
      r.result()["value"] = poly_out(r, at);
      r.say("at t = " + to_text(t) + ": " + to_text(at));
    }
    return;
  }

  if (linear_homogeneous(d)) {
    r.result()["method"] = "linear";
    if (!r.has("t")) throw SchemaError("/t", "a time value is required for non-nilpotent linear flows");
    double t = io::double_field(r.req(), "t", "", 0.0);
    double tol = r.tol();
    r.result()["t"] = t;
    std::vector<Poly> observables;
    if (f) {
      observables.push_back(*f);
    } else {
      for (std::size_t a = 0; a < gens->size(); ++a) observables.push_back(Poly::generator(gens, a));
    }
    std::vector<NumPoly> forward, backward;
    for (std::size_t a = 0; a < gens->size(); ++a) {
      forward.push_back(flow_linear(d, t, Poly::generator(gens, a)));
      backward.push_back(flow_linear(d, -t, Poly::generator(gens, a)));
    }
    double err = 0.0;
    for (std::size_t a = 0; a < gens->size(); ++a)
      err = std::max(err, max_abs_difference(substitute(backward[a], forward, gens), NumPoly::from(Poly::generator(gens, a))));
    r.check("flow at -t inverts the flow at t", err < tol);
    json values = json::array();
    for (const auto& obs : observables) {
      NumPoly v = flow_linear(d, t, obs).pruned(tol);
      values.push_back(json{{"observable", to_text(obs)}, {"poly", io::to_json(v)}, {"text", to_text(v)}});
      r.say(to_text(obs) + "(" + fmt(t) + ") = " + to_text(v));
    }
    r.result()["values"] = values;
    return;
  }

  r.result()["method"] = "series";
  if (!f) throw SchemaError("/observable", "an observable is required for truncated series flows");
  int order_cap = r.degree_cap(6);
  Poly s = flow_truncated(d, *f, order_cap);
  r.result()["order"] = order_cap;
  r.result()["exact"] = false;
  r.result()["flow"] = poly_out(r, s);
  r.say(to_text(*f) + "(t) = " + to_text(s) + " + O(t^" + std::to_string(order_cap + 1) + ")");
  auto ext = time_extension(d, s.gens());
  Poly residual = partial_derivative(s, "t") - ext.apply(s);
  bool high = true;
  for (const auto& [e, c] : residual.terms()) high = high && e.back() >= order_cap;
  r.check("series solves d/dt f = delta f up to the truncation order", high);
}

void cmd_nilpotency(Run& r) {
  Generators gens = request_generators(r);
  auto d = request_derivation(r, "derivation", gens);
  int cap = r.degree_cap(16);
  auto order = nilpotency_order(d, cap);
  r.result()["cutoff"] = cap;
  r.result()["field"] = derivation_out(d);
  if (!order) {
    r.result()["order"] = nullptr;
    r.say("not nilpotent up to order " + std::to_string(cap));
    r.set_status(RunStatus::fail);
    return;
  }
  auto power = [&](const Poly& x, int k) {
    Poly y = x;
    for (int i = 0; i < k; ++i) y = d.apply(y);
    return y;
  };
  bool kills = true, minimal = *order == 0;
  for (std::size_t a = 0; a < gens->size(); ++a) {
    Poly x = Poly::generator(gens, a);
    kills = kills && power(x, *order).is_zero();
    if (*order > 0) minimal = minimal || !power(x, *order - 1).is_zero();
  }
  r.check("delta^k kills every generator", kills);
  r.check("no smaller power does", minimal);
  r.result()["order"] = *order;
  r.say("nilpotent of order " + std::to_string(*order));
}

// ---- matrices ----

void cmd_evolve(Run& r) {
  auto a = request_fmatrix(r, "a");
  auto h = request_fmatrix(r, "h");
  if (a.rows() != h.rows()) throw SchemaError("/a", "observable and Hamiltonian sizes differ");
  double t = io::double_field(r.req(), "t", "", 0.0);
  if (!r.has("t")) throw SchemaError("/t", "missing required field");
  double tol = r.tol();
  if (!is_hermitian(h, 1e-12)) throw SchemaError("/h", "Hamiltonian is not Hermitian");
  auto e = evolve(a, h, t);
  r.check("trace preserved", std::abs(e.trace() - a.trace()) < tol * (1 + a.norm()));
  r.check("Frobenius norm preserved", std::abs(e.norm() - a.norm()) < tol * (1 + a.norm()));
  r.check("flow at -t returns the observable", (evolve(e, h, -t) - a).norm() < tol * (1 + a.norm()));
  r.result()["t"] = t;
  r.result()["matrix"] = clean_matrix(e);
  r.say("evolved " + std::to_string(a.rows()) + "x" + std::to_string(a.rows()) + " observable to t = " + fmt(t));
}

void cmd_commutant(Run& r) {
  auto s = request_subspace(r, "subspace");
  auto c = commutant(s);
  bool commutes = true;
  for (const auto& f : c.basis())
    for (const auto& b : s.basis()) commutes = commutes && commutator(f, b).is_zero();
  r.check("every basis element commutes with the subspace", commutes);
  r.check("double commutant contains the subspace", commutant(c).contains(s));
  r.result()["dimension"] = c.dim();
  r.result()["basis"] = io::to_json(c);
  r.say("commutant has dimension " + std::to_string(c.dim()));
}

void cmd_invariance(Run& r) {
  auto h = request_qmatrix(r, "h");
  auto s = request_subspace(r, "subspace");
  if (h.size() != s.n()) throw SchemaError("/h", "matrix size differs from the subspace");
  auto res = invariance_check(h, s);
  r.result()["passed"] = res.passed;
  if (res.passed) {
    bool ok = true;
    for (const auto& b : s.basis()) ok = ok && s.contains(commutator(b, h));
    r.check("every [b, H] lies in the subspace", ok);
    r.say("subspace is invariant under a -> [a, H]");
  } else {
    r.check("witness image lies outside the subspace", !s.contains(*res.image));
    r.result()["witness"] = *res.witness;
    r.result()["image"] = io::to_json(*res.image);
    r.say("basis element " + std::to_string(*res.witness) + " leaves the subspace");
    r.set_status(RunStatus::fail);
  }
}

void cmd_blocksplit(Run& r) {
  auto h = request_qmatrix(r, "h");
  int k = io::int_field(r.req(), "k", "", -1);
  if (!r.has("k")) throw SchemaError("/k", "missing required field");
  if (k < 0 || static_cast<std::size_t>(k) > h.size()) throw SchemaError("/k", "block size out of range");
  BlockSplit bs = [&] {
    try {
      return block_split(h, static_cast<std::size_t>(k));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::precondition) throw SchemaError("/h", e.what());
      throw;
    }
  }();
  bool sums = true;
  std::size_t n = h.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      QMatrix e = QMatrix::unit(n, i, j);
      sums = sums && bs.top.apply(e) + bs.bottom.apply(e) == commutator(e, h);
    }
  r.check("delta_top + delta_bottom = delta_H on every matrix unit", sums);
  bool commuting = commutator(bs.top, bs.bottom) == InnerDerivation(QMatrix::zero(n));
  r.check("the two parts commute", commuting);
  r.result()["top"] = io::to_json(bs.top.generator());
  r.result()["bottom"] = io::to_json(bs.bottom.generator());
  r.result()["commuting"] = commuting;
  r.say("H splits into commuting top and bottom inner derivations");
}

void cmd_biderivation(Run& r) {
  int n = io::int_field(r.req(), "n", "", 2);
  if (n < 1 || n > 3) throw SchemaError("/n", "matrix size must be between 1 and 3");
  auto res = biderivation_solver(static_cast<std::size_t>(n));
  r.check("solution space contains the commutator", res.contains_commutator);
  bool unique = res.dimension() <= 1 && res.contains_commutator;
  r.result()["n"] = res.n;
  r.result()["unknowns"] = res.unknowns;
  r.result()["equations"] = res.equations;
  r.result()["dimension"] = res.dimension();
  r.result()["unique_up_to_scale"] = unique;
  r.say("biderivations of Mat_" + std::to_string(n) + ": " + std::to_string(res.unknowns) + " unknowns, solution dimension " +
        std::to_string(res.dimension()));
  if (!unique) r.set_status(RunStatus::fail);
}

// ---- reduction ----

json normalizer_json(const NormalizerResult& nr) {
  json out{{"verdict", std::string(to_string(nr.verdict))}};
  if (nr.field) out["field"] = *nr.field;
  if (nr.bracket) out["bracket"] = derivation_out(*nr.bracket);
  if (nr.certificate_point) {
    json p = json::array();
    for (const auto& v : *nr.certificate_point) p.push_back(io::to_json(v));
    out["certificate_point"] = p;
  }
  return out;
}

void cmd_reduce(Run& r) {
  Generators gens = request_generators(r);
  auto delta = request_derivation(r, r.has("dynamics") ? "dynamics" : "derivation", gens);
  auto d = request_distribution(r, gens);
  int cap = r.has_option("ansatz_cap") || !r.has("degree_cap") ? r.ansatz_cap(4) : io::int_field(r.req(), "degree_cap", "", 4);
  if (cap < 0 || cap > 64) throw SchemaError("/degree_cap", "cap must be between 0 and 64");
  auto inv = invariant_subalgebra(d, cap);
  bool annihilated = true;
  for (const auto& f : inv)
    for (const auto& y : d.fields()) annihilated = annihilated && y.apply(f).is_zero();
  r.check("invariant basis is annihilated by the distribution", annihilated);
  r.result()["ansatz_cap"] = cap;
  r.result()["invariants"] = poly_list_out(inv);
  r.say("invariant subalgebra up to degree " + std::to_string(cap) + ": " + poly_list_text(inv));

  auto nr = normalizer_check(delta, d, cap);
  r.result()["normalizer"] = normalizer_json(nr);
  r.say("normalizer verdict: " + std::string(to_string(nr.verdict)));
  if (nr.verdict == Verdict::member) {
    bool recomposed = true;
    for (std::size_t j = 0; j < d.rank(); ++j) {
      PolyDerivation sum = PolyDerivation::zero(gens);
      for (std::size_t k = 0; k < d.rank(); ++k) sum += nr.coefficients[j][k] * d.fields()[k];
      recomposed = recomposed && sum == commutator(delta, d.fields()[j]);
    }
    r.check("[delta, Y_j] = h_j^k Y_k", recomposed);
    r.check("delta preserves the invariant subalgebra", invariance_of_subalgebra(delta, inv, d).passed);
    std::optional<ConnectionP> p;
    if (r.has("connection")) {
      try {
        p = io::connection_from_json(r.at("connection"), "/connection", d);
      } catch (const SchemaError&) {
        throw;
      } catch (const Error& e) {
        throw SchemaError("/connection", e.what());
      }
    } else {
      p = find_connection(d, cap);
    }
    if (p) {
      auto split = split_dynamics(delta, *p, cap);
      r.check("along + transverse = delta", split.along + split.transverse == delta);
      r.result()["split"] = json{{"along", derivation_out(split.along)},
                                 {"transverse", derivation_out(split.transverse)},
                                 {"commuting", split.commuting},
                                 {"constant_of_motion", split.constant_of_motion}};
      r.say("along D: " + derivation_text(split.along));
      r.say("transverse: " + derivation_text(split.transverse));
      if (split.commuting) r.say("the two parts commute");
    } else {
      r.result()["split"] = nullptr;
      r.say("no polynomial connection up to degree " + std::to_string(cap));
    }
  } else if (nr.verdict == Verdict::non_member) {
    r.set_status(RunStatus::fail);
  } else {
    r.set_status(RunStatus::inconclusive);
  }
}

void cmd_frelate(Run& r) {
  Generators gens = request_generators(r);
  auto delta = request_derivation(r, "derivation", gens);
  auto fs = request_poly_list(r, "functions", gens);
  int cap = r.ansatz_cap(4);
  auto res = f_related_reduce(delta, fs, cap);
  r.result()["ansatz_cap"] = cap;
  r.result()["functions"] = poly_list_out(fs);
  if (!res.reduced) {
    r.result()["reduced"] = nullptr;
    r.result()["failed_component"] = *res.failed_component;
    r.say("delta(F_" + std::to_string(*res.failed_component) + ") is not a polynomial in F of degree <= " +
          std::to_string(cap));
    r.set_status(RunStatus::fail);
    return;
  }
  const auto& red = *res.reduced;
  bool related = true;
  for (std::size_t k = 0; k < fs.size(); ++k)
    related = related && substitute(red.image(k), fs, gens) == delta.apply(fs[k]);
  r.check("delta(F_k) equals the reduced image evaluated at F", related);
  r.result()["reduced"] = derivation_out(red);
  r.say("reduced dynamics: " + derivation_text(red));
}

void cmd_connection(Run& r) {
  Generators gens = request_generators(r);
  auto d = request_distribution(r, gens);
  int cap = r.ansatz_cap(4);
  std::optional<ConnectionP> p;
  if (r.has("connection")) {
    try {
      p = io::connection_from_json(r.at("connection"), "/connection", d);
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError("/connection", e.what());
    }
  } else {
    p = find_connection(d, cap);
  }
  if (!p) {
    r.result()["connection"] = nullptr;
    r.say("no polynomial connection up to degree " + std::to_string(cap));
    r.set_status(RunStatus::fail);
    return;
  }
  bool fixes = true;
  for (const auto& y : d.fields()) fixes = fixes && p->apply(y) == y;
  r.check("P fixes every Y_j", fixes);
  bool idempotent = true;
  for (std::size_t a = 0; a < gens->size(); ++a) {
    auto x = PolyDerivation::coordinate(gens, gens->name(a));
    idempotent = idempotent && p->apply(p->apply(x)) == p->apply(x);
  }
  r.check("P is idempotent on coordinate fields", idempotent);
  r.result()["connection"] = io::to_json(*p);
  for (std::size_t j = 0; j < p->forms().size(); ++j) {
    std::string s;
    for (std::size_t a = 0; a < gens->size(); ++a) {
      if (p->forms()[j][a].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + to_text(p->forms()[j][a]) + ") d" + gens->name(a);
    }
    r.say("alpha^" + std::to_string(j + 1) + " = " + (s.empty() ? "0" : s));
  }
}

// ---- differential calculus ----

void cmd_dform(Run& r) {
  auto f = request_form(r, "form");
  if (f.degree() >= f.basis()->size()) throw SchemaError("/form/degree", "d of a top-degree form is zero; degree too high");
  auto df = exterior_d(f);
  if (df.degree() < f.basis()->size()) r.check("d(d f) = 0", exterior_d(df).is_zero());
  r.result()["form"] = io::to_json(df);
  r.say("d f: " + form_text(df));
}

void cmd_wedge(Run& r) {
  auto a = request_form(r, "a");
  auto b = request_form(r, "b");
  if (a.basis()->n() != b.basis()->n()) throw SchemaError("/b/n", "forms live on different matrix sizes");
  if (a.degree() + b.degree() > a.basis()->size()) throw SchemaError("/b/degree", "total degree exceeds the basis size");
  auto w = wedge(a, b);
  if (w.degree() < w.basis()->size()) {
    KForm sign_b = (a.degree() % 2 ? QComplex(-1) : QComplex(1)) * wedge(a, exterior_d(b));
    r.check("graded Leibniz d(a ^ b) = da ^ b + (-1)^k a ^ db",
            exterior_d(w) == wedge(exterior_d(a), b) + sign_b);
  }
  r.result()["form"] = io::to_json(w);
  r.say("a ^ b: " + form_text(w));
}

void cmd_contract(Run& r) {
  auto f = request_form(r, "form");
  if (f.degree() == 0) throw SchemaError("/form/degree", "cannot contract a degree 0 form");
  Vec x = request_field(r, f);
  auto c = contract(x, f);
  if (f.degree() >= 2) r.check("i_X i_X f = 0", contract(x, c).is_zero());
  r.result()["form"] = io::to_json(c);
  r.say("i_X f: " + form_text(c));
}

void cmd_lieder(Run& r) {
  auto f = request_form(r, "form");
  Vec x = request_field(r, f);
  auto l = lie_derivative(x, f);
  if (f.degree() < f.basis()->size()) {
    r.check("d L_X f = L_X d f", exterior_d(l) == lie_derivative(x, exterior_d(f)));
  }
  r.result()["form"] = io::to_json(l);
  r.say("L_X f: " + form_text(l));
}

// ---- demos ----

void demo_free(Run& r) {
  auto gens = GeneratorSet::canonical(1);
  auto lambda = PoissonTensor::canonical(gens);
  Rational t = r.has("t") ? exact_number(r.at("t"), "/t") : Rational(1);
  Poly obs = r.has("observable") ? request_poly(r, "observable", gens) : Poly::generator(gens, "q");
  Poly h = parse_poly("p^2/2", gens);
  auto d = hamiltonian_field(lambda, h);
  r.say("H = " + to_text(h) + ", delta_H: " + derivation_text(d));
  auto order = nilpotency_order(d, 16);
  r.check("free derivation is nilpotent of order 2", order && *order == 2);
  r.say("nilpotent of order " + (order ? std::to_string(*order) : std::string("none")));
  Poly flow = flow_nilpotent(d, obs, 16);
  r.say(to_text(obs) + "(t) = " + to_text(flow));
  Poly value = at_time(flow, gens, t);
  Poly shifted = substitute(obs, std::vector<Poly>{parse_poly("q", gens) + Scalar(t) * parse_poly("p", gens),
                                                   parse_poly("p", gens)},
                            gens);
  r.check("flow equals f(q + t p, p)", value == shifted);
  r.say("at t = " + to_text(t) + ": " + to_text(value));
  r.result()["hamiltonian"] = to_text(h);
  r.result()["field"] = derivation_out(d);
  r.result()["nilpotency_order"] = order ? json(*order) : json(nullptr);
  r.result()["observable"] = to_text(obs);
  r.result()["t"] = io::to_json(t);
  r.result()["flow"] = poly_out(r, flow);
  r.result()["value"] = poly_out(r, value);
}

void demo_oscillator(Run& r) {
  auto gens = GeneratorSet::canonical(1);
  auto lambda = PoissonTensor::canonical(gens);
  Rational omega = r.has("omega") ? exact_number(r.at("omega"), "/omega") : Rational(1);
  if (sgn(omega) <= 0) throw SchemaError("/omega", "frequency must be positive");
  double t = r.has("t") ? io::double_field(r.req(), "t", "", 0.0) : std::numbers::pi / 2;
  double tol = r.tol();
  Poly h = parse_poly("p^2/2", gens) + Scalar(omega * omega / 2) * parse_poly("q^2", gens);
  auto d = hamiltonian_field(lambda, h);
  r.say("H = " + to_text(h) + ", delta_H: " + derivation_text(d));
  r.check("energy is conserved", conserved_check(lambda, h, h));
  r.check("oscillator is not nilpotent", !nilpotency_order(d, 16));
  double w = omega.get_d();
  NumPoly q_t = flow_linear(d, t, Poly::generator(gens, "q"));
  NumPoly p_t = flow_linear(d, t, Poly::generator(gens, "p"));
  NumPoly q_ref(gens), p_ref(gens);
  q_ref.add_term({1, 0}, std::cos(w * t));
  q_ref.add_term({0, 1}, std::sin(w * t) / w);
  p_ref.add_term({1, 0}, -w * std::sin(w * t));
  p_ref.add_term({0, 1}, std::cos(w * t));
  r.check("flow matches the closed form rotation", max_abs_difference(q_t, q_ref) < tol && max_abs_difference(p_t, p_ref) < tol);
  NumPoly q_clean = q_t.pruned(tol), p_clean = p_t.pruned(tol);
  r.say("at t = " + fmt(t) + ": q -> " + to_text(q_clean) + ", p -> " + to_text(p_clean));
  r.result()["hamiltonian"] = to_text(h);
  r.result()["field"] = derivation_out(d);
  r.result()["t"] = t;
  r.result()["q"] = json{{"poly", io::to_json(q_clean)}, {"text", to_text(q_clean)}};
  r.result()["p"] = json{{"poly", io::to_json(p_clean)}, {"text", to_text(p_clean)}};
}

void demo_action_angle(Run& r) {
  double phase = io::double_field(r.req(), "angle", "", 0.0);
  double action = io::double_field(r.req(), "action", "", 1.0);
  double t = r.has("t") ? io::double_field(r.req(), "t", "", 0.0) : std::numbers::pi;
  double tol = r.tol();
  auto d = action_angle_derivation(1);
  const auto& gens = d.gens();
  Poly u = Poly::generator(gens, 0);
  Poly i_action = Poly::generator(gens, 1);
  r.say("delta: " + derivation_text(d));
  r.check("action is conserved", d.apply(i_action).is_zero());
  r.check("delta^2 u = (i I)^2 u", d.apply(d.apply(u)) == pow(Scalar::i() * i_action, 2) * u);
  auto closed = flow_action_angle({action}, {phase}, t);
  auto series = flow_action_angle_series({action}, {phase}, t);
  r.check("exponential series agrees with the closed form", std::abs(closed[0] - series[0]) < tol);
  r.check("|u| = 1", std::abs(std::abs(closed[0]) - 1.0) < tol);
  r.say("angle = " + fmt(phase) + ", action = " + fmt(action) + ", t = " + fmt(t) + ": u = " + fmt(closed[0]));
  r.result()["angle"] = phase;
  r.result()["action"] = action;
  r.result()["t"] = t;
  r.result()["u"] = complex_json(closed[0]);
  r.result()["u_text"] = fmt(closed[0]);
}

QMatrix random_hermitian_block(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  auto rat = [&] {
    Rational v(num(rng), den(rng));
    v.canonicalize();
    return v;
  };
  QMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = QComplex(rat());
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = QComplex(rat(), rat());
      m(j, i) = m(i, j).conj();
    }
  }
  return m;
}

void demo_block_reduction(Run& r) {
  int n = io::int_field(r.req(), "n", "", 4);
  int k = io::int_field(r.req(), "k", "", 2);
  int seed = io::int_field(r.req(), "seed", "", 1);
  if (n < 2 || n > 8) throw SchemaError("/n", "matrix size must be between 2 and 8");
  if (k < 1 || k >= n) throw SchemaError("/k", "block size must be between 1 and n - 1");
  double tol = r.tol();
  auto nn = static_cast<std::size_t>(n), kk = static_cast<std::size_t>(k);
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  QMatrix top = random_hermitian_block(rng, kk);
  QMatrix bottom = random_hermitian_block(rng, nn - kk);
  QMatrix h(nn);
  for (std::size_t i = 0; i < kk; ++i)
    for (std::size_t j = 0; j < kk; ++j) h(i, j) = top(i, j);
  for (std::size_t i = kk; i < nn; ++i)
    for (std::size_t j = kk; j < nn; ++j) h(i, j) = bottom(i - kk, j - kk);
  auto u = MatrixSubspace::top_block(nn, kk);
  r.say("U = top " + std::to_string(k) + "x" + std::to_string(k) + " block of Mat_" + std::to_string(n) +
        ", H block diagonal (seed " + std::to_string(seed) + ")");

  auto inv = invariance_check(h, u);
  r.check("block diagonal H leaves U invariant", inv.passed);
  r.say(std::string("invariance for block H: ") + (inv.passed ? "pass" : "fail"));

  QMatrix perturbed = h + QMatrix::unit(nn, 0, kk) + QMatrix::unit(nn, kk, 0);
  auto inv2 = invariance_check(perturbed, u);
  r.check("off-diagonal perturbation breaks invariance", !inv2.passed);
  r.say(std::string("invariance for perturbed H: ") + (inv2.passed ? "pass" : "fail"));

  auto split = block_split(h, kk);
  bool sums = true;
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = 0; j < nn; ++j) {
      QMatrix e = QMatrix::unit(nn, i, j);
      sums = sums && split.top.apply(e) + split.bottom.apply(e) == commutator(e, h);
    }
  r.check("delta_{H_U} + delta_{H_F} = delta_H", sums);
  r.check("delta_{H_U} and delta_{H_F} commute", commutator(split.top, split.bottom) == InnerDerivation(QMatrix::zero(nn)));

  std::vector<Eigen::MatrixXcd> ub;
  for (const auto& b : u.basis()) ub.push_back(b.to_eigen());
  json residuals = json::array();
  double worst = 0.0;
  for (double t : {0.1, 1.0, 10.0}) {
    double res = 0.0;
    for (const auto& b : ub) res = std::max(res, span_residual(evolve(b, h.to_eigen(), t), ub));
    worst = std::max(worst, res);
    residuals.push_back(json{{"t", t}, {"within_tol", res < tol}});
    r.say("t = " + fmt(t) + ": evolved U stays in U " + (res < tol ? "(within tolerance)" : "(outside tolerance)"));
  }
  r.check("evolution keeps U invariant at t = 0.1, 1, 10", worst < tol);

  auto fg = commutant(u);
  r.check("commutant of U has dimension 1 + (n - k)^2", fg.dim() == 1 + (nn - kk) * (nn - kk));
  r.say("commutant of U has dimension " + std::to_string(fg.dim()));

  r.result()["n"] = n;
  r.result()["k"] = k;
  r.result()["h"] = io::to_json(h);
  r.result()["invariant"] = inv.passed;
  r.result()["perturbed_invariant"] = inv2.passed;
  r.result()["evolution"] = residuals;
  r.result()["commutant_dimension"] = fg.dim();
}

void demo_s_space(Run& r) {
  auto ctx = StarContext::canonical(2);
  auto rep = s_space_check(ctx);
  std::size_t unordered = 0;
  for (const auto& e : rep.table)
    if (e.i < e.j) ++unordered;
  r.check("basis has 15 elements", rep.basis.size() == 15);
  r.check("both brackets close on the space", rep.closed);
  r.check("brackets antisymmetric", rep.antisymmetric);
  r.check("[f, g]_theta = i theta {f, g} on every pair", rep.brackets_agree);
  r.say("basis of degree <= 2 polynomials on R^4: " + poly_list_text(rep.basis));
  r.say(std::to_string(unordered) + " unordered pairs checked (" + std::to_string(rep.table.size()) + " ordered)");
  r.say(std::string("closed: ") + (rep.closed ? "yes" : "no") + ", brackets agree: " + (rep.brackets_agree ? "yes" : "no"));
  r.result()["dimension"] = rep.basis.size();
  r.result()["unordered_pairs"] = unordered;
  r.result()["ordered_pairs"] = rep.table.size();
  r.result()["antisymmetric"] = rep.antisymmetric;
  r.result()["closed"] = rep.closed;
  r.result()["brackets_agree"] = rep.brackets_agree;
}

void demo_wigner(Run& r) {
  auto ctx = StarContext::canonical(1);
  struct Case {
    const char* name;
    QMatrixData c;
    bool symplectic;
  };
  std::vector<Case> cases = {
      {"free", {{0, 1}, {0, 0}}, true},
      {"oscillator", {{0, 1}, {-1, 0}}, true},
      {"euler", {{1, 0}, {0, 1}}, false},
  };
  json out = json::array();
  for (const auto& cs : cases) {
    auto rep = wigner_ambiguity_check(ctx, cs.c, 20, 1);
    std::string name = cs.name;
    r.check(name + ": pointwise Leibniz", rep.pointwise_leibniz);
    r.check(name + ": symplectic verdict", rep.symplectic == cs.symplectic);
    r.check(name + ": star Leibniz matches the symplectic verdict", rep.star_leibniz == cs.symplectic);
    out.push_back(json{{"name", name},
                       {"field", derivation_out(linear_derivation(ctx.gens(), cs.c))},
                       {"pointwise_leibniz", rep.pointwise_leibniz},
                       {"symplectic", rep.symplectic},
                       {"star_leibniz", rep.star_leibniz}});
    r.say(name + ": pointwise " + (rep.pointwise_leibniz ? "pass" : "fail") + ", symplectic " +
          (rep.symplectic ? "pass" : "fail") + ", star " + (rep.star_leibniz ? "pass" : "fail"));
  }
  r.result()["cases"] = out;
}

void demo_maurer_cartan(Run& r) {
  int n = io::int_field(r.req(), "n", "", 2);
  if (n < 2 || n > 3) throw SchemaError("/n", "matrix size must be 2 or 3");
  auto basis = DerivationBasis::gell_mann(static_cast<std::size_t>(n));
  std::size_t m = basis->size();
  auto one = QMatrix::identity(basis->n());
  bool mc = true, dd = true;
  for (std::size_t j = 0; j < m; ++j) {
    auto da = exterior_d(KForm::dual(basis, j));
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < m; ++l) mc = mc && da.at({k, l}) == -basis->structure(j, k, l) * one;
    if (m > 2) dd = dd && exterior_d(da).is_zero();
  }
  r.check("d alpha^j(X_k, X_l) = -alpha^j([X_k, X_l]) for every j, k, l", mc);
  r.check("d d alpha^j = 0", dd);
  r.say("basis of " + std::to_string(m) + " inner derivations of Mat_" + std::to_string(n));
  r.say(std::string("Maurer-Cartan relation on all basis pairs: ") + (mc ? "pass" : "fail"));
  json obstructions = json::array();
  bool all = true;
  for (std::size_t j = 0; j < m; ++j) {
    auto ob = exactness_obstruction(basis, j);
    bool ok = ob.trace == QComplex(n) && ob.differentials_traceless && ob.solution_space_empty;
    all = all && ok;
    obstructions.push_back(json{{"j", j},
                                {"trace", io::to_json(ob.trace)},
                                {"differentials_traceless", ob.differentials_traceless},
                                {"solution_space_empty", ob.solution_space_empty}});
  }
  r.check("no alpha^j is exact", all);
  r.say(std::string("alpha^j = dA has no solution for every j: ") + (all ? "yes" : "no"));
  r.result()["n"] = n;
  r.result()["basis_size"] = m;
  r.result()["maurer_cartan"] = mc;
  r.result()["obstructions"] = obstructions;
}

const std::map<std::string, std::function<void(Run&)>>& demos() {
  static const std::map<std::string, std::function<void(Run&)>> table = {
      {"free", demo_free},
      {"oscillator", demo_oscillator},
      {"action-angle", demo_action_angle},
      {"block-reduction", demo_block_reduction},
      {"s-space", demo_s_space},
      {"wigner", demo_wigner},
      {"maurer-cartan", demo_maurer_cartan},
  };
  return table;
}

void cmd_demo(Run& r) {
  const auto& name = r.at("name");
  if (!name.is_string()) throw SchemaError("/name", "expected a demo name");
  auto it = demos().find(name.get<std::string>());
  if (it == demos().end()) throw SchemaError("/name", "unknown demo '" + name.get<std::string>() + "'");
  r.result()["demo"] = it->first;
  it->second(r);
}

const std::map<std::string, std::function<void(Run&)>>& commands() {
  static const std::map<std::string, std::function<void(Run&)>> table = {
      {"bracket", cmd_bracket},
      {"jacobi", cmd_jacobi},
      {"hamfield", cmd_hamfield},
      {"star", [](Run& r) { cmd_star(r, false); }},
      {"starcomm", [](Run& r) { cmd_star(r, true); }},
      {"flow", cmd_flow},
      {"nilpotency", cmd_nilpotency},
      {"evolve", cmd_evolve},
      {"commutant", cmd_commutant},
      {"invariance", cmd_invariance},
      {"blocksplit", cmd_blocksplit},
      {"biderivation", cmd_biderivation},
      {"reduce", cmd_reduce},
      {"frelate", cmd_frelate},
      {"connection", cmd_connection},
      {"dform", cmd_dform},
      {"wedge", cmd_wedge},
      {"contract", cmd_contract},
      {"lieder", cmd_lieder},
      {"casimir", cmd_casimir},
      {"demo", cmd_demo},
  };
  return table;
}

}  // namespace

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ok: return "ok";
    case RunStatus::fail: return "fail";
    case RunStatus::malformed: return "malformed";
    case RunStatus::inconclusive: return "inconclusive";
    case RunStatus::internal: return "internal";
  }
  return "internal";
}

json RunReport::to_json(bool with_timing) const {
  json out{{"command", command}, {"status", std::string(to_string(status))}};
  if (error) {
    json e{{"message", *error}};
    if (error_pointer) e["pointer"] = *error_pointer;
    out["error"] = e;
  } else {
    out["result"] = result;
    out["verified"] = verified;
  }
  if (with_timing) out["wall_time_ms"] = wall_time_ms;
  return out;
}

std::string RunReport::text() const {
  std::string s;
  for (const auto& line : trace) s += line + "\n";
  for (const auto& v : verified) {
    s += std::string(v.at("passed").get<bool>() ? "[pass] " : "[FAIL] ") + v.at("check").get<std::string>() + "\n";
  }
  if (error) s += "error: " + *error + "\n";
  s += "status: " + std::string(to_string(status)) + "\n";
  return s;
}

RunReport run(std::string_view command, const json& request) {
  auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.command = std::string(command);
  auto fail_with = [&](RunStatus s, const std::string& msg, std::optional<std::string> ptr) {
    report.status = s;
    report.error = msg;
    report.error_pointer = std::move(ptr);
    report.result = json::object();
    report.verified = json::array();
    report.trace.clear();
  };
  try {
    auto it = commands().find(report.command);
    if (it == commands().end()) throw SchemaError("", "unknown command '" + report.command + "'");
    Run r(report.command, request);
    it->second(r);
    r.finish();
    report = std::move(r.report());
  } catch (const SchemaError& e) {
    fail_with(RunStatus::malformed, e.what(), e.pointer().empty() ? std::string("/") : e.pointer());
  } catch (const Error& e) {
    fail_with(e.kind() == ErrorKind::internal ? RunStatus::internal : RunStatus::malformed, e.what(), std::nullopt);
  } catch (const json::exception& e) {
    fail_with(RunStatus::malformed, e.what(), std::nullopt);
  } catch (const std::exception& e) {
    fail_with(RunStatus::internal, e.what(), std::nullopt);
  }
  report.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, f] : commands()) v.push_back(k);
    return v;
  }();
  return names;
}

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = {"free", "oscillator", "action-angle", "block-reduction",
                                                 "s-space", "wigner", "maurer-cartan"};
  return names;
}

}  // namespace aldyn
