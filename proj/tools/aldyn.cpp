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

// Command-line front end. Builds a JSON request from flags (or --input /
// --request) and hands it to the shared library through the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aldyn/aldyn.h"

namespace {

using json = nlohmann::ordered_json;

struct Flag {
  const char* name;  // long flag without dashes
  const char* key;   // request field
  const char* help;
  bool list = false;
};

struct Spec {
  const char* name;
  const char* help;
  std::vector<Flag> flags;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> table = {
      {"bracket", "Poisson bracket {f, g}",
       {{"tensor", "tensor", "preset (canonical2, canonical4, su2, heisenberg, abelian) or tensor JSON"},
        {"f", "f", "first polynomial"},
        {"g", "g", "second polynomial"},
        {"generators", "generators", "comma separated generator names", true}}},
      {"jacobi", "Jacobi identity check for a Poisson tensor",
       {{"tensor", "tensor", "preset or tensor JSON"}, {"generators", "generators", "generator names", true}}},
      {"hamfield", "Hamiltonian field of H, or a Hamiltonian for a given field",
       {{"tensor", "tensor", "preset or tensor JSON"},
        {"h", "h", "Hamiltonian"},
        {"derivation", "derivation", "field to invert, e.g. \"q = p, p = -q\""},
        {"observable", "observable", "observable to test for conservation"},
        {"generators", "generators", "generator names", true}}},
      {"casimir", "Casimir check {x^a, C} = 0",
       {{"tensor", "tensor", "preset or tensor JSON"},
        {"c", "c", "candidate Casimir"},
        {"generators", "generators", "generator names", true}}},
      {"star", "Moyal star product f * g",
       {{"f", "f", "first polynomial"},
        {"g", "g", "second polynomial"},
        {"pairs", "pairs", "number of canonical pairs"},
        {"lambda", "lambda", "constant Poisson matrix as JSON"},
        {"generators", "generators", "generator names", true}}},
      {"starcomm", "Moyal commutator [f, g]_theta",
       {{"f", "f", "first polynomial"},
        {"g", "g", "second polynomial"},
        {"pairs", "pairs", "number of canonical pairs"},
        {"lambda", "lambda", "constant Poisson matrix as JSON"},
        {"generators", "generators", "generator names", true}}},
      {"flow", "Exponential flow of a derivation",
       {{"derivation", "derivation", "generator images, e.g. \"q = p, p = 0\""},
        {"observable", "observable", "observable to flow"},
        {"t", "t", "time value"},
        {"generators", "generators", "generator names", true}}},
      {"nilpotency", "Nilpotency order of a derivation",
       {{"derivation", "derivation", "generator images"}, {"generators", "generators", "generator names", true}}},
      {"evolve", "Heisenberg evolution e^{itH} a e^{-itH}",
       {{"a", "a", "observable matrix JSON"}, {"h", "h", "Hermitian matrix JSON"}, {"t", "t", "time"}}},
      {"commutant", "Commutant of a matrix subspace",
       {{"subspace", "subspace", "array of matrices or {\"preset\": ...}"}}},
      {"invariance", "Invariance of a subalgebra under a -> [a, H]",
       {{"h", "h", "matrix JSON"}, {"subspace", "subspace", "array of matrices or preset"}}},
      {"blocksplit", "Split of a block diagonal H into commuting parts",
       {{"h", "h", "matrix JSON"}, {"k", "k", "top block size"}}},
      {"biderivation", "Biderivations of Mat_n", {{"n", "n", "matrix size"}}},
      {"reduce", "Invariants, normalizer verdict and split for a distribution",
       {{"dynamics", "dynamics", "dynamics, e.g. \"q = p, p = 0\""},
        {"field", "distribution", "distribution field (repeatable)", true},
        {"connection", "connection", "connection JSON"},
        {"generators", "generators", "generator names", true}}},
      {"frelate", "Reduced dynamics on functions F",
       {{"derivation", "derivation", "dynamics"},
        {"function", "functions", "function F_k (repeatable)", true},
        {"generators", "generators", "generator names", true}}},
      {"connection", "Find or validate a connection for a distribution",
       {{"field", "distribution", "distribution field (repeatable)", true},
        {"connection", "connection", "connection JSON"},
        {"generators", "generators", "generator names", true}}},
      {"dform", "Exterior derivative of a form", {{"form", "form", "form JSON, or {\"dual\": j, \"n\": n}"}}},
      {"wedge", "Wedge product of two forms", {{"a", "a", "first form"}, {"b", "b", "second form"}}},
      {"contract", "Contraction i_X f", {{"form", "form", "form JSON"}, {"field", "field", "basis coordinates of X"}}},
      {"lieder", "Lie derivative L_X f", {{"form", "form", "form JSON"}, {"field", "field", "basis coordinates of X"}}},
      {"demo", "Canned scenarios",
       {{"t", "t", "time"},
        {"observable", "observable", "observable (free)"},
        {"omega", "omega", "frequency (oscillator)"},
        {"angle", "angle", "initial angle (action-angle)"},
        {"action", "action", "action value (action-angle)"},
        {"n", "n", "matrix size"},
        {"k", "k", "block size (block-reduction)"},
        {"seed", "seed", "random seed (block-reduction)"}}},
  };
  return table;
}

// JSON literals (objects, arrays, numbers) are passed through; anything else
// is a string, so "q^2" and "canonical2" need no quoting.
json value_of(const std::string& text) {
  try {
    json j = json::parse(text);
    if (j.is_object() || j.is_array() || j.is_number()) return j;
  } catch (const json::parse_error&) {
  }
  return text;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

struct Output {
  bool json_only = false;
  bool text_only = false;
  bool timing = false;
};

int emit(aldyn_report* report, const Output& out) {
  aldyn_status status = aldyn_report_status(report);
  if (!out.json_only) {
    char* text = aldyn_report_text(report);
    if (text) std::fputs(text, stdout);
    aldyn_string_free(text);
  }
  if (!out.text_only) {
    char* payload = aldyn_report_payload(report, out.timing ? 1 : 0);
    if (payload) std::printf("%s\n", payload);
    aldyn_string_free(payload);
  }
  if (status == ALDYN_MALFORMED && out.json_only == false && out.text_only == false) {
    std::fprintf(stderr, "aldyn: %s\n", aldyn_last_error());
  }
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aldyn: exact algebraic dynamics engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(aldyn_version()));

  std::optional<int> degree_cap, ansatz_cap;
  std::optional<double> tol, theta;
  std::string input, request_text;
  Output out;
  app.add_option("--degree-cap", degree_cap, "degree cap for searches and series")->check(CLI::Range(0, 64));
  app.add_option("--ansatz-cap", ansatz_cap, "degree cap of the reduction ansatz")->check(CLI::Range(0, 64));
  app.add_option("--tol", tol, "numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--theta", theta, "numeric theta for evaluating results");
  auto* json_flag = app.add_flag("--json", out.json_only, "print only the JSON report");
  auto* text_flag = app.add_flag("--text", out.text_only, "print only the readable trace");
  json_flag->excludes(text_flag);
  app.add_flag("--timing", out.timing, "include wall time in the JSON report");
  app.add_option("--input", input, "request JSON file, or - for stdin");
  app.add_option("--request", request_text, "request JSON given inline");
  app.fallthrough();

  std::map<std::string, std::map<std::string, std::string>> scalars;
  std::map<std::string, std::map<std::string, std::vector<std::string>>> lists;
  std::string demo_name;
  std::map<std::string, CLI::App*> subs;
  for (const auto& spec : specs()) {
    auto* sub = app.add_subcommand(spec.name, spec.help);
    sub->set_help_flag("--help", "print this help message and exit");
    subs[spec.name] = sub;
    for (const auto& flag : spec.flags) {
      std::string opt = std::string("--") + flag.name;
      if (flag.list) {
        sub->add_option(opt, lists[spec.name][flag.key], flag.help);
      } else {
        sub->add_option(opt, scalars[spec.name][flag.key], flag.help);
      }
    }
    if (std::string(spec.name) == "demo") {
      std::string names;
      for (std::size_t i = 0; i < aldyn_demo_count(); ++i) names += std::string(i ? ", " : "") + aldyn_demo_name(i);
      sub->add_option("name", demo_name, "one of: " + names)->required();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;

  json request = json::object();
  try {
    if (!input.empty() && !request_text.empty()) {
      std::fprintf(stderr, "aldyn: --input and --request are mutually exclusive\n");
      return 2;
    }
    if (!input.empty()) {
      std::string text;
      if (input == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
      } else {
        std::ifstream f(input);
        if (!f) {
          std::fprintf(stderr, "aldyn: cannot read %s\n", input.c_str());
          return 2;
        }
        text.assign(std::istreambuf_iterator<char>(f), {});
      }
      request = json::parse(text);
    } else if (!request_text.empty()) {
      request = json::parse(request_text);
    }
  } catch (const json::parse_error& e) {
    std::fprintf(stderr, "aldyn: invalid request JSON: %s\n", e.what());
    return 2;
  }
  if (!request.is_object()) {
    std::fprintf(stderr, "aldyn: request must be a JSON object\n");
    return 2;
  }

  auto* sub = subs.at(command);
  for (const auto& spec : specs()) {
    if (command != spec.name) continue;
    for (const auto& flag : spec.flags) {
      std::string opt = std::string("--") + flag.name;
      if (sub->count(opt) == 0) continue;
      if (flag.list) {
        json arr = json::array();
        for (const auto& v : lists[command][flag.key]) {
          if (std::string(flag.key) == "generators") {
            for (const auto& g : split_commas(v)) arr.push_back(g);
          } else {
            arr.push_back(value_of(v));
          }
        }
        request[flag.key] = arr;
      } else {
        request[flag.key] = value_of(scalars[command][flag.key]);
      }
    }
  }
  if (command == "demo") request["name"] = demo_name;

  json options = request.contains("options") && request["options"].is_object() ? request["options"] : json::object();
  if (degree_cap) options["degree_cap"] = *degree_cap;
  if (ansatz_cap) options["ansatz_cap"] = *ansatz_cap;
  if (tol) options["tol"] = *tol;
  if (theta) options["theta"] = *theta;
  if (!options.empty()) request["options"] = options;

  aldyn_report* report = nullptr;
  aldyn_run(command.c_str(), request.dump().c_str(), &report);
  if (!report) {
    std::fprintf(stderr, "aldyn: %s\n", aldyn_last_error());
    return 4;
  }
  int code = emit(report, out);
  aldyn_report_free(report);
  return code;
}
