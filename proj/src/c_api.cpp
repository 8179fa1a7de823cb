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

#include "aldyn/aldyn.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "aldyn/commands.hpp"
#include "aldyn/error.hpp"
#include "aldyn/json_io.hpp"
#include "aldyn/moyal.hpp"
#include "aldyn/parse.hpp"

struct aldyn_report {
  aldyn::RunReport report;
};

struct aldyn_context {
  aldyn::StarContext star;
  aldyn::PoissonTensor poisson;
};

struct aldyn_poly {
  aldyn::Poly value;
};

namespace {

thread_local std::string last_error;

aldyn_status status_of(aldyn::RunStatus s) { return static_cast<aldyn_status>(static_cast<int>(s)); }

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

aldyn_status set_error(aldyn_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs f, translating exceptions into status codes.
template <typename F>
aldyn_status guard(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const aldyn::Error& e) {
    return set_error(e.kind() == aldyn::ErrorKind::internal ? ALDYN_INTERNAL : ALDYN_MALFORMED, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(ALDYN_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(ALDYN_INTERNAL, e.what());
  }
}

aldyn_status null_argument() { return set_error(ALDYN_MALFORMED, "null argument"); }

aldyn_status emit(aldyn::Poly value, aldyn_poly** out) {
  *out = new aldyn_poly{std::move(value)};
  return ALDYN_OK;
}

}  // namespace

extern "C" {

const char* aldyn_version(void) { return "1.0.0"; }

const char* aldyn_last_error(void) { return last_error.c_str(); }

void aldyn_string_free(char* s) { std::free(s); }

aldyn_status aldyn_run(const char* command, const char* request_json, aldyn_report** out) {
  if (!out) return null_argument();
  *out = nullptr;
  if (!command || !request_json) return null_argument();
  return guard([&] {
    auto* r = new aldyn_report{};
    try {
      auto request = aldyn::io::json::parse(request_json);
      r->report = aldyn::run(command, request);
    } catch (const aldyn::io::json::parse_error& e) {
      r->report.command = command;
      r->report.status = aldyn::RunStatus::malformed;
      r->report.error = std::string("invalid JSON: ") + e.what();
      r->report.error_pointer = "/";
    }
    *out = r;
    if (r->report.error) last_error = *r->report.error;
    return status_of(r->report.status);
  });
}

aldyn_status aldyn_report_status(const aldyn_report* r) {
  return r ? status_of(r->report.status) : ALDYN_MALFORMED;
}

char* aldyn_report_payload(const aldyn_report* r, int with_timing) {
  if (!r) return nullptr;
  try {
    return copy_string(r->report.to_json(with_timing != 0).dump(2));
  } catch (...) {
    return nullptr;
  }
}

char* aldyn_report_text(const aldyn_report* r) {
  if (!r) return nullptr;
  try {
    return copy_string(r->report.text());
  } catch (...) {
    return nullptr;
  }
}

double aldyn_report_wall_time(const aldyn_report* r) { return r ? r->report.wall_time_ms : 0.0; }

void aldyn_report_free(aldyn_report* r) { delete r; }

size_t aldyn_command_count(void) { return aldyn::command_names().size(); }

const char* aldyn_command_name(size_t i) {
  const auto& v = aldyn::command_names();
  return i < v.size() ? v[i].c_str() : nullptr;
}

size_t aldyn_demo_count(void) { return aldyn::demo_names().size(); }

const char* aldyn_demo_name(size_t i) {
  const auto& v = aldyn::demo_names();
  return i < v.size() ? v[i].c_str() : nullptr;
}

aldyn_status aldyn_context_canonical(int pairs, aldyn_context** out) {
  if (!out) return null_argument();
  *out = nullptr;
  if (pairs < 1 || pairs > 16) return set_error(ALDYN_MALFORMED, "pairs must be between 1 and 16");
  return guard([&] {
    auto star = aldyn::StarContext::canonical(pairs);
    auto poisson = star.poisson();
    *out = new aldyn_context{std::move(star), std::move(poisson)};
    return ALDYN_OK;
  });
}

size_t aldyn_context_dim(const aldyn_context* ctx) { return ctx ? ctx->star.dim() : 0; }

void aldyn_context_free(aldyn_context* ctx) { delete ctx; }

aldyn_status aldyn_poly_parse(const aldyn_context* ctx, const char* text, aldyn_poly** out) {
  if (!out) return null_argument();
  *out = nullptr;
  if (!ctx || !text) return null_argument();
  return guard([&] { return emit(aldyn::parse_poly(text, ctx->star.gens()), out); });
}

aldyn_status aldyn_poly_from_json(const aldyn_context* ctx, const char* json, aldyn_poly** out) {
  if (!out) return null_argument();
  *out = nullptr;
  if (!json) return null_argument();
  return guard([&] {
    aldyn::io::json j;
    try {
      j = aldyn::io::json::parse(json);
    } catch (const aldyn::io::json::parse_error& e) {
      return set_error(ALDYN_MALFORMED, std::string("invalid JSON: ") + e.what());
    }
    return emit(aldyn::io::poly_from_json(j, "", ctx ? ctx->star.gens() : nullptr), out);
  });
}

aldyn_status aldyn_poly_add(const aldyn_poly* a, const aldyn_poly* b, aldyn_poly** out) {
  if (!out) return null_argument();
  *out = nullptr;
  if (!a || !b) return null_argument();
  return guard([&] { return emit(a->value + b->value, out); });
}

aldyn_status aldyn_poly_mul(const aldyn_poly* a, const aldyn_poly* b, aldyn_poly** out) {
  if (!out) return null_argument();
  *out = nullptr;
  if (!a || !b) return null_argument();
  return guard([&] { return emit(a->value * b->value, out); });
}

aldyn_status aldyn_poly_bracket(const aldyn_context* ctx, const aldyn_poly* a, const aldyn_poly* b,
                                aldyn_poly** out) {
  if (!out) return null_argument();
  *out = nullptr;
  if (!ctx || !a || !b) return null_argument();
  return guard([&] { return emit(aldyn::bracket(ctx->poisson, a->value, b->value), out); });
}

aldyn_status aldyn_poly_star(const aldyn_context* ctx, const aldyn_poly* a, const aldyn_poly* b, aldyn_poly** out) {
  if (!out) return null_argument();
  *out = nullptr;
  if (!ctx || !a || !b) return null_argument();
  return guard([&] { return emit(aldyn::star(ctx->star, a->value, b->value), out); });
}

aldyn_status aldyn_poly_star_commutator(const aldyn_context* ctx, const aldyn_poly* a, const aldyn_poly* b,
                                        aldyn_poly** out) {
  if (!out) return null_argument();
  *out = nullptr;
  if (!ctx || !a || !b) return null_argument();
  return guard([&] { return emit(aldyn::star_commutator(ctx->star, a->value, b->value), out); });
}

int aldyn_poly_equal(const aldyn_poly* a, const aldyn_poly* b) {
  if (!a || !b) return -1;
  if (!aldyn::same_generators(a->value.gens(), b->value.gens())) return -1;
  return a->value == b->value ? 1 : 0;
}

char* aldyn_poly_to_text(const aldyn_poly* p) {
  if (!p) return nullptr;
  try {
    return copy_string(aldyn::to_text(p->value));
  } catch (...) {
    return nullptr;
  }
}

char* aldyn_poly_to_json(const aldyn_poly* p) {
  if (!p) return nullptr;
  try {
    return copy_string(aldyn::io::to_json(p->value).dump());
  } catch (...) {
    return nullptr;
  }
}

void aldyn_poly_free(aldyn_poly* p) { delete p; }

}  // extern "C"
