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

/* C interface of the aldyn engine. Every object is an opaque handle owned by
 * the caller and released with the matching *_free function. Functions that
 * can fail return an aldyn_status; the message of the last failure on the
 * calling thread is available from aldyn_last_error(). Strings returned as
 * `char*` are released with aldyn_string_free. */

#ifndef ALDYN_ALDYN_H
#define ALDYN_ALDYN_H

#include <stddef.h>

#if defined(_WIN32)
#define ALDYN_API __declspec(dllexport)
#else
#define ALDYN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aldyn_status {
  ALDYN_OK = 0,
  ALDYN_FAIL = 1,
  ALDYN_MALFORMED = 2,
  ALDYN_INCONCLUSIVE = 3,
  ALDYN_INTERNAL = 4
} aldyn_status;

typedef struct aldyn_report aldyn_report;
typedef struct aldyn_context aldyn_context;
typedef struct aldyn_poly aldyn_poly;

ALDYN_API const char* aldyn_version(void);
ALDYN_API const char* aldyn_last_error(void);
ALDYN_API void aldyn_string_free(char* s);

/* Runs a subcommand on a JSON request. `*out` is always set (also on
 * malformed input) and the return value equals aldyn_report_status(*out),
 * except for ALDYN_MALFORMED with `*out` NULL when an argument is NULL. */
ALDYN_API aldyn_status aldyn_run(const char* command, const char* request_json, aldyn_report** out);
ALDYN_API aldyn_status aldyn_report_status(const aldyn_report* r);
/* JSON payload; wall time is included only when with_timing is nonzero. */
ALDYN_API char* aldyn_report_payload(const aldyn_report* r, int with_timing);
ALDYN_API char* aldyn_report_text(const aldyn_report* r);
ALDYN_API double aldyn_report_wall_time(const aldyn_report* r);
ALDYN_API void aldyn_report_free(aldyn_report* r);

ALDYN_API size_t aldyn_command_count(void);
ALDYN_API const char* aldyn_command_name(size_t i);
ALDYN_API size_t aldyn_demo_count(void);
ALDYN_API const char* aldyn_demo_name(size_t i);

/* Canonical phase space with `pairs` position/momentum pairs: (q, p) for
 * one pair, (q1, p1, q2, p2, ...) otherwise. */
ALDYN_API aldyn_status aldyn_context_canonical(int pairs, aldyn_context** out);
ALDYN_API size_t aldyn_context_dim(const aldyn_context* ctx);
ALDYN_API void aldyn_context_free(aldyn_context* ctx);

ALDYN_API aldyn_status aldyn_poly_parse(const aldyn_context* ctx, const char* text, aldyn_poly** out);
ALDYN_API aldyn_status aldyn_poly_from_json(const aldyn_context* ctx, const char* json, aldyn_poly** out);
ALDYN_API aldyn_status aldyn_poly_add(const aldyn_poly* a, const aldyn_poly* b, aldyn_poly** out);
ALDYN_API aldyn_status aldyn_poly_mul(const aldyn_poly* a, const aldyn_poly* b, aldyn_poly** out);
ALDYN_API aldyn_status aldyn_poly_bracket(const aldyn_context* ctx, const aldyn_poly* a, const aldyn_poly* b,
                                          aldyn_poly** out);
ALDYN_API aldyn_status aldyn_poly_star(const aldyn_context* ctx, const aldyn_poly* a, const aldyn_poly* b,
                                       aldyn_poly** out);
ALDYN_API aldyn_status aldyn_poly_star_commutator(const aldyn_context* ctx, const aldyn_poly* a,
                                                  const aldyn_poly* b, aldyn_poly** out);
/* 1 when equal, 0 when not, -1 on a NULL argument or foreign generators. */
ALDYN_API int aldyn_poly_equal(const aldyn_poly* a, const aldyn_poly* b);
ALDYN_API char* aldyn_poly_to_text(const aldyn_poly* p);
ALDYN_API char* aldyn_poly_to_json(const aldyn_poly* p);
ALDYN_API void aldyn_poly_free(aldyn_poly* p);

#ifdef __cplusplus
}
#endif

#endif /* ALDYN_ALDYN_H */
