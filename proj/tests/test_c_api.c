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

/* Exercises the C interface from plain C. */

#include <stdio.h>
#include <string.h>

#include "aldyn/aldyn.h"

static int failures = 0;

#define EXPECT(cond)                                             \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                \
    }                                                            \
  } while (0)

static int text_is(const aldyn_poly* p, const char* expected) {
  char* s = aldyn_poly_to_text(p);
  int same = s && strcmp(s, expected) == 0;
  if (!same) fprintf(stderr, "got '%s', expected '%s'\n", s ? s : "(null)", expected);
  aldyn_string_free(s);
  return same;
}

static void handles(void) {
  aldyn_context* ctx = NULL;
  aldyn_poly *q = NULL, *p = NULL, *v = NULL, *w = NULL, *expected = NULL;
  EXPECT(aldyn_context_canonical(1, &ctx) == ALDYN_OK);
  EXPECT(aldyn_context_dim(ctx) == 2);
  EXPECT(aldyn_poly_parse(ctx, "q", &q) == ALDYN_OK);
  EXPECT(aldyn_poly_parse(ctx, "p", &p) == ALDYN_OK);

  EXPECT(aldyn_poly_bracket(ctx, q, p, &v) == ALDYN_OK);
  EXPECT(text_is(v, "1"));
  aldyn_poly_free(v);

  EXPECT(aldyn_poly_star_commutator(ctx, q, p, &v) == ALDYN_OK);
  EXPECT(aldyn_poly_parse(ctx, "i*theta", &expected) == ALDYN_OK);
  EXPECT(aldyn_poly_equal(v, expected) == 1);
  aldyn_poly_free(v);
  aldyn_poly_free(expected);

  EXPECT(aldyn_poly_star(ctx, q, p, &v) == ALDYN_OK);
  EXPECT(text_is(v, "q*p + 1/2*i*theta"));

  /* JSON round trip through the handle API. */
  char* json = aldyn_poly_to_json(v);
  EXPECT(json != NULL);
  EXPECT(aldyn_poly_from_json(NULL, json, &w) == ALDYN_OK);
  EXPECT(aldyn_poly_equal(v, w) == 1);
  aldyn_string_free(json);
  aldyn_poly_free(w);
  aldyn_poly_free(v);

  EXPECT(aldyn_poly_mul(q, p, &v) == ALDYN_OK);
  EXPECT(aldyn_poly_add(v, q, &w) == ALDYN_OK);
  EXPECT(text_is(w, "q*p + q"));
  aldyn_poly_free(v);
  aldyn_poly_free(w);

  /* Failures set a status and a message; outputs stay NULL. */
  v = q;
  EXPECT(aldyn_poly_parse(ctx, "q + w", &v) == ALDYN_MALFORMED);
  EXPECT(v == NULL);
  EXPECT(strstr(aldyn_last_error(), "w") != NULL);
  EXPECT(aldyn_poly_parse(ctx, NULL, &v) == ALDYN_MALFORMED);
  EXPECT(aldyn_poly_from_json(ctx, "{not json", &v) == ALDYN_MALFORMED);
  aldyn_context* none = NULL;
  EXPECT(aldyn_context_canonical(0, &none) == ALDYN_MALFORMED);
  EXPECT(none == NULL);
  EXPECT(aldyn_poly_equal(q, NULL) == -1);

  aldyn_context* big = NULL;
  aldyn_poly* q1 = NULL;
  EXPECT(aldyn_context_canonical(2, &big) == ALDYN_OK);
  EXPECT(aldyn_poly_parse(big, "q1", &q1) == ALDYN_OK);
  EXPECT(aldyn_poly_equal(q, q1) == -1);
  EXPECT(aldyn_poly_add(q, q1, &v) == ALDYN_MALFORMED);
  aldyn_poly_free(q1);
  aldyn_context_free(big);

  aldyn_poly_free(q);
  aldyn_poly_free(p);
  aldyn_context_free(ctx);
}

static void runs(void) {
  aldyn_report* r = NULL;
  EXPECT(aldyn_run("bracket", "{\"tensor\": \"canonical2\", \"f\": \"q^2\", \"g\": \"p^2\"}", &r) == ALDYN_OK);
  EXPECT(aldyn_report_status(r) == ALDYN_OK);
  char* payload = aldyn_report_payload(r, 0);
  EXPECT(payload && strstr(payload, "\"text\": \"4*q*p\"") != NULL);
  EXPECT(payload && strstr(payload, "wall_time_ms") == NULL);
  aldyn_string_free(payload);
  payload = aldyn_report_payload(r, 1);
  EXPECT(payload && strstr(payload, "wall_time_ms") != NULL);
  aldyn_string_free(payload);
  EXPECT(aldyn_report_wall_time(r) >= 0.0);
  char* text = aldyn_report_text(r);
  EXPECT(text && strstr(text, "status: ok") != NULL);
  aldyn_string_free(text);
  aldyn_report_free(r);

  EXPECT(aldyn_run("jacobi", "{\"tensor\": {\"dim\": 3, \"components\": [{\"a\": 0, \"b\": 1, \"poly\": \"z\"},"
                             " {\"a\": 1, \"b\": 2, \"poly\": \"y\"}]}}", &r) == ALDYN_FAIL);
  aldyn_report_free(r);

  EXPECT(aldyn_run("reduce", "{\"dynamics\": \"q = 1, p = 0\", \"distribution\": [\"q = 0, p = q^2\"]}", &r) ==
         ALDYN_INCONCLUSIVE);
  aldyn_report_free(r);

  EXPECT(aldyn_run("bracket", "{\"f\": 3}", &r) == ALDYN_MALFORMED);
  EXPECT(r != NULL);
  payload = aldyn_report_payload(r, 0);
  EXPECT(payload && strstr(payload, "\"pointer\": \"/g\"") != NULL);
  aldyn_string_free(payload);
  aldyn_report_free(r);

  EXPECT(aldyn_run("bracket", "[1, 2", &r) == ALDYN_MALFORMED);
  aldyn_report_free(r);
  EXPECT(aldyn_run("nonsense", "{}", &r) == ALDYN_MALFORMED);
  aldyn_report_free(r);
  EXPECT(aldyn_run(NULL, "{}", &r) == ALDYN_MALFORMED);
  EXPECT(r == NULL);
  EXPECT(aldyn_run("bracket", "{}", NULL) == ALDYN_MALFORMED);
}

static void listing(void) {
  EXPECT(aldyn_command_count() == 21);
  EXPECT(aldyn_demo_count() == 7);
  EXPECT(aldyn_command_name(aldyn_command_count()) == NULL);
  int found = 0;
  for (size_t i = 0; i < aldyn_demo_count(); ++i) found += strcmp(aldyn_demo_name(i), "maurer-cartan") == 0;
  EXPECT(found == 1);
  EXPECT(strlen(aldyn_version()) > 0);
}

int main(void) {
  handles();
  runs();
  listing();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("c api: all checks passed\n");
  return 0;
}
