/*
 * Copyright 2026 The ksred Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the ksred library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a ksred_status; on failure the output
 * arguments are untouched and ksred_last_error() describes the problem
 * (per thread, valid until the next failing call on that thread).
 * Strings returned through char** are owned by the caller and released
 * with ksred_string_free. Result structs own their strings and are
 * released with their *_clear function, which also zeroes them.
 */

#ifndef KSRED_KSRED_H
#define KSRED_KSRED_H

#include <stddef.h>
#include <stdint.h>

#if defined(KSRED_BUILDING_LIBRARY)
#define KSRED_API __attribute__((visibility("default")))
#else
#define KSRED_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  KSRED_OK = 0,
  KSRED_ERR_PARSE = 1,            /* malformed .ks, .part or formula text */
  KSRED_ERR_INVALID_ARGUMENT = 2, /* null handle, bad bound, size mismatch */
  KSRED_ERR_PRECONDITION = 3,     /* e.g. quotient by a non-KME, missing predecessor */
  KSRED_ERR_LIMIT = 4,            /* exhaustive search refused */
  KSRED_ERR_IO = 5,               /* file could not be read */
  KSRED_ERR_INTERNAL = 6
} ksred_status;

typedef enum { KSRED_MODE_KME = 0, KSRED_MODE_WKME = 1 } ksred_mode;

typedef enum {
  KSRED_METHOD_BISIM = 0,
  KSRED_METHOD_STUTTER_BISIM = 1, /* divergence sensitive */
  KSRED_METHOD_KME = 2,
  KSRED_METHOD_WKME = 3
} ksred_method;

typedef enum { KSRED_STRATEGY_GREEDY = 0, KSRED_STRATEGY_EXHAUSTIVE = 1 } ksred_strategy;

typedef enum { KSRED_SEMANTICS_TRACE = 0, KSRED_SEMANTICS_STUTTER_TRACE = 1 } ksred_semantics;

typedef struct ksred_model ksred_model;
typedef struct ksred_partition ksred_partition;

KSRED_API const char* ksred_version(void);
KSRED_API const char* ksred_last_error(void);
KSRED_API const char* ksred_status_name(ksred_status status);
KSRED_API void ksred_string_free(char* s);

/* Models ------------------------------------------------------------------ */

KSRED_API ksred_status ksred_model_parse(const char* text, ksred_model** out);
KSRED_API ksred_status ksred_model_load(const char* path, ksred_model** out);
KSRED_API void ksred_model_free(ksred_model* model);
KSRED_API ksred_status ksred_model_serialize(const ksred_model* model, char** out);
KSRED_API size_t ksred_model_num_states(const ksred_model* model);
KSRED_API size_t ksred_model_num_transitions(const ksred_model* model);
/* 1 if some state carries the root atom, else 0. */
KSRED_API int ksred_model_has_root(const ksred_model* model);

typedef struct {
  int added_root;     /* a root state was appended */
  int marked_initial; /* the initial marker was added */
} ksred_normalize_report;

/* Adds the root (only if some state lacks a predecessor) and the initial
 * marker. report may be NULL. */
KSRED_API ksred_status ksred_model_normalize(const ksred_model* model, ksred_model** out,
                                             ksred_normalize_report* report);
/* Removes root states and reserved atoms. */
KSRED_API ksred_status ksred_model_strip(const ksred_model* model, ksred_model** out);
/* Label- and initial-preserving isomorphism; *out is 0 or 1. */
KSRED_API ksred_status ksred_model_isomorphic(const ksred_model* a, const ksred_model* b, int* out);
/* Random total model, reproducible from seed on every platform. */
KSRED_API ksred_status ksred_model_generate(size_t states, size_t aps, double density, uint64_t seed,
                                            ksred_model** out);

/* Partitions -------------------------------------------------------------- */

KSRED_API ksred_status ksred_partition_parse(const ksred_model* model, const char* text, ksred_partition** out);
KSRED_API ksred_status ksred_partition_load(const ksred_model* model, const char* path, ksred_partition** out);
KSRED_API void ksred_partition_free(ksred_partition* partition);
/* One block per line, members by name. */
KSRED_API ksred_status ksred_partition_serialize(const ksred_partition* partition, const ksred_model* model,
                                                 char** out);
/* Same, leaving out blocks that contain a root state of model. */
KSRED_API ksred_status ksred_partition_serialize_user(const ksred_partition* partition, const ksred_model* model,
                                                      char** out);
KSRED_API size_t ksred_partition_num_blocks(const ksred_partition* partition);
/* Blocks not containing a root state of model. */
KSRED_API ksred_status ksred_partition_num_user_blocks(const ksred_partition* partition, const ksred_model* model,
                                                       size_t* out);
/* Adds singleton blocks for states num_blocks..num_states-1 (e.g. a root
 * appended by normalization). */
KSRED_API ksred_status ksred_partition_extend(const ksred_partition* partition, size_t num_states,
                                              ksred_partition** out);

/* Checks and reductions --------------------------------------------------- */

typedef enum {
  KSRED_WITNESS_NONE = 0,
  KSRED_WITNESS_LABEL_MISMATCH = 1,
  KSRED_WITNESS_PBR_MISMATCH = 2,
  KSRED_WITNESS_WPBR_MISMATCH = 3,
  KSRED_WITNESS_DIVERGENCE_MISMATCH = 4
} ksred_witness_kind;

typedef struct {
  int accepted;
  ksred_witness_kind kind;
  char* block_c;     /* blocks as "{x y}", states by name */
  char* block_d;     /* NULL when the witness has no second block */
  char* pred_a;
  char* pred_b;
  int value_a;
  int value_b;
  char* description; /* one line */
} ksred_check_result;

KSRED_API void ksred_check_result_clear(ksred_check_result* result);

/* The model must give every state a predecessor (normalize first). */
KSRED_API ksred_status ksred_check(const ksred_model* model, const ksred_partition* partition, ksred_mode mode,
                                   ksred_check_result* out);
KSRED_API ksred_status ksred_quotient(const ksred_model* model, const ksred_partition* partition, ksred_mode mode,
                                      ksred_model** out);
/* Strategy is ignored for the bisimulation methods. */
KSRED_API ksred_status ksred_minimize(const ksred_model* model, ksred_method method, ksred_strategy strategy,
                                      ksred_partition** out);
/* The model and its quotient by partition are related by a pairing
 * (W)KME on their disjoint union; *out is 0 or 1. */
KSRED_API ksred_status ksred_quotient_related(const ksred_model* model, const ksred_partition* partition,
                                              ksred_mode mode, int* out);

/* Oracles ----------------------------------------------------------------- */

typedef struct {
  int equivalent;
  int divergence; /* 0: prefix witness, 1: divergence witness */
  int in_first;   /* the first model has the witnessed behaviour */
  char** letters; /* witness word, each letter as "{a b}" */
  size_t length;
} ksred_equiv_result;

KSRED_API void ksred_equiv_result_clear(ksred_equiv_result* result);
KSRED_API ksred_status ksred_equiv(const ksred_model* a, const ksred_model* b, ksred_semantics semantics,
                                   ksred_equiv_result* out);

typedef struct {
  int holds;           /* on every lasso within the bounds */
  int uses_next;
  size_t lassos_checked;
  char* formula;       /* parsed form, fully parenthesized */
  char* counterexample; /* lasso by state names, NULL if none */
  char* counterexample_word;
} ksred_ltl_result;

KSRED_API void ksred_ltl_result_clear(ksred_ltl_result* result);
KSRED_API ksred_status ksred_ltl_check(const ksred_model* model, const char* formula, size_t stem_bound,
                                       size_t loop_bound, ksred_ltl_result* out);

/* Composition ------------------------------------------------------------- */

KSRED_API ksred_status ksred_compose(const ksred_model* a, const ksred_model* b, int reachable_only,
                                     ksred_model** out);

typedef struct {
  size_t left_states;  /* normalized model x other */
  size_t right_states; /* normalized quotient x other */
  int trace_equivalent;
  int strict;          /* pairing KME on the disjoint union */
} ksred_compositionality_result;

/* The partition must be a KME of model, which must be normalized. */
KSRED_API ksred_status ksred_compositionality(const ksred_model* model, const ksred_partition* partition,
                                              const ksred_model* other, ksred_compositionality_result* out);

/* Self-test --------------------------------------------------------------- */

typedef struct {
  size_t cases;      /* random structures */
  size_t pair_cases; /* random pairs for the oracle cross-validation */
  uint64_t seed;
  size_t threads;    /* 0: environment variable KSRED_THREADS, else 1 */
} ksred_selftest_options;

typedef struct {
  char* suite; /* "reduction" or "oracle" */
  char* name;
  size_t checked;
  size_t violations;
  char* first_failure; /* NULL if none */
} ksred_property;

typedef struct {
  int passed;
  ksred_property* properties;
  size_t num_properties;
  size_t literal_wkme_checked;
  size_t literal_wkme_findings;
  double elapsed_ms;
} ksred_selftest_report;

KSRED_API void ksred_selftest_defaults(ksred_selftest_options* options);
KSRED_API void ksred_selftest_report_clear(ksred_selftest_report* report);
KSRED_API ksred_status ksred_selftest(const ksred_selftest_options* options, ksred_selftest_report* out);

#ifdef __cplusplus
}
#endif

#endif /* KSRED_KSRED_H */
