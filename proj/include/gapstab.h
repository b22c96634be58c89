// Copyright 2026 The gapstab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAPSTAB_H
#define GAPSTAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GAPSTAB_API __declspec(dllexport)
#elif defined(__GNUC__)
#define GAPSTAB_API __attribute__((visibility("default")))
#else
#define GAPSTAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gapstab_status {
    GAPSTAB_OK = 0,
    GAPSTAB_INVALID_ARGUMENT = 1,
    GAPSTAB_INVALID_PVM = 2,
    GAPSTAB_INVALID_REPRESENTATION = 3,
    GAPSTAB_INVALID_FIELD = 4,
    GAPSTAB_NON_GENERATING = 5,
    GAPSTAB_RANK_DEFICIENT = 6,
    GAPSTAB_RESOURCE = 7,
    GAPSTAB_SAMPLING_FAILURE = 8,
    GAPSTAB_PRECONDITION_VIOLATION = 9,
    GAPSTAB_DEGENERATE = 10,
    GAPSTAB_INPUT = 11,
    GAPSTAB_BOUND_VIOLATION = 12,
    GAPSTAB_INTERNAL = 13
} gapstab_status;

typedef struct gapstab_game gapstab_game;
typedef struct gapstab_strategy gapstab_strategy;
typedef struct gapstab_suite gapstab_suite;

typedef struct gapstab_suite_options {
    uint64_t seed;
    int trials;         /* 0 = suite default */
    double tol;         /* absolute slack on every bound */
    int64_t dim_cap;    /* largest dense matrix formed */
    unsigned threads;   /* 0 = hardware concurrency */
} gapstab_suite_options;

typedef struct gapstab_sweep_options {
    uint64_t seed;
    int points;
    double sigma_min;
    double sigma_max;
    double tol;
    int64_t dim_cap;
    unsigned threads;
} gapstab_sweep_options;

GAPSTAB_API const char *gapstab_version(void);
GAPSTAB_API const char *gapstab_status_name(gapstab_status status);
/* Message of the last failed call on this thread; empty after a success. */
GAPSTAB_API const char *gapstab_last_error(void);
/* Releases strings returned through char ** out parameters. */
GAPSTAB_API void gapstab_string_free(char *s);

GAPSTAB_API void gapstab_suite_options_default(gapstab_suite_options *opt);
GAPSTAB_API void gapstab_sweep_options_default(gapstab_sweep_options *opt);

/* Spectral gap of a measure given as JSON {"group": ..., "weights" | "multiset": ...}. */
GAPSTAB_API gapstab_status gapstab_kappa(const char *measure_json, char **report_json);
/* Parameters of a code in text format and the predicted-kappa cross-check. */
GAPSTAB_API gapstab_status gapstab_code_report(const char *code_text, char **report_json);

GAPSTAB_API gapstab_status gapstab_game_commutation(int a1, int a2, gapstab_game **out);
GAPSTAB_API gapstab_status gapstab_game_magic_square(gapstab_game **out);
GAPSTAB_API gapstab_status gapstab_game_from_codes(const char *code_text, const char *code_prime_text,
                                                   gapstab_game **out);
/* Game from a sampled or exhaustive binary code of length 4n and dimension n. */
GAPSTAB_API gapstab_status gapstab_game_gn(int n, uint64_t seed, gapstab_game **out);
GAPSTAB_API gapstab_status gapstab_game_from_json(const char *json, gapstab_game **out);
GAPSTAB_API gapstab_status gapstab_game_to_json(const gapstab_game *game, char **json);
GAPSTAB_API int gapstab_game_num_questions(const gapstab_game *game);
GAPSTAB_API void gapstab_game_free(gapstab_game *game);

GAPSTAB_API gapstab_status gapstab_strategy_honest(const gapstab_game *game, gapstab_strategy **out);
GAPSTAB_API gapstab_status gapstab_strategy_from_json(const char *json, gapstab_strategy **out);
GAPSTAB_API gapstab_status gapstab_strategy_to_json(const gapstab_strategy *s, char **json);
GAPSTAB_API gapstab_status gapstab_strategy_perturb(const gapstab_strategy *s, double sigma, uint64_t seed,
                                                    gapstab_strategy **out);
GAPSTAB_API void gapstab_strategy_free(gapstab_strategy *s);

GAPSTAB_API gapstab_status gapstab_value(const gapstab_game *game, const gapstab_strategy *s, double *value);
/* Value, direct value, per-stage failures and the Lemma-type bound checks that apply to the game. */
GAPSTAB_API gapstab_status gapstab_evaluate(const gapstab_game *game, const gapstab_strategy *s, char **report_json);
GAPSTAB_API gapstab_status gapstab_rigidity(const gapstab_game *game, const gapstab_strategy *s, uint64_t seed,
                                            int64_t dim_cap, char **report_json);
/* Gowers-Hatami rounding of an almost homomorphism given as JSON {"group", "algebra", "values"}. */
GAPSTAB_API gapstab_status gapstab_round(const char *almost_hom_json, uint64_t seed, int64_t dim_cap,
                                         int include_matrices, char **certificate_json);

GAPSTAB_API size_t gapstab_suite_count(void);
GAPSTAB_API const char *gapstab_suite_name(size_t index);
GAPSTAB_API gapstab_status gapstab_verify(const char *suite, const gapstab_suite_options *opt, gapstab_suite **out);
GAPSTAB_API gapstab_status gapstab_sweep(const gapstab_game *game, const gapstab_sweep_options *opt,
                                         gapstab_suite **out);
GAPSTAB_API int gapstab_suite_passed(const gapstab_suite *suite);
GAPSTAB_API int gapstab_suite_trials(const gapstab_suite *suite);
GAPSTAB_API int gapstab_suite_violations(const gapstab_suite *suite);
GAPSTAB_API double gapstab_suite_worst_ratio(const gapstab_suite *suite);
GAPSTAB_API gapstab_status gapstab_suite_csv(const gapstab_suite *suite, char **csv);
GAPSTAB_API gapstab_status gapstab_suite_summary(const gapstab_suite *suite, char **text);
GAPSTAB_API gapstab_status gapstab_suite_json(const gapstab_suite *suite, char **json);
GAPSTAB_API void gapstab_suite_free(gapstab_suite *suite);

#ifdef __cplusplus
}
#endif

#endif
