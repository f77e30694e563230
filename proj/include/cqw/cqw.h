/*
 * Copyright 2026 The cqwiretap Authors
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
#ifndef CQW_CQW_H
#define CQW_CQW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CQW_BUILDING_LIBRARY)
#define CQW_API __declspec(dllexport)
#else
#define CQW_API __declspec(dllimport)
#endif
#else
#define CQW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status; on failure cqw_last_error() holds a
 * message for the calling thread until its next failing call. */
typedef enum cqw_status {
  CQW_OK = 0,
  CQW_ERR_INVALID_ARGUMENT = 1,
  CQW_ERR_PARSE = 2,
  CQW_ERR_IO = 3,
  CQW_ERR_NUMERIC = 4,
  CQW_ERR_RESOURCE = 5,
  CQW_ERR_INTERNAL = 6
} cqw_status;

typedef struct cqw_channel cqw_channel;
typedef struct cqw_report cqw_report;
typedef struct cqw_curve cqw_curve;
typedef struct cqw_verify_result cqw_verify_result;

CQW_API const char* cqw_version(void);
CQW_API const char* cqw_last_error(void);
CQW_API const char* cqw_status_name(cqw_status status);
/* Releases strings returned through char** out-parameters. */
CQW_API void cqw_string_free(char* s);

/* ---- channels ---- */
CQW_API cqw_status cqw_channel_load(const char* path, cqw_channel** out);
CQW_API cqw_status cqw_channel_parse(const char* json_text, cqw_channel** out);
CQW_API cqw_status cqw_channel_save(const cqw_channel* ch, const char* path);
CQW_API cqw_status cqw_channel_to_json(const cqw_channel* ch, char** out);
/* BPSK coherent states through a pure-loss channel of transmissivity eta. */
CQW_API cqw_status cqw_channel_bpsk(double eta, double nbar, cqw_channel** out);
CQW_API size_t cqw_channel_symbol_count(const cqw_channel* ch);
CQW_API void cqw_channel_free(cqw_channel* ch);

/* ---- bounds ---- */
/* Negative slack values and n = 0 mean "not given". p_x may be NULL: the
 * distribution stored in the channel file is used, else the uniform one. */
typedef struct cqw_bound_options {
  double eps1;
  double eps2;
  double eta1;
  double eta2;
  uint64_t n;
  int maximal_error;
  const double* p_x;
  size_t p_x_len;
} cqw_bound_options;

/* eps1 = eps2 = 0.01; everything else unset. */
CQW_API void cqw_bound_options_init(cqw_bound_options* opts);

CQW_API cqw_status cqw_bound_public(const cqw_channel* ch, const cqw_bound_options* opts, cqw_report** out);
CQW_API cqw_status cqw_bound_private(const cqw_channel* ch, const cqw_bound_options* opts, cqw_report** out);
CQW_API cqw_status cqw_bound_second_order(const cqw_channel* ch, const cqw_bound_options* opts, cqw_report** out);

CQW_API int cqw_report_valid(const cqw_report* r);
CQW_API double cqw_report_rate(const cqw_report* r);
CQW_API size_t cqw_report_term_count(const cqw_report* r);
/* *name stays owned by the report. */
CQW_API cqw_status cqw_report_term(const cqw_report* r, size_t index, const char** name, double* value_bits);
/* Looks up terms first, then derived quantities. */
CQW_API cqw_status cqw_report_find(const cqw_report* r, const char* name, double* value_bits);
CQW_API cqw_status cqw_report_json(const cqw_report* r, char** out);
CQW_API void cqw_report_free(cqw_report* r);

/* ---- BPSK curve ---- */
CQW_API cqw_status cqw_bpsk_curve(double eta, double nbar, double eps1, double eps2, double n_min, double n_max,
                                  size_t points, cqw_curve** out);
CQW_API size_t cqw_curve_size(const cqw_curve* c);
CQW_API cqw_status cqw_curve_row(const cqw_curve* c, size_t index, uint64_t* n, double* normal_approx,
                                 double* asymptote, double* capacity);
CQW_API cqw_status cqw_curve_csv(const cqw_curve* c, char** out);
CQW_API cqw_status cqw_curve_write_csv(const cqw_curve* c, const char* path);
CQW_API void cqw_curve_free(cqw_curve* c);

/* ---- verification suites ---- */
/* Suites: np, hn, convex-split, prop1, protocol, metrics. trials = 0 picks
 * the suite default. An unknown suite is CQW_ERR_INVALID_ARGUMENT. */
CQW_API cqw_status cqw_verify_run(const char* suite, uint64_t seed, size_t trials, cqw_verify_result** out);
CQW_API int cqw_verify_passed(const cqw_verify_result* r);
CQW_API size_t cqw_verify_assertion_count(const cqw_verify_result* r);
CQW_API cqw_status cqw_verify_assertion(const cqw_verify_result* r, size_t index, const char** name,
                                        size_t* passed, size_t* total, double* extreme);
CQW_API cqw_status cqw_verify_summary(const cqw_verify_result* r, char** out);
CQW_API void cqw_verify_free(cqw_verify_result* r);

#ifdef __cplusplus
}
#endif

#endif /* CQW_CQW_H */
