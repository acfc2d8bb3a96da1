// Copyright 2026 The htlab Authors
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

/* C interface to htlab.  All handles are opaque; every fallible call
 * returns an htlab_status and leaves a message for htlab_last_error(). */
#ifndef HTLAB_HTLAB_H_
#define HTLAB_HTLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(HTLAB_BUILDING_LIBRARY)
#define HTLAB_API __attribute__((visibility("default")))
#else
#define HTLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum htlab_status {
  HTLAB_OK = 0,
  HTLAB_E_PARAMETER = 1,
  HTLAB_E_DOMAIN = 2,
  HTLAB_E_NO_KESTEN_ROOT = 3,
  HTLAB_E_UNSUPPORTED_BACKWARD_HORIZON = 4,
  HTLAB_E_NOT_K_DEPENDENT = 5,
  HTLAB_E_ALPHA_OUT_OF_RANGE = 6,
  HTLAB_E_UNSUPPORTED = 7,
  HTLAB_E_UNDEFINED = 8,
  HTLAB_E_PRECONDITION = 9,
  HTLAB_E_CONFIG = 10,
  HTLAB_E_IO = 11,
  HTLAB_E_INTERNAL = 12
} htlab_status;

typedef struct htlab_config htlab_config;
typedef struct htlab_report htlab_report;
typedef struct htlab_model htlab_model;

/* Message of the last failed call on this thread ("" if none). */
HTLAB_API const char* htlab_last_error(void);
HTLAB_API const char* htlab_status_name(htlab_status status);
/* Nonzero for numeric failures (no Kesten root, alpha out of range, ...). */
HTLAB_API int htlab_status_is_numeric(htlab_status status);
HTLAB_API const char* htlab_version(void);

/* Worker threads for all later calls; 0 selects hardware concurrency. */
HTLAB_API htlab_status htlab_set_threads(unsigned threads);

HTLAB_API htlab_status htlab_config_parse(const char* json_text, htlab_config** out);
HTLAB_API htlab_status htlab_config_load(const char* path, htlab_config** out);
HTLAB_API htlab_status htlab_config_set_seed(htlab_config* config, uint64_t seed);
HTLAB_API htlab_status htlab_config_set_output(htlab_config* config, const char* path);
HTLAB_API htlab_status htlab_config_set_format(htlab_config* config, const char* format);
/* Output path and format from the config ("" when unset). */
HTLAB_API const char* htlab_config_output(const htlab_config* config);
HTLAB_API const char* htlab_config_format(const htlab_config* config);
HTLAB_API double htlab_config_gate(const htlab_config* config);
/* Canonical JSON; release with htlab_string_free. */
HTLAB_API htlab_status htlab_config_dump(const htlab_config* config, char** out);
HTLAB_API void htlab_config_free(htlab_config* config);

/* subcommand: constant, ratio, ruin, hill, tailmeasure, pp, diagnose. */
HTLAB_API htlab_status htlab_run(const htlab_config* config, const char* subcommand,
                                 htlab_report** out);
HTLAB_API htlab_status htlab_verify(uint64_t seed, htlab_report** out);
/* Simulated paths as CSV text. */
HTLAB_API htlab_status htlab_simulate_csv(const htlab_config* config, char** out);

HTLAB_API size_t htlab_report_rows(const htlab_report* report);
HTLAB_API htlab_status htlab_report_row(const htlab_report* report, size_t index,
                                        const char** label, double* theory, double* empirical,
                                        double* z);
/* 1 when every finite |z| is below gate, else 0. */
HTLAB_API int htlab_report_within_gate(const htlab_report* report, double gate);
/* format: "csv" or "json"; release with htlab_string_free. */
HTLAB_API htlab_status htlab_report_render(const htlab_report* report, const char* format,
                                           char** out);
HTLAB_API htlab_status htlab_report_write(const htlab_report* report, const char* path,
                                          const char* format);
HTLAB_API void htlab_report_free(htlab_report* report);

/* model_json is the "model" object of an experiment config. */
HTLAB_API htlab_status htlab_model_create(const char* model_json, htlab_model** out);
HTLAB_API double htlab_model_alpha(const htlab_model* model);
/* P(|X| > x) from the marginal tail profile. */
HTLAB_API htlab_status htlab_model_survival(const htlab_model* model, double x, double* out);
/* Extremal index from n_draws spectral paths of horizon k (0: default). */
HTLAB_API htlab_status htlab_model_extremal_index(const htlab_model* model, size_t k,
                                                  size_t n_draws, uint64_t seed, double* value,
                                                  double* std_error);
HTLAB_API void htlab_model_free(htlab_model* model);

HTLAB_API void htlab_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* HTLAB_HTLAB_H_ */
