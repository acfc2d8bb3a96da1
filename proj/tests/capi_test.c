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

#include <math.h>
#include <stdio.h>
#include <string.h>

#include "htlab/htlab.h"

static int failures = 0;

#define EXPECT(cond)                                               \
  do {                                                             \
    if (!(cond)) {                                                 \
      fprintf(stderr, "%s:%d: %s failed\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                  \
    }                                                              \
  } while (0)

static const char* kConfig =
    "{\"model\": {\"family\": \"iid\", \"law\": {\"type\": \"pareto\", \"alpha\": 3}},"
    " \"experiment\": \"Ruin\", \"sizes\": {\"R\": 2000, \"N\": 1000},"
    " \"thresholds\": {\"x\": 5}, \"root_seed\": 3}";

int main(void) {
  htlab_config* cfg = NULL;
  htlab_report* report = NULL;
  htlab_model* model = NULL;
  char* text = NULL;

  EXPECT(strcmp(htlab_version(), "0.1.0") == 0);
  EXPECT(strcmp(htlab_status_name(HTLAB_E_NO_KESTEN_ROOT), "NoKestenRoot") == 0);
  EXPECT(htlab_status_is_numeric(HTLAB_E_ALPHA_OUT_OF_RANGE));
  EXPECT(!htlab_status_is_numeric(HTLAB_E_CONFIG));

  EXPECT(htlab_config_parse("{\"model\": ", &cfg) == HTLAB_E_CONFIG);
  EXPECT(cfg == NULL);
  EXPECT(strstr(htlab_last_error(), "line 1") != NULL);

  EXPECT(htlab_config_parse(kConfig, &cfg) == HTLAB_OK);
  EXPECT(htlab_config_set_format(cfg, "xml") == HTLAB_E_CONFIG);
  EXPECT(htlab_config_set_format(cfg, "json") == HTLAB_OK);
  EXPECT(strcmp(htlab_config_format(cfg), "json") == 0);
  EXPECT(htlab_config_gate(cfg) == 4.0);
  EXPECT(htlab_config_dump(cfg, &text) == HTLAB_OK);
  EXPECT(strstr(text, "\"Ruin\"") != NULL);
  htlab_string_free(text);

  EXPECT(htlab_run(cfg, "hill", &report) == HTLAB_E_CONFIG);
  EXPECT(htlab_run(cfg, "ruin", &report) == HTLAB_OK);
  EXPECT(htlab_report_rows(report) >= 1);
  {
    const char* label = NULL;
    double theory = 0, empirical = 0, z = 0;
    EXPECT(htlab_report_row(report, 0, &label, &theory, &empirical, &z) == HTLAB_OK);
    EXPECT(label != NULL && strstr(label, "ruin") != NULL);
    EXPECT(theory == 0.5);
    EXPECT(htlab_report_row(report, 1000, &label, &theory, &empirical, &z) == HTLAB_E_PARAMETER);
  }
  EXPECT(htlab_report_render(report, "csv", &text) == HTLAB_OK);
  EXPECT(strncmp(text, "experiment,theory,", 18) == 0);
  htlab_string_free(text);
  EXPECT(htlab_report_write(report, "/nonexistent-dir/x.csv", "csv") == HTLAB_E_IO);
  htlab_report_free(report);
  htlab_config_free(cfg);

  EXPECT(htlab_model_create("{\"family\": \"sre\", \"a\": {\"type\": \"constant\", \"value\": 0.5},"
                            " \"b\": {\"type\": \"pareto\", \"alpha\": 3}, \"regime\": \"goldie\"}",
                            &model) == HTLAB_E_NO_KESTEN_ROOT);
  EXPECT(htlab_model_create("{\"family\": \"ma\", \"psi\": [1, 1],"
                            " \"noise\": {\"type\": \"pareto\", \"alpha\": 1}}",
                            &model) == HTLAB_OK);
  EXPECT(htlab_model_alpha(model) == 1.0);
  {
    double p = 0, g = 0, se = 0;
    EXPECT(htlab_model_survival(model, 100.0, &p) == HTLAB_OK);
    EXPECT(fabs(p - 0.02) < 1e-3);
    EXPECT(htlab_model_extremal_index(model, 0, 100000, 5, &g, &se) == HTLAB_OK);
    EXPECT(fabs(g - 0.5) < 4 * se + 1e-12);
  }
  htlab_model_free(model);

  htlab_config_free(NULL);
  htlab_report_free(NULL);
  htlab_string_free(NULL);

  if (failures) fprintf(stderr, "%d C API checks failed\n", failures);
  return failures ? 1 : 0;
}
