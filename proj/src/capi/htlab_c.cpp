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

#include "htlab/htlab.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "htlab/config.hpp"
#include "htlab/error.hpp"
#include "htlab/harness.hpp"
#include "htlab/limits.hpp"
#include "htlab/parallel.hpp"

struct htlab_config {
  htlab::ExperimentConfig cfg;
};

struct htlab_report {
  htlab::ComparisonReport report;
};

struct htlab_model {
  explicit htlab_model(htlab::ModelSpec spec) : model(std::move(spec)) {}
  htlab::Model model;
};

namespace {

thread_local std::string g_last_error;

htlab_status status_of(htlab::ErrorCode code) {
  using htlab::ErrorCode;
  switch (code) {
    case ErrorCode::Parameter:
      return HTLAB_E_PARAMETER;
    case ErrorCode::Domain:
      return HTLAB_E_DOMAIN;
    case ErrorCode::NoKestenRoot:
      return HTLAB_E_NO_KESTEN_ROOT;
    case ErrorCode::UnsupportedBackwardHorizon:
      return HTLAB_E_UNSUPPORTED_BACKWARD_HORIZON;
    case ErrorCode::NotKDependent:
      return HTLAB_E_NOT_K_DEPENDENT;
    case ErrorCode::AlphaOutOfRange:
      return HTLAB_E_ALPHA_OUT_OF_RANGE;
    case ErrorCode::Unsupported:
      return HTLAB_E_UNSUPPORTED;
    case ErrorCode::Undefined:
      return HTLAB_E_UNDEFINED;
    case ErrorCode::Precondition:
      return HTLAB_E_PRECONDITION;
    case ErrorCode::Config:
      return HTLAB_E_CONFIG;
    case ErrorCode::Io:
      return HTLAB_E_IO;
  }
  return HTLAB_E_INTERNAL;
}

template <class Fn>
htlab_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return HTLAB_OK;
  } catch (const htlab::Error& e) {
    g_last_error = std::string(htlab::to_string(e.code())) + ": " + e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return HTLAB_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HTLAB_E_INTERNAL;
  }
}

htlab_status null_argument(const char* name) {
  g_last_error = std::string("ParameterError: null argument '") + name + "'";
  return HTLAB_E_PARAMETER;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* htlab_last_error(void) { return g_last_error.c_str(); }

const char* htlab_status_name(htlab_status status) {
  switch (status) {
    case HTLAB_OK:
      return "Ok";
    case HTLAB_E_INTERNAL:
      return "InternalError";
    default:
      if (status > HTLAB_OK && status < HTLAB_E_INTERNAL)
        return htlab::to_string(static_cast<htlab::ErrorCode>(status - 1));
      return "UnknownStatus";
  }
}

int htlab_status_is_numeric(htlab_status status) {
  if (status <= HTLAB_OK || status >= HTLAB_E_INTERNAL) return 0;
  return htlab::is_numeric(static_cast<htlab::ErrorCode>(status - 1)) ? 1 : 0;
}

const char* htlab_version(void) { return HTLAB_VERSION_STRING; }

htlab_status htlab_set_threads(unsigned threads) {
  return guarded([&] { htlab::set_thread_count(threads); });
}

htlab_status htlab_config_parse(const char* json_text, htlab_config** out) {
  if (json_text == nullptr) return null_argument("json_text");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new htlab_config{htlab::parse_config(json_text)}; });
}

htlab_status htlab_config_load(const char* path, htlab_config** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new htlab_config{htlab::load_config(path)}; });
}

htlab_status htlab_config_set_seed(htlab_config* config, uint64_t seed) {
  if (config == nullptr) return null_argument("config");
  config->cfg.root_seed = seed;
  return HTLAB_OK;
}

htlab_status htlab_config_set_output(htlab_config* config, const char* path) {
  if (config == nullptr) return null_argument("config");
  if (path == nullptr) return null_argument("path");
  config->cfg.output = path;
  return HTLAB_OK;
}

htlab_status htlab_config_set_format(htlab_config* config, const char* format) {
  if (config == nullptr) return null_argument("config");
  if (format == nullptr) return null_argument("format");
  return guarded([&] {
    const std::string f = format;
    htlab::require(f == "csv" || f == "json", htlab::ErrorCode::Config,
                   "format must be 'csv' or 'json'");
    config->cfg.format = f;
  });
}

const char* htlab_config_output(const htlab_config* config) {
  return config == nullptr ? "" : config->cfg.output.c_str();
}

const char* htlab_config_format(const htlab_config* config) {
  return config == nullptr ? "" : config->cfg.format.c_str();
}

double htlab_config_gate(const htlab_config* config) {
  return config == nullptr ? 4.0 : config->cfg.gate;
}

htlab_status htlab_config_dump(const htlab_config* config, char** out) {
  if (config == nullptr) return null_argument("config");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = copy_string(htlab::dump_config(config->cfg)); });
}

void htlab_config_free(htlab_config* config) { delete config; }

htlab_status htlab_run(const htlab_config* config, const char* subcommand, htlab_report** out) {
  if (config == nullptr) return null_argument("config");
  if (subcommand == nullptr) return null_argument("subcommand");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const auto cmd = htlab::subcommand_from_string(subcommand);
    htlab::require(cmd != htlab::Subcommand::Simulate && cmd != htlab::Subcommand::Verify,
                   htlab::ErrorCode::Config,
                   "use htlab_simulate_csv / htlab_verify for this subcommand");
    *out = new htlab_report{htlab::run(config->cfg, cmd)};
  });
}

htlab_status htlab_verify(uint64_t seed, htlab_report** out) {
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new htlab_report{htlab::verify_suite(seed)}; });
}

htlab_status htlab_simulate_csv(const htlab_config* config, char** out) {
  if (config == nullptr) return null_argument("config");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = copy_string(htlab::simulate_csv(config->cfg)); });
}

size_t htlab_report_rows(const htlab_report* report) {
  return report == nullptr ? 0 : report->report.rows.size();
}

htlab_status htlab_report_row(const htlab_report* report, size_t index, const char** label,
                              double* theory, double* empirical, double* z) {
  if (report == nullptr) return null_argument("report");
  if (index >= report->report.rows.size()) {
    g_last_error = "ParameterError: row index out of range";
    return HTLAB_E_PARAMETER;
  }
  const auto& row = report->report.rows[index];
  if (label) *label = row.experiment.c_str();
  if (theory) *theory = row.theory;
  if (empirical) *empirical = row.empirical;
  if (z) *z = row.z;
  return HTLAB_OK;
}

int htlab_report_within_gate(const htlab_report* report, double gate) {
  return report != nullptr && htlab::within_gate(report->report, gate) ? 1 : 0;
}

htlab_status htlab_report_render(const htlab_report* report, const char* format, char** out) {
  if (report == nullptr) return null_argument("report");
  if (format == nullptr) return null_argument("format");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = copy_string(htlab::render(report->report, format)); });
}

htlab_status htlab_report_write(const htlab_report* report, const char* path, const char* format) {
  if (report == nullptr) return null_argument("report");
  if (path == nullptr) return null_argument("path");
  if (format == nullptr) return null_argument("format");
  return guarded([&] { htlab::write_report(report->report, path, format); });
}

void htlab_report_free(htlab_report* report) { delete report; }

htlab_status htlab_model_create(const char* model_json, htlab_model** out) {
  if (model_json == nullptr) return null_argument("model_json");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const std::string doc =
        std::string("{\"model\":") + model_json + ",\"experiment\":\"ExtremalIndex\"}";
    *out = new htlab_model(htlab::parse_config(doc).model);
  });
}

double htlab_model_alpha(const htlab_model* model) {
  return model == nullptr ? 0.0 : model->model.alpha();
}

htlab_status htlab_model_survival(const htlab_model* model, double x, double* out) {
  if (model == nullptr) return null_argument("model");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = model->model.tail().survival(x); });
}

htlab_status htlab_model_extremal_index(const htlab_model* model, size_t k, size_t n_draws,
                                        uint64_t seed, double* value, double* std_error) {
  if (model == nullptr) return null_argument("model");
  if (value == nullptr) return null_argument("value");
  return guarded([&] {
    const std::size_t horizon = k > 0 ? k : model->model.default_horizon();
    const auto est = htlab::extremal_index(model->model, horizon, n_draws, htlab::SeedLineage{seed, {1}});
    *value = est.value;
    if (std_error) *std_error = est.std_error;
  });
}

void htlab_model_free(htlab_model* model) { delete model; }

void htlab_string_free(char* s) { std::free(s); }

}  // extern "C"
