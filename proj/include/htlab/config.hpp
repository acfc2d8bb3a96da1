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

#pragma once

// Experiment configuration: JSON text <-> ExperimentConfig.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "htlab/estimators.hpp"
#include "htlab/models.hpp"

namespace htlab {

enum class ExperimentKind {
  ExtremalIndex,
  LdSup,
  LdSum,
  Ruin,
  Hill,
  TailMeasure,
  ClusterFunctional,
  StableCF,
  LimitPP,
  Diagnostics,
};

const char* to_string(ExperimentKind kind);
ExperimentKind experiment_from_string(const std::string& name);

struct Sizes {
  std::size_t n = 1000;      // path or window length
  std::size_t R = 1000;      // replicas
  std::size_t N = 100000;    // spectral draws
  std::size_t k = 0;         // spectral horizon, 0 = model default
  std::size_t m = 0;         // block / top-order size, 0 = default
};

// Thresholds.  x wins over target_prob, which wins over quantile.
struct Thresholds {
  std::optional<double> x;
  // Level in (0,1); x is the corresponding quantile of |X|.
  std::optional<double> quantile;
  // Target probability of the empirical event.
  std::optional<double> target_prob;
  double rho = 1.0;
  double delta = 1.0;
  double C = 12.0;
};

struct ExperimentConfig {
  ModelSpec model;
  ExperimentKind experiment = ExperimentKind::ExtremalIndex;
  Sizes sizes;
  Thresholds thresholds;
  std::string functional = "max";
  std::vector<double> frequencies{1.0};
  std::vector<double> grid;        // x grid (pp), k grid (diagnostics)
  std::vector<TestSet> test_sets;  // tail measure sets
  double quad_eps = 0.1;
  double gate = 4.0;               // |z| bound used by --assert
  std::uint64_t root_seed = 0;
  std::string output;
  std::string format = "csv";
};

// Throws Error(Config) with a line/column or field-path diagnostic.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string dump_config(const ExperimentConfig& config);

// Stable 64-bit hex digest of the canonical serialization (output path and
// format excluded).
std::string config_hash(const ExperimentConfig& config);

}  // namespace htlab
