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

// Experiment driver: theory (limits) and empirics (estimators) side by side.

#include <cstdint>
#include <string>

#include "htlab/config.hpp"
#include "htlab/report.hpp"

namespace htlab {

enum class Subcommand { Simulate, Constant, Ratio, Ruin, Hill, TailMeasure, Pp, Diagnose, Verify };

const char* to_string(Subcommand cmd);
// Throws Error(Config) for unknown names.
Subcommand subcommand_from_string(const std::string& name);

// Runs the configured experiment.  The subcommand must fit the experiment
// kind; Constant evaluates the theory side only.  Theory draws come from
// lineage root/1 and empirical draws from root/2.
ComparisonReport run(const ExperimentConfig& config, Subcommand cmd);

// Simulated paths as CSV rows (replica, t, value).
std::string simulate_csv(const ExperimentConfig& config);

// Curated suite of reduced-size acceptance experiments.
ComparisonReport verify_suite(std::uint64_t root_seed);

}  // namespace htlab
