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

// Theory-versus-empirical comparison reports and their CSV/JSON renderings.

#include <cstdint>
#include <string>
#include <vector>

namespace htlab {

struct ComparisonRow {
  std::string experiment;
  double theory = 0.0;
  double theory_se = 0.0;
  double empirical = 0.0;
  double empirical_se = 0.0;
  double z = 0.0;
  std::string flags;
  std::size_t horizon = 0;
  double tail_bound = 0.0;
  std::string theory_lineage;
  std::string empirical_lineage;
};

struct ComparisonReport {
  std::string experiment;
  std::string model;
  std::string config_hash;
  std::uint64_t root_seed = 0;
  std::vector<ComparisonRow> rows;
};

// NaN-aware field-by-field equality.
bool operator==(const ComparisonRow& a, const ComparisonRow& b);
bool operator==(const ComparisonReport& a, const ComparisonReport& b);

// One row per compared quantity; RFC-4180 quoting.
std::string render_csv(const ComparisonReport& report);
std::string render_json(const ComparisonReport& report);
ComparisonReport parse_report_json(const std::string& text);

// format is "csv" or "json".  Throws Error(Io) when the path is unwritable.
void write_report(const ComparisonReport& report, const std::string& path,
                  const std::string& format);
std::string render(const ComparisonReport& report, const std::string& format);

// True when every finite z satisfies |z| < gate.
bool within_gate(const ComparisonReport& report, double gate);

}  // namespace htlab
