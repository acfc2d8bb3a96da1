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

#include <cstddef>
#include <string>

#include "htlab/random.hpp"

namespace htlab {

// Running mean and standard error of per-draw contributions.  Unit weights
// give the sample standard deviation over sqrt(n); general weights give the
// self-normalized ratio estimator with its delta-method standard error.
class Accumulator {
 public:
  void add(double value, double weight = 1.0);
  void merge(const Accumulator& other);

  std::size_t count() const { return n_; }
  bool weighted() const { return weighted_; }
  double mean() const;
  double std_error() const;
  double sum_weights() const { return sw_; }

 private:
  std::size_t n_ = 0;
  bool weighted_ = false;
  // Chan/Welford statistics of the raw values.
  double mean_ = 0.0;
  double m2_ = 0.0;
  // Weighted raw sums.
  double sw_ = 0.0, swx_ = 0.0, sww_ = 0.0, swwx_ = 0.0, swwxx_ = 0.0;
};

struct Truncation {
  std::size_t horizon = 0;
  double tail_bound = 0.0;
};

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
  SeedLineage lineage;
  Truncation truncation;
};

// (a - b) / sqrt(se_a^2 + se_b^2); 0 when both sides are exact and equal.
double z_score(double a, double se_a, double b, double se_b);

}  // namespace htlab
