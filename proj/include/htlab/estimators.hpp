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

// Path-level estimators of pre-limit quantities and diagnostics for the
// anti-clustering and large-deviation conditions.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "htlab/limits.hpp"
#include "htlab/models.hpp"
#include "htlab/stats.hpp"

namespace htlab {

enum EstimateFlag : std::uint32_t {
  kFlagNone = 0,
  kFlagUnreliableRareEvent = 1u << 0,
  kFlagRegionViolation = 1u << 1,
  kFlagWidened = 1u << 2,
  kFlagDegenerate = 1u << 3,
};

// Names of the set bits joined by '|', or "" when none are set.
std::string flag_names(std::uint32_t flags);

struct RatioEstimate {
  MonteCarloEstimate numerator_prob;
  double denominator = 0.0;
  double ratio = 0.0;
  double ratio_std_error = 0.0;
  double x = 0.0;
  std::size_t n = 0;
  ScaleKind denom_fidelity = ScaleKind::Exact;
  std::uint32_t flags = kFlagNone;
};

struct HillEstimate {
  double alpha = 0.0;
  std::size_t m = 0;
  bool degenerate = false;
};

// Hill estimator over the top m order statistics of |sample|.
HillEstimate hill(std::span<const double> sample, std::size_t m);

// An interval (lo, hi] on the real line that stays away from 0.
struct TestSet {
  double lo = 1.0;
  double hi = std::numeric_limits<double>::infinity();
};

// k_n^{-1} sum_t 1{X_t / a_m in B} with k_n = floor(n / m), averaged over
// replicas.  Rejects sets whose closure contains 0.
std::vector<double> tail_empirical_measure(const PathBatch& batch, double a_m, std::size_t m,
                                           std::span<const TestSet> test_sets);

// Lower end of the large-deviation region for windows of length n.
double ld_region_threshold(const TailProfile& profile, std::size_t n);

// Fraction of replicas with g(S_1, ..., S_n) > x over n P(|X - center| > x),
// where S are partial sums of X_t - center.  The centered tail is read off
// the profile as p_plus P(|X| > x + center) + (1 - p_plus) P(|X| > x - center).
RatioEstimate ld_ratio(const PathBatch& batch, double x, KDepMode mode, const TailProfile& profile,
                       double center = 0.0);
// Streaming variant: replica r is simulated from split(lineage, r) exactly as
// simulate_paths does, centered by the model mean when alpha > 1.
RatioEstimate ld_ratio(const Model& model, std::size_t n, std::size_t replicas, double x,
                       KDepMode mode, const SeedLineage& lineage);

// P(sup_{t <= C x} (S_t - rho t) > x) over x P(|X - mean| > x) for the
// centered model.  Rejects horizons whose neglected tail C^{1 - alpha} exceeds
// tol_fraction.
RatioEstimate ruin_probability(const Model& model, double rho, double x, double horizon_mult,
                               std::size_t replicas, const SeedLineage& lineage,
                               double tol_fraction = 0.1);

struct ProportionEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t conditioning_events = 0;
  std::uint32_t flags = kFlagNone;
};

// Among t with |X_t| > u and a full forward window, the fraction with
// max_{1 <= j <= m} |X_{t+j}| <= u.  Undefined when no such t exists.
ProportionEstimate block_extremal_index(const PathBatch& batch, double u, std::size_t m);

// For each k, P(max_{k < j <= n} |X_{t+j}| > v | |X_t| > v) with v = x delta.
std::vector<ProportionEstimate> anticlustering_diagnostic(const PathBatch& batch,
                                                          std::span<const std::size_t> k_grid,
                                                          std::size_t n, double x, double delta);

// Fraction of replicas with c((X_i / x - 1)_+) > 1 over n P(|X| > x).
RatioEstimate cluster_functional_ratio(const PathBatch& batch, const ClusterFunctional& c,
                                       double x, const TailProfile& profile);

}  // namespace htlab
