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

#include "htlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "htlab/error.hpp"
#include "htlab/parallel.hpp"

namespace htlab {

namespace {

constexpr std::size_t kReplicasPerChunk = 256;
constexpr std::size_t kMinConditioningEvents = 30;

// Fixed-order fold of an indicator over replicas.
template <class Fn>
Accumulator fold_replicas(std::size_t replicas, Fn&& fn) {
  const std::size_t chunks = (replicas + kReplicasPerChunk - 1) / kReplicasPerChunk;
  return fold_chunks<Accumulator>(chunks, [&](std::size_t c) {
    Accumulator acc;
    const std::size_t end = std::min(replicas, (c + 1) * kReplicasPerChunk);
    for (std::size_t r = c * kReplicasPerChunk; r < end; ++r) acc.add(fn(r));
    return acc;
  });
}

double path_functional(std::span<const double> xs, KDepMode mode, double center) {
  double s = 0.0;
  double g = -std::numeric_limits<double>::infinity();
  for (double x : xs) {
    s += x - center;
    if (mode == KDepMode::Sup) g = std::max(g, s);
    if (mode == KDepMode::AbsSup) g = std::max(g, std::abs(s));
  }
  return mode == KDepMode::Sum ? s : g;
}

RatioEstimate finish_ratio(const Accumulator& acc, double denominator, double x, std::size_t n,
                           ScaleKind fidelity, const SeedLineage& lineage) {
  RatioEstimate est;
  est.numerator_prob.value = acc.mean();
  est.numerator_prob.std_error = acc.std_error();
  est.numerator_prob.n = acc.count();
  est.numerator_prob.lineage = lineage;
  est.denominator = denominator;
  est.x = x;
  est.n = n;
  est.denom_fidelity = fidelity;
  require(denominator > 0.0, ErrorCode::Domain, "denominator P(|X| > x) vanishes at this x");
  est.ratio = est.numerator_prob.value / denominator;
  est.ratio_std_error = est.numerator_prob.std_error / denominator;
  if (acc.mean() == 0.0) est.flags |= kFlagUnreliableRareEvent;
  return est;
}

// P(|X - mu| > x) from the profile of X: the upper tail shifts to x + mu and
// the lower tail to x - mu.
double centered_survival(const TailProfile& profile, double x, double mu) {
  if (mu == 0.0) return profile.survival(x);
  return profile.p_plus * profile.survival(x + mu) +
         (1.0 - profile.p_plus) * profile.survival(std::max(0.0, x - mu));
}

ProportionEstimate proportion(std::size_t hits, std::size_t total) {
  ProportionEstimate est;
  est.conditioning_events = total;
  if (total == 0) {
    est.value = 0.0;
    est.std_error = 0.5;
    est.flags |= kFlagWidened;
    return est;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(total);
  est.value = p;
  est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(total));
  if (total < kMinConditioningEvents) {
    est.flags |= kFlagWidened;
    est.std_error = std::max(est.std_error, 0.5 / std::sqrt(static_cast<double>(total)));
  }
  return est;
}

}  // namespace

std::string flag_names(std::uint32_t flags) {
  std::string out;
  auto add = [&](std::uint32_t bit, const char* name) {
    if (!(flags & bit)) return;
    if (!out.empty()) out += '|';
    out += name;
  };
  add(kFlagUnreliableRareEvent, "UnreliableRareEvent");
  add(kFlagRegionViolation, "RegionViolation");
  add(kFlagWidened, "Widened");
  add(kFlagDegenerate, "Degenerate");
  return out;
}

HillEstimate hill(std::span<const double> sample, std::size_t m) {
  const std::size_t n = sample.size();
  require(m >= 2 && m < n, ErrorCode::Parameter, "hill needs 2 <= m < n");
  std::vector<double> top(sample.size());
  std::transform(sample.begin(), sample.end(), top.begin(), [](double v) { return std::abs(v); });
  std::nth_element(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(m - 1), top.end(),
                   std::greater<>());
  const double base = top[m - 1];
  HillEstimate est;
  est.m = m;
  require(base > 0.0, ErrorCode::Domain, "m-th largest |X| is zero");
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) sum += std::log(top[i] / base);
  const double mean = sum / static_cast<double>(m - 1);
  if (mean <= 0.0) {
    est.degenerate = true;
    est.alpha = std::numeric_limits<double>::infinity();
    return est;
  }
  est.alpha = 1.0 / mean;
  return est;
}

std::vector<double> tail_empirical_measure(const PathBatch& batch, double a_m, std::size_t m,
                                           std::span<const TestSet> test_sets) {
  require(a_m > 0.0, ErrorCode::Parameter, "a_m must be positive");
  require(m >= 1, ErrorCode::Parameter, "block size m must be >= 1");
  for (const auto& b : test_sets) {
    require(b.lo < b.hi, ErrorCode::Parameter, "test set needs lo < hi");
    require(b.lo > 0.0 || b.hi < 0.0, ErrorCode::Domain, "test set must stay away from 0");
  }
  std::vector<double> out(test_sets.size(), 0.0);
  if (batch.length == 0 || batch.replicas == 0) return out;
  const std::size_t k_n = batch.length / m;
  require(k_n >= 1, ErrorCode::Precondition, "k_n = floor(n/m) must be >= 1");
  std::vector<std::size_t> counts(test_sets.size(), 0);
  for (double v : batch.values) {
    const double y = v / a_m;
    for (std::size_t j = 0; j < test_sets.size(); ++j)
      if (y > test_sets[j].lo && y <= test_sets[j].hi) ++counts[j];
  }
  const double norm = static_cast<double>(k_n) * static_cast<double>(batch.replicas);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = static_cast<double>(counts[j]) / norm;
  return out;
}

double ld_region_threshold(const TailProfile& profile, std::size_t n) {
  if (n < 2) return 0.0;
  const double nd = static_cast<double>(n);
  if (profile.alpha < 2.0) return 10.0 * profile.quantile_for_survival(1.0 / nd);
  if (profile.alpha == 2.0) return std::pow(nd, 0.6);
  return 10.0 * std::sqrt(nd * std::log(nd));
}

RatioEstimate ld_ratio(const PathBatch& batch, double x, KDepMode mode, const TailProfile& profile,
                       double center) {
  require(x > 0.0, ErrorCode::Parameter, "threshold x must be positive");
  require(batch.replicas >= 1 && batch.length >= 1, ErrorCode::Parameter, "empty batch");
  const Accumulator acc = fold_replicas(batch.replicas, [&](std::size_t r) {
    return path_functional(batch.replica(r), mode, center) > x ? 1.0 : 0.0;
  });
  const double denom = static_cast<double>(batch.length) * centered_survival(profile, x, center);
  auto est = finish_ratio(acc, denom, x, batch.length, profile.scale_kind, batch.lineage);
  if (x < ld_region_threshold(profile, batch.length)) est.flags |= kFlagRegionViolation;
  return est;
}

RatioEstimate ld_ratio(const Model& model, std::size_t n, std::size_t replicas, double x,
                       KDepMode mode, const SeedLineage& lineage) {
  require(x > 0.0, ErrorCode::Parameter, "threshold x must be positive");
  require(n >= 1 && replicas >= 1, ErrorCode::Parameter, "need n, R >= 1");
  const double center = model.alpha() > 1.0 ? model.centering().mean : 0.0;
  const Accumulator acc = fold_replicas(replicas, [&](std::size_t r) {
    thread_local std::vector<double> path;
    path.resize(n);
    Stream stream(split(lineage, r));
    model.simulate(stream, path);
    return path_functional(path, mode, center) > x ? 1.0 : 0.0;
  });
  const TailProfile& profile = model.tail();
  const double denom = static_cast<double>(n) * centered_survival(profile, x, center);
  auto est = finish_ratio(acc, denom, x, n, profile.scale_kind, lineage);
  if (x < ld_region_threshold(profile, n)) est.flags |= kFlagRegionViolation;
  return est;
}

RatioEstimate ruin_probability(const Model& model, double rho, double x, double horizon_mult,
                               std::size_t replicas, const SeedLineage& lineage,
                               double tol_fraction) {
  const double alpha = model.alpha();
  require(alpha > 1.0, ErrorCode::AlphaOutOfRange,
          "ruin probabilities need alpha > 1, got " + std::to_string(alpha));
  require(rho > 0.0, ErrorCode::Parameter, "safety loading rho must be > 0");
  require(x > 0.0, ErrorCode::Parameter, "barrier x must be positive");
  require(replicas >= 1, ErrorCode::Parameter, "need R >= 1");
  require(horizon_mult > 1.0 && std::pow(horizon_mult, 1.0 - alpha) <= tol_fraction,
          ErrorCode::Precondition,
          "horizon multiplier C leaves C^(1-alpha) above the tolerated fraction");
  const auto horizon = static_cast<std::size_t>(std::ceil(horizon_mult * x));
  const double center = model.centering().mean;
  const Accumulator acc = fold_replicas(replicas, [&](std::size_t r) {
    thread_local std::vector<double> path;
    path.resize(horizon);
    Stream stream(split(lineage, r));
    model.simulate(stream, path);
    double s = 0.0;
    for (double v : path) {
      s += v - center - rho;
      if (s > x) return 1.0;
    }
    return 0.0;
  });
  const double denom = x * centered_survival(model.tail(), x, center);
  return finish_ratio(acc, denom, x, horizon, model.tail().scale_kind, lineage);
}

ProportionEstimate block_extremal_index(const PathBatch& batch, double u, std::size_t m) {
  require(u > 0.0, ErrorCode::Parameter, "threshold u must be positive");
  require(m >= 1, ErrorCode::Parameter, "block length m must be >= 1");
  std::size_t total = 0, hits = 0;
  for (std::size_t r = 0; r < batch.replicas; ++r) {
    const auto xs = batch.replica(r);
    for (std::size_t t = 0; t + m < xs.size(); ++t) {
      if (std::abs(xs[t]) <= u) continue;
      ++total;
      bool quiet = true;
      for (std::size_t j = 1; j <= m && quiet; ++j) quiet = std::abs(xs[t + j]) <= u;
      if (quiet) ++hits;
    }
  }
  require(total > 0, ErrorCode::Undefined, "no exceedances of u with a full forward block");
  return proportion(hits, total);
}

std::vector<ProportionEstimate> anticlustering_diagnostic(const PathBatch& batch,
                                                          std::span<const std::size_t> k_grid,
                                                          std::size_t n, double x, double delta) {
  require(x > 0.0 && delta > 0.0, ErrorCode::Parameter, "x and delta must be positive");
  for (std::size_t k : k_grid) require(k <= n, ErrorCode::Parameter, "every k must be <= n");
  const double v = x * delta;
  std::size_t above = 0;
  for (double value : batch.values)
    if (std::abs(value) > v) ++above;
  require(!batch.values.empty() &&
              static_cast<double>(above) <= 0.01 * static_cast<double>(batch.values.size()),
          ErrorCode::Precondition, "x*delta must exceed the 0.99 marginal quantile");

  std::vector<std::size_t> hits(k_grid.size(), 0);
  std::size_t total = 0;
  std::vector<double> tail_max(n + 2);
  for (std::size_t r = 0; r < batch.replicas; ++r) {
    const auto xs = batch.replica(r);
    for (std::size_t t = 0; t + n < xs.size(); ++t) {
      if (std::abs(xs[t]) <= v) continue;
      ++total;
      // tail_max[j] = max_{j <= i <= n} |X_{t+i}|
      tail_max[n + 1] = 0.0;
      for (std::size_t j = n; j >= 1; --j) tail_max[j] = std::max(tail_max[j + 1], std::abs(xs[t + j]));
      for (std::size_t g = 0; g < k_grid.size(); ++g)
        if (tail_max[k_grid[g] + 1] > v) ++hits[g];
    }
  }
  std::vector<ProportionEstimate> out;
  out.reserve(k_grid.size());
  for (std::size_t g = 0; g < k_grid.size(); ++g) out.push_back(proportion(hits[g], total));
  return out;
}

RatioEstimate cluster_functional_ratio(const PathBatch& batch, const ClusterFunctional& c,
                                       double x, const TailProfile& profile) {
  require(x > 0.0, ErrorCode::Parameter, "threshold x must be positive");
  require(batch.replicas >= 1 && batch.length >= 1, ErrorCode::Parameter, "empty batch");
  const Accumulator acc = fold_replicas(batch.replicas, [&](std::size_t r) {
    thread_local std::vector<double> shifted;
    const auto xs = batch.replica(r);
    shifted.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) shifted[i] = std::max(0.0, xs[i] / x - 1.0);
    return c(shifted) > 1.0 ? 1.0 : 0.0;
  });
  const double denom = static_cast<double>(batch.length) * profile.survival(x);
  auto est = finish_ratio(acc, denom, x, batch.length, profile.scale_kind, batch.lineage);
  if (x < ld_region_threshold(profile, batch.length)) est.flags |= kFlagRegionViolation;
  return est;
}

}  // namespace htlab
