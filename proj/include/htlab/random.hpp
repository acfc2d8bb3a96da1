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

// Splittable counter-based random streams and the heavy-tailed laws sampled
// from them.  Every stream is a pure function of (root seed, stream path):
// replica r of an experiment draws from split(lineage, r).

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace htlab {

struct SeedLineage {
  std::uint64_t root_seed = 0;
  std::vector<std::uint64_t> stream_path;

  bool operator==(const SeedLineage&) const = default;
};

SeedLineage split(const SeedLineage& lineage, std::uint64_t index);

// "root/i/j/..." for reports.
std::string to_string(const SeedLineage& lineage);

// Philox4x32-10 keyed by a hash of the lineage; satisfies
// UniformRandomBitGenerator.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(const SeedLineage& lineage);
  Stream(std::uint64_t key, std::uint64_t counter);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  // Uniform on (0, 1], never 0.
  double uniform();

  std::uint64_t key() const { return key_; }

 private:
  void refill();

  std::uint64_t key_;
  std::uint64_t counter_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
};

std::uint64_t lineage_key(const SeedLineage& lineage);

// ---- laws -----------------------------------------------------------------

// P(X > x) = x^-alpha, x >= 1.
struct Pareto {
  double alpha = 1.0;
};

// |X| ~ Pareto(alpha), sign + with probability p.
struct TwoSidedPareto {
  double alpha = 1.0;
  double p = 1.0;
};

struct Discrete {
  std::vector<double> atoms;
  std::vector<double> probs;
};

struct LogNormal {
  double mu = 0.0;
  double sigma = 1.0;
};

struct StudentT {
  double nu = 3.0;
};

struct Normal {
  double mean = 0.0;
  double sd = 1.0;
};

using Law = std::variant<Pareto, TwoSidedPareto, Discrete, LogNormal, StudentT, Normal>;

inline Law deterministic(double value) { return Discrete{{value}, {1.0}}; }

// Throws Error(Parameter) on alpha <= 0, p outside [0,1], probabilities not
// summing to one within 1e-12, non-positive scales.
void validate(const Law& law);

std::string describe(const Law& law);

double draw(const Law& law, Stream& stream);

// n iid draws from the stream named by the lineage.
std::vector<double> sample(const Law& law, const SeedLineage& lineage, std::size_t n);

// Inverse CDF, u in (0, 1).
double quantile(const Law& law, double u);

// Stratified frozen sample: x_i = F^-1((i + U_i) / n).  Used wherever one
// fixed sample is reused across many evaluations (root finding, moments).
std::vector<double> stratified_sample(const Law& law, const SeedLineage& lineage, std::size_t n);

double draw_normal(Stream& stream);
double draw_gamma(double shape, Stream& stream);

// x^-alpha for x >= 1; Error(Domain) for x < 1.
double pareto_survival(double alpha, double x);

// Tail index of a regularly varying law, nullopt for light tails.
std::optional<double> tail_index(const Law& law);

// lim P(X > x) / P(|X| > x) for regularly varying laws.
std::optional<double> upper_tail_weight(const Law& law);

// lim x^alpha P(|X| > x); nullopt when not known in closed form.
std::optional<double> tail_constant(const Law& law);

std::optional<double> mean(const Law& law);

// E[X^q; X > 0] and E[|X|^q; X < 0] when known in closed form.
struct SignedMoments {
  double positive = 0.0;
  double negative = 0.0;
  double total() const { return positive + negative; }
};
std::optional<SignedMoments> signed_moments(const Law& law, double q);

// True when the law puts no mass below zero.
bool nonnegative_support(const Law& law);

}  // namespace htlab
