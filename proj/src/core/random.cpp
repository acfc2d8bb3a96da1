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

#include "htlab/random.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "htlab/error.hpp"

namespace htlab {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, std::uint32_t k0,
                                           std::uint32_t k1) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
    k0 += kPhiloxW0;
    k1 += kPhiloxW1;
  }
  return ctr;
}


}  // namespace

SeedLineage split(const SeedLineage& lineage, std::uint64_t index) {
  SeedLineage child = lineage;
  child.stream_path.push_back(index);
  return child;
}

std::string to_string(const SeedLineage& lineage) {
  std::ostringstream os;
  os << lineage.root_seed;
  for (auto idx : lineage.stream_path) os << '/' << idx;
  return os.str();
}

std::uint64_t lineage_key(const SeedLineage& lineage) {
  std::uint64_t h = splitmix64(lineage.root_seed ^ 0x243F6A8885A308D3ull);
  for (auto idx : lineage.stream_path) {
    // Path length is mixed in implicitly: each level rehashes.
    h = splitmix64(h ^ splitmix64(idx + 0x13198A2E03707344ull));
  }
  return h;
}

Stream::Stream(const SeedLineage& lineage) : key_(lineage_key(lineage)), counter_(0) {}

Stream::Stream(std::uint64_t key, std::uint64_t counter) : key_(key), counter_(counter) {}

void Stream::refill() {
  const std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(counter_),
                                            static_cast<std::uint32_t>(counter_ >> 32), 0u, 0u};
  block_ = philox4x32_10(ctr, static_cast<std::uint32_t>(key_),
                         static_cast<std::uint32_t>(key_ >> 32));
  ++counter_;
  used_ = 0;
}

Stream::result_type Stream::operator()() {
  if (used_ >= 4) refill();
  const std::uint64_t lo = block_[used_];
  const std::uint64_t hi = block_[used_ + 1];
  used_ += 2;
  return (hi << 32) | lo;
}

double Stream::uniform() {
  return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
}

// ---- laws -----------------------------------------------------------------

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_alpha(double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0, ErrorCode::Parameter,
          "tail index alpha must be positive, got " + std::to_string(alpha));
}

}  // namespace

void validate(const Law& law) {
  std::visit(
      overloaded{
          [](const Pareto& l) { check_alpha(l.alpha); },
          [](const TwoSidedPareto& l) {
            check_alpha(l.alpha);
            require(l.p >= 0.0 && l.p <= 1.0, ErrorCode::Parameter,
                    "sign weight p must lie in [0,1], got " + std::to_string(l.p));
          },
          [](const Discrete& l) {
            require(!l.atoms.empty() && l.atoms.size() == l.probs.size(), ErrorCode::Parameter,
                    "discrete law needs matching non-empty atoms and probs");
            double total = 0.0;
            for (double p : l.probs) {
              require(p >= 0.0 && std::isfinite(p), ErrorCode::Parameter,
                      "discrete probabilities must be non-negative");
              total += p;
            }
            for (double a : l.atoms)
              require(std::isfinite(a), ErrorCode::Parameter, "discrete atoms must be finite");
            require(std::abs(total - 1.0) <= 1e-12, ErrorCode::Parameter,
                    "discrete probabilities must sum to 1");
          },
          [](const LogNormal& l) {
            require(std::isfinite(l.mu) && l.sigma > 0.0 && std::isfinite(l.sigma),
                    ErrorCode::Parameter, "lognormal needs finite mu and sigma > 0");
          },
          [](const StudentT& l) {
            require(std::isfinite(l.nu) && l.nu > 0.0, ErrorCode::Parameter,
                    "student-t degrees of freedom must be positive");
          },
          [](const Normal& l) {
            require(std::isfinite(l.mean) && l.sd > 0.0 && std::isfinite(l.sd),
                    ErrorCode::Parameter, "normal needs finite mean and sd > 0");
          },
      },
      law);
}

std::string describe(const Law& law) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Pareto& l) { os << "Pareto(" << l.alpha << ")"; },
                 [&](const TwoSidedPareto& l) {
                   os << "TwoSidedPareto(" << l.alpha << "," << l.p << ")";
                 },
                 [&](const Discrete& l) { os << "Discrete(" << l.atoms.size() << " atoms)"; },
                 [&](const LogNormal& l) { os << "LogNormal(" << l.mu << "," << l.sigma << ")"; },
                 [&](const StudentT& l) { os << "StudentT(" << l.nu << ")"; },
                 [&](const Normal& l) { os << "Normal(" << l.mean << "," << l.sd << ")"; },
             },
             law);
  return os.str();
}

double draw_normal(Stream& stream) {
  const double u1 = stream.uniform();
  const double u2 = stream.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Marsaglia-Tsang; shapes below one are boosted by U^(1/shape).
double draw_gamma(double shape, Stream& stream) {
  if (shape < 1.0) {
    const double g = draw_gamma(shape + 1.0, stream);
    return g * std::pow(stream.uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z, v;
    do {
      z = draw_normal(stream);
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.uniform();
    if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
    if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double draw(const Law& law, Stream& stream) {
  return std::visit(
      overloaded{
          [&](const Pareto& l) { return std::pow(stream.uniform(), -1.0 / l.alpha); },
          [&](const TwoSidedPareto& l) {
            const double sign = stream.uniform() <= l.p ? 1.0 : -1.0;
            return sign * std::pow(stream.uniform(), -1.0 / l.alpha);
          },
          [&](const Discrete& l) {
            if (l.atoms.size() == 1) return l.atoms.front();
            const double u = stream.uniform();
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < l.atoms.size(); ++i) {
              acc += l.probs[i];
              if (u <= acc) return l.atoms[i];
            }
            return l.atoms.back();
          },
          [&](const LogNormal& l) { return std::exp(l.mu + l.sigma * draw_normal(stream)); },
          [&](const StudentT& l) {
            const double z = draw_normal(stream);
            const double chi2 = 2.0 * draw_gamma(0.5 * l.nu, stream);
            return z / std::sqrt(chi2 / l.nu);
          },
          [&](const Normal& l) { return l.mean + l.sd * draw_normal(stream); },
      },
      law);
}

std::vector<double> sample(const Law& law, const SeedLineage& lineage, std::size_t n) {
  validate(law);
  Stream stream(lineage);
  std::vector<double> out(n);
  for (auto& x : out) x = draw(law, stream);
  return out;
}

double quantile(const Law& law, double u) {
  require(u > 0.0 && u < 1.0, ErrorCode::Domain, "quantile level must lie in (0,1)");
  return std::visit(
      overloaded{
          [&](const Pareto& l) { return std::pow(1.0 - u, -1.0 / l.alpha); },
          [&](const TwoSidedPareto& l) {
            const double q = 1.0 - l.p;
            if (u < q) return -std::pow(u / q, -1.0 / l.alpha);
            return std::pow((1.0 - u) / l.p, -1.0 / l.alpha);
          },
          [&](const Discrete& l) {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < l.atoms.size(); ++i) {
              acc += l.probs[i];
              if (u <= acc) return l.atoms[i];
            }
            return l.atoms.back();
          },
          [&](const LogNormal& l) {
            return std::exp(l.mu + l.sigma * boost::math::quantile(boost::math::normal(), u));
          },
          [&](const StudentT& l) {
            return boost::math::quantile(boost::math::students_t(l.nu), u);
          },
          [&](const Normal& l) {
            return boost::math::quantile(boost::math::normal(l.mean, l.sd), u);
          },
      },
      law);
}

std::vector<double> stratified_sample(const Law& law, const SeedLineage& lineage, std::size_t n) {
  validate(law);
  Stream stream(lineage);
  std::vector<double> out(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = stream.uniform() - 0x1.0p-54;
    out[i] = quantile(law, (static_cast<double>(i) + v) * inv_n);
  }
  return out;
}

double pareto_survival(double alpha, double x) {
  check_alpha(alpha);
  require(x >= 1.0, ErrorCode::Domain, "pareto_survival requires x >= 1");
  return std::pow(x, -alpha);
}

std::optional<double> tail_index(const Law& law) {
  return std::visit(overloaded{
                        [](const Pareto& l) -> std::optional<double> { return l.alpha; },
                        [](const TwoSidedPareto& l) -> std::optional<double> { return l.alpha; },
                        [](const StudentT& l) -> std::optional<double> { return l.nu; },
                        [](const auto&) -> std::optional<double> { return std::nullopt; },
                    },
                    law);
}

std::optional<double> upper_tail_weight(const Law& law) {
  return std::visit(overloaded{
                        [](const Pareto&) -> std::optional<double> { return 1.0; },
                        [](const TwoSidedPareto& l) -> std::optional<double> { return l.p; },
                        [](const StudentT&) -> std::optional<double> { return 0.5; },
                        [](const auto&) -> std::optional<double> { return std::nullopt; },
                    },
                    law);
}

std::optional<double> tail_constant(const Law& law) {
  return std::visit(overloaded{
                        [](const Pareto&) -> std::optional<double> { return 1.0; },
                        [](const TwoSidedPareto&) -> std::optional<double> { return 1.0; },
                        [](const auto&) -> std::optional<double> { return std::nullopt; },
                    },
                    law);
}

std::optional<double> mean(const Law& law) {
  return std::visit(
      overloaded{
          [](const Pareto& l) -> std::optional<double> {
            if (l.alpha <= 1.0) return std::nullopt;
            return l.alpha / (l.alpha - 1.0);
          },
          [](const TwoSidedPareto& l) -> std::optional<double> {
            if (l.alpha <= 1.0) return std::nullopt;
            return (2.0 * l.p - 1.0) * l.alpha / (l.alpha - 1.0);
          },
          [](const Discrete& l) -> std::optional<double> {
            double m = 0.0;
            for (std::size_t i = 0; i < l.atoms.size(); ++i) m += l.atoms[i] * l.probs[i];
            return m;
          },
          [](const LogNormal& l) -> std::optional<double> {
            return std::exp(l.mu + 0.5 * l.sigma * l.sigma);
          },
          [](const StudentT& l) -> std::optional<double> {
            if (l.nu <= 1.0) return std::nullopt;
            return 0.0;
          },
          [](const Normal& l) -> std::optional<double> { return l.mean; },
      },
      law);
}

std::optional<SignedMoments> signed_moments(const Law& law, double q) {
  return std::visit(
      overloaded{
          [&](const Pareto& l) -> std::optional<SignedMoments> {
            if (q >= l.alpha) return std::nullopt;
            return SignedMoments{l.alpha / (l.alpha - q), 0.0};
          },
          [&](const TwoSidedPareto& l) -> std::optional<SignedMoments> {
            if (q >= l.alpha) return std::nullopt;
            const double m = l.alpha / (l.alpha - q);
            return SignedMoments{l.p * m, (1.0 - l.p) * m};
          },
          [&](const Discrete& l) -> std::optional<SignedMoments> {
            SignedMoments m;
            for (std::size_t i = 0; i < l.atoms.size(); ++i) {
              const double a = l.atoms[i];
              if (a > 0.0) m.positive += l.probs[i] * std::pow(a, q);
              if (a < 0.0) m.negative += l.probs[i] * std::pow(-a, q);
            }
            return m;
          },
          [&](const LogNormal& l) -> std::optional<SignedMoments> {
            return SignedMoments{std::exp(q * l.mu + 0.5 * q * q * l.sigma * l.sigma), 0.0};
          },
          [&](const Normal& l) -> std::optional<SignedMoments> {
            if (l.mean != 0.0) return std::nullopt;
            const double abs = std::pow(l.sd, q) * std::pow(2.0, 0.5 * q) *
                               std::tgamma(0.5 * (q + 1.0)) / std::sqrt(std::numbers::pi);
            return SignedMoments{0.5 * abs, 0.5 * abs};
          },
          [&](const StudentT&) -> std::optional<SignedMoments> { return std::nullopt; },
      },
      law);
}

bool nonnegative_support(const Law& law) {
  return std::visit(overloaded{
                        [](const Pareto&) { return true; },
                        [](const TwoSidedPareto& l) { return l.p == 1.0; },
                        [](const Discrete& l) {
                          for (std::size_t i = 0; i < l.atoms.size(); ++i)
                            if (l.atoms[i] < 0.0 && l.probs[i] > 0.0) return false;
                          return true;
                        },
                        [](const LogNormal&) { return true; },
                        [](const StudentT&) { return false; },
                        [](const Normal&) { return false; },
                    },
                    law);
}

}  // namespace htlab
