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

#include "htlab/stats.hpp"

#include <cmath>
#include <limits>

#include "htlab/parallel.hpp"

namespace htlab {

namespace {
std::atomic<std::size_t> g_threads{0};
}

void set_thread_count(std::size_t n) { g_threads.store(n); }

std::size_t thread_count() {
  const std::size_t n = g_threads.load();
  if (n > 0) return n;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void Accumulator::add(double value, double weight) {
  ++n_;
  if (weight != 1.0) weighted_ = true;
  const double delta = value - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (value - mean_);
  sw_ += weight;
  swx_ += weight * value;
  sww_ += weight * weight;
  swwx_ += weight * weight * value;
  swwxx_ += weight * weight * value * value;
}

void Accumulator::merge(const Accumulator& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double delta = o.mean_ - mean_;
  const double n = na + nb;
  mean_ += delta * nb / n;
  m2_ += o.m2_ + delta * delta * na * nb / n;
  n_ += o.n_;
  weighted_ = weighted_ || o.weighted_;
  sw_ += o.sw_;
  swx_ += o.swx_;
  sww_ += o.sww_;
  swwx_ += o.swwx_;
  swwxx_ += o.swwxx_;
}

double Accumulator::mean() const {
  if (n_ == 0) return 0.0;
  if (!weighted_) return mean_;
  return sw_ > 0.0 ? swx_ / sw_ : 0.0;
}

double Accumulator::std_error() const {
  if (n_ < 2) return 0.0;
  if (!weighted_) {
    const double var = std::max(0.0, m2_ / static_cast<double>(n_ - 1));
    return std::sqrt(var / static_cast<double>(n_));
  }
  if (sw_ <= 0.0) return 0.0;
  const double mu = swx_ / sw_;
  const double num = swwxx_ - 2.0 * mu * swwx_ + mu * mu * sww_;
  return std::sqrt(std::max(0.0, num)) / sw_;
}

double z_score(double a, double se_a, double b, double se_b) {
  const double se = std::sqrt(se_a * se_a + se_b * se_b);
  const double diff = a - b;
  if (se == 0.0) {
    return diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return diff / se;
}

}  // namespace htlab
