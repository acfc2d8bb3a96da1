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

// Samplers of the spectral tail process (Theta_t) and the tail process
// (Y_t) = |Y_0| (Theta_t), plus the k-dependent structure (lambda_k, tilde
// Theta) used by the k-dependent limit formulas.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "htlab/models.hpp"
#include "htlab/random.hpp"

namespace htlab {

// back holds (Theta_{-m}, ..., Theta_{-1}); fwd holds (Theta_0, ..., Theta_k)
// with |Theta_0| = 1.  A NaN backward entry means "nonzero, value not
// available" (SRE Grey exposes only the Theta_{-1} = 0 indicator).
struct SpectralTailPath {
  std::vector<double> back;
  std::vector<double> fwd;
  double weight = 1.0;

  std::size_t horizon() const { return fwd.empty() ? 0 : fwd.size() - 1; }
  std::size_t back_horizon() const { return back.size(); }

  // Theta_t for -m <= t <= k.
  double at(std::ptrdiff_t t) const;
};

struct TailPath {
  double y0 = 1.0;
  SpectralTailPath theta;

  double at(std::ptrdiff_t t) const { return y0 * theta.at(t); }
};

// Sampler bound to one model and horizon pair.  draw() is const and touches
// no shared state, so one sampler can serve many threads.
class SpectralSampler {
 public:
  // Throws UnsupportedBackwardHorizon when m > 0 is requested for a family
  // without a backward construction (SRE Goldie, GARCH).
  SpectralSampler(const Model& model, std::size_t k, std::size_t m = 0);

  void draw(Stream& stream, SpectralTailPath& out) const;

  const Model& model() const { return *model_; }
  std::size_t horizon() const { return k_; }
  std::size_t back_horizon() const { return m_; }

 private:
  const Model* model_;
  std::size_t k_;
  std::size_t m_;
  // Moving-average shock offsets J with probabilities |psi_J|^alpha / sum.
  std::vector<std::size_t> ma_offsets_;
  std::vector<double> ma_cumulative_;
  // Grey: P(Theta_{-1} = 0) and the sign weight of Theta_0 on each branch.
  double grey_lambda_ = 0.0;
  double grey_p_zero_branch_ = 1.0;
  double grey_p_other_branch_ = 1.0;
};

SpectralTailPath sample_spectral(const Model& model, std::size_t k, std::size_t m,
                                 const SeedLineage& lineage);

TailPath sample_tail(const Model& model, std::size_t k, std::size_t m,
                     const SeedLineage& lineage);

// tilde Theta_t = s * shape[t], s = +1 with probability p_sign.
struct KDepStructure {
  std::size_t k = 0;
  double lambda = 1.0;
  double alpha = 1.0;
  std::vector<double> shape;
  double p_sign = 1.0;

  void draw_tilde(Stream& stream, std::span<double> out) const;
  double max_abs() const;
};

// Throws NotKDependent for SRE and GARCH families.
KDepStructure kdep_structure(const Model& model);

}  // namespace htlab
