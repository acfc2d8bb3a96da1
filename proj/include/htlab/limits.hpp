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

// Monte Carlo evaluators of limiting constants expressed through the
// spectral tail process.  Every integral of the form
//   int_0^inf E[f(y Theta_{t>=0}) - f(y Theta_{t>=1})] d(-y^-alpha)
// whose integrand vanishes for y <= eps is evaluated as the Pareto
// expectation eps^-alpha E[f(eps P Theta_{0..k}) - f(eps P Theta_{1..k})].
//
// All estimators fold over fixed-size chunks of draws; chunk c draws from
// split(lineage, c), so results are bit-identical for any thread count.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "htlab/models.hpp"
#include "htlab/stats.hpp"
#include "htlab/tail_process.hpp"

namespace htlab {

// A functional on finite real sequences that vanishes on the zero sequence
// and is unchanged by padding either end with entries of modulus <= epsilon.
struct ClusterFunctional {
  double epsilon = 0.5;
  std::function<double(std::span<const double>)> evaluate;
  std::string name;

  double operator()(std::span<const double> xs) const { return evaluate(xs); }
};

namespace functionals {

// 1{max_i |x_i| > u}
ClusterFunctional sup_abs_exceeds(double u = 1.0);
// 1{max_i x_i > u}
ClusterFunctional sup_exceeds(double u = 1.0);
// #{i : |x_i| > u}
ClusterFunctional exceedance_count(double u = 1.0);
// 1{sum_i (x_i - u)_+ > level}
ClusterFunctional excess_sum_exceeds(double u = 1.0, double level = 1.0);
ClusterFunctional zero();
// max(0, max_i x_i); a real-valued building block for shifted_exceedance.
ClusterFunctional max_value();
// sum_i x_i
ClusterFunctional sum_value();

// 1{c((x_i - 1)_+) > 1} for a functional c that is unchanged by zero
// padding; vanishes near the origin with epsilon = 1.
ClusterFunctional shifted_exceedance(ClusterFunctional c);

std::vector<ClusterFunctional> shipped();

// Lookup by name for configs: "sup_abs", "sup", "count", "excess_sum",
// "zero", or "shifted:<inner>" where inner may also be "max" or "sum".
ClusterFunctional by_name(const std::string& name, double u = 1.0, double level = 1.0);

}  // namespace functionals

// Draw source for the spectral process; model-backed by default, but tests
// can plug in hand-built constructions.
struct SpectralSource {
  double alpha = 1.0;
  std::size_t horizon = 0;
  // Geometric envelope rate used for truncation bounds (0: exact horizon).
  double envelope_rate = 0.0;
  std::function<void(Stream&, SpectralTailPath&)> draw;
};

SpectralSource spectral_source(const Model& model, std::size_t k);

struct ComplexEstimate {
  std::complex<double> value;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  std::size_t n = 0;
  SeedLineage lineage;
  Truncation truncation;
};

MonteCarloEstimate extremal_index(const Model& model, std::size_t k, std::size_t n_draws,
                                  const SeedLineage& lineage);
MonteCarloEstimate extremal_index(const SpectralSource& source, std::size_t n_draws,
                                  const SeedLineage& lineage);

MonteCarloEstimate cluster_limit(const ClusterFunctional& f, const Model& model, std::size_t k,
                                 std::size_t n_draws, const SeedLineage& lineage);
MonteCarloEstimate cluster_limit(const ClusterFunctional& f, const SpectralSource& source,
                                 std::size_t n_draws, const SeedLineage& lineage);

// E[(sup_{t>=0} sum_{i=0}^t Theta_i)_+^a - (sup_{t>=1} sum_{i=1}^t Theta_i)_+^a]
MonteCarloEstimate sup_rw_constant(const Model& model, std::size_t k, std::size_t n_draws,
                                   const SeedLineage& lineage);
MonteCarloEstimate sup_rw_constant(const SpectralSource& source, std::size_t n_draws,
                                   const SeedLineage& lineage);

// E[(sum_{i>=0} Theta_i)_+^a - (sum_{i>=1} Theta_i)_+^a]
MonteCarloEstimate sum_constant(const Model& model, std::size_t k, std::size_t n_draws,
                                const SeedLineage& lineage);
MonteCarloEstimate sum_constant(const SpectralSource& source, std::size_t n_draws,
                                const SeedLineage& lineage);

enum class KDepMode { Sup, Sum, AbsSup };

const char* to_string(KDepMode mode);

// lambda_k E[g(partial sums of tilde Theta)_+^alpha].
MonteCarloEstimate kdep_constant(const KDepStructure& structure, KDepMode mode,
                                 std::size_t n_draws, const SeedLineage& lineage);

// Ruin constant: sup_rw numerator / ((alpha - 1) rho).  AlphaOutOfRange for
// alpha <= 1.
MonteCarloEstimate ruin_constant(const Model& model, double rho, std::size_t k,
                                 std::size_t n_draws, const SeedLineage& lineage);
MonteCarloEstimate ruin_constant(const SpectralSource& source, double rho, std::size_t n_draws,
                                 const SeedLineage& lineage);

// E[Y^alpha - (Y - 1)^alpha] / ((alpha - 1) rho) with Y = 1 + sum_{i<=k} Pi_i.
// Needs an SRE with A >= 0 and nonnegative spectral process.
MonteCarloEstimate goldie_ruin_closed_form(const Model& model, double rho, std::size_t k,
                                           std::size_t n_draws, const SeedLineage& lineage);

// (1 - E|A|^alpha) E[p sup_t (1 + sum Pi)_+^alpha + q sup_t (1 + sum Pi)_-^alpha]
//   / ((alpha - 1) rho)   for SRE in the Grey regime.
MonteCarloEstimate grey_ruin_closed_form(const Model& model, double rho, std::size_t k,
                                         std::size_t n_draws, const SeedLineage& lineage);

// Untilted GARCH(1,1) form with iid Z_0, ..., Z_k.
MonteCarloEstimate garch_ruin_constant(const Model& model, double rho, std::size_t k,
                                       std::size_t n_draws, const SeedLineage& lineage);

// Log-characteristic function of the stable limit of normalized sums at
// frequency s.  Unsupported for alpha = 1 or alpha >= 2.
ComplexEstimate stable_logcf(const Model& model, double s, std::size_t k, std::size_t n_draws,
                             double quad_eps, const SeedLineage& lineage);

// Points of the k-dependent limit point process with modulus above x_floor.
// window_intensity scales the Poisson intensity lambda_k (1 = unit window).
std::vector<double> simulate_limit_pp(const KDepStructure& structure, double x_floor,
                                      double window_intensity, const SeedLineage& lineage);

}  // namespace htlab
