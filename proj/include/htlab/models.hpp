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

// Stationary heavy-tailed models: specifications, marginal tail profiles,
// path simulation and the Kesten tail-index solver.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "htlab/random.hpp"

namespace htlab {

enum class SreRegime { Goldie, Grey };

struct IidSpec {
  Law law;
};

// X_t = sum_j psi_j Z_{t-j}.
struct MovingAverageSpec {
  std::vector<double> psi;
  Law noise;
};

// X_t = A_t X_{t-1} + B_t.
struct SreSpec {
  Law a_law;
  Law b_law;
  SreRegime regime = SreRegime::Grey;
};

// sigma_t^2 = alpha0 + (alpha1 Z_{t-1}^2 + beta1) sigma_{t-1}^2, X_t = sigma_t Z_t.
struct Garch11Spec {
  double alpha0 = 1e-6;
  double alpha1 = 0.1;
  double beta1 = 0.85;
  Law z_law = Normal{};
};

// X_t = sigma_t Z_t; log sigma_t is a stationary Gaussian AR(1) with
// coefficient log_ar and N(mu, sigma^2) marginals.
struct StochVolSpec {
  LogNormal sigma_law;
  Law z_law;
  double log_ar = 0.0;
};

using ModelSpec = std::variant<IidSpec, MovingAverageSpec, SreSpec, Garch11Spec, StochVolSpec>;

std::string family_name(const ModelSpec& spec);

enum class ScaleKind { Exact, Asymptotic, MonteCarlo };

const char* to_string(ScaleKind kind);

struct TailProfile {
  double alpha = 0.0;
  ScaleKind scale_kind = ScaleKind::Exact;
  // lim x^alpha P(|X| > x); unused for MonteCarlo profiles.
  double scale = 1.0;
  double p_plus = 1.0;
  // Sorted |X| from a long reference path (MonteCarlo profiles only).
  std::shared_ptr<const std::vector<double>> reference;

  // P(|X| > x).
  double survival(double x) const;
  // Smallest x with survival(x) <= prob (inverse of survival).
  double quantile_for_survival(double prob) const;
};

// Kesten index from a frozen sample of A >= 0: the kappa > 0 with
// mean(A^kappa) = 1 to within tol.  Throws NoKestenRoot when
// kappa -> log mean(A^kappa) has no sign change on (0, kappa_max].
double solve_kesten_index(std::span<const double> a_sample, double tol = 1e-10,
                          double kappa_max = 256.0);

// Law-level solver.  Discrete laws use exact moments; other laws use one
// frozen sample of size mc_n drawn from the lineage.
double solve_kesten_index(const Law& a_law, std::size_t mc_n, double tol,
                          const SeedLineage& lineage);

struct Centering {
  double mean = 0.0;
  double std_error = 0.0;  // 0 when known analytically
};

class Model {
 public:
  // Validates the spec (stationarity, regime conditions, Kesten root) and
  // computes the tail profile.  Throws Error.
  explicit Model(ModelSpec spec);

  const ModelSpec& spec() const { return spec_; }
  const TailProfile& tail() const { return tail_; }
  double alpha() const { return tail_.alpha; }
  std::string family() const { return family_name(spec_); }

  std::size_t burn_in() const { return burn_in_; }
  // Almost-sure geometric decay rate of the spectral tail envelope:
  // exp(E log|A|) for SRE, exp(E log A / 2) for GARCH, 0 for k-dependent
  // families.
  double contraction_rate() const { return contraction_; }
  // Forward horizon at which the spectral tail envelope is below 1e-8.
  std::size_t default_horizon() const;
  // Dependence range for k-dependent families.
  std::optional<std::size_t> dependence_range() const;

  const Centering& centering() const { return centering_; }

  // E|A|^alpha for SRE specs (drives the Grey-case lambda).
  double sre_abs_moment() const { return sre_abs_moment_; }
  // E|Z|^alpha for GARCH specs (normalizes the tilting weights).
  double garch_z_moment() const { return garch_z_moment_; }

  // One stationary path of out.size() values.  initial_state overrides the
  // chain start (X for SRE, sigma^2 for GARCH) before burn-in.
  void simulate(Stream& stream, std::span<double> out,
                std::optional<double> initial_state = std::nullopt) const;

 private:
  void init_iid(const IidSpec& s);
  void init_ma(const MovingAverageSpec& s);
  void init_sre(const SreSpec& s);
  void init_garch(const Garch11Spec& s);
  void init_stochvol(const StochVolSpec& s);
  void build_reference();
  void compute_centering();

  ModelSpec spec_;
  TailProfile tail_;
  std::size_t burn_in_ = 0;
  double contraction_ = 0.0;
  double sre_abs_moment_ = 0.0;
  double garch_z_moment_ = 0.0;
  Centering centering_;
};

// Throws like the Model constructor.
TailProfile tail_profile(const ModelSpec& spec);

// X_t = a_t X_{t-1} + b_t from X_0 = x0; returns (X_1, ..., X_n).
std::vector<double> iterate_sre(double x0, std::span<const double> a, std::span<const double> b);

struct PathBatch {
  std::size_t replicas = 0;
  std::size_t length = 0;
  std::vector<double> values;  // replicas x length, row-major
  SeedLineage lineage;
  std::size_t burn_in = 0;

  std::span<const double> replica(std::size_t r) const {
    return {values.data() + r * length, length};
  }
};

// Replica r is generated from split(lineage, r).
PathBatch simulate_paths(const Model& model, std::size_t n, std::size_t replicas,
                         const SeedLineage& lineage);

}  // namespace htlab
