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

#include "htlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>

#include "htlab/error.hpp"
#include "htlab/parallel.hpp"

namespace htlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Construction-time Monte Carlo uses its own fixed lineage so that model
// validation never consumes experiment randomness.
const SeedLineage kConstructionLineage{0x68746c61625f6d64ull, {}};
constexpr std::size_t kConstructionSample = 1u << 20;
constexpr std::size_t kReferenceLength = 1u << 20;
constexpr std::size_t kMaxBurnIn = 1'000'000;
constexpr std::size_t kMaxHorizon = 10'000;

double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// log mean(exp(kappa * log_a)), skipping zero atoms (log = -inf).
double log_moment(std::span<const double> log_a, double kappa) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double la : log_a) mx = std::max(mx, kappa * la);
  if (!std::isfinite(mx)) return -std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (double la : log_a) s += std::exp(kappa * la - mx);
  return mx + std::log(s / static_cast<double>(log_a.size()));
}

// Root of the convex map h(kappa) = log E[A^kappa] with h(0) = 0, h'(0) < 0.
template <class LogMoment>
double kesten_root(LogMoment&& h, double tol, double kappa_max) {
  double lo = 0.0;
  double hi = 0.5;
  while (h(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > kappa_max) {
      fail(ErrorCode::NoKestenRoot,
           "no positive root of E[A^kappa] = 1 in (0, " + std::to_string(kappa_max) + "]");
    }
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double v = h(mid);
    if (std::abs(std::expm1(v)) <= tol && hi - lo < 1e-12 * std::max(1.0, mid)) return mid;
    if (v > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo <= std::numeric_limits<double>::epsilon() * hi) break;
  }
  const double kappa = 0.5 * (lo + hi);
  require(std::abs(std::expm1(h(kappa))) <= std::max(tol, 1e-12), ErrorCode::NoKestenRoot,
          "Kesten root did not reach the requested tolerance");
  return kappa;
}

double expected_log_abs(const Law& law, std::span<const double> frozen) {
  if (auto* d = std::get_if<Discrete>(&law)) {
    double s = 0.0;
    for (std::size_t i = 0; i < d->atoms.size(); ++i) {
      if (d->probs[i] == 0.0) continue;
      if (d->atoms[i] == 0.0) return -std::numeric_limits<double>::infinity();
      s += d->probs[i] * std::log(std::abs(d->atoms[i]));
    }
    return s;
  }
  if (auto* l = std::get_if<LogNormal>(&law)) return l->mu;
  double s = 0.0;
  for (double a : frozen) s += std::log(std::abs(a));
  return s / static_cast<double>(frozen.size());
}

SignedMoments signed_moments_or_mc(const Law& law, double q, std::span<const double> frozen) {
  if (auto m = signed_moments(law, q)) return *m;
  SignedMoments m;
  for (double a : frozen) {
    if (a > 0.0) m.positive += std::pow(a, q);
    if (a < 0.0) m.negative += std::pow(-a, q);
  }
  m.positive /= static_cast<double>(frozen.size());
  m.negative /= static_cast<double>(frozen.size());
  return m;
}

std::size_t burn_in_for_rate(double rate) {
  constexpr std::size_t kFloor = 1000;
  if (!(rate > 0.0)) return kFloor;
  if (rate >= 1.0) return kMaxBurnIn;
  const double steps = std::ceil(std::log(1e-10) / std::log(rate));
  const double burn = 10.0 * steps;
  if (burn >= static_cast<double>(kMaxBurnIn)) return kMaxBurnIn;
  return std::max(kFloor, static_cast<std::size_t>(burn));
}

}  // namespace

std::string family_name(const ModelSpec& spec) {
  return std::visit(overloaded{
                        [](const IidSpec&) { return std::string("Iid"); },
                        [](const MovingAverageSpec&) { return std::string("MovingAverage"); },
                        [](const SreSpec&) { return std::string("SRE"); },
                        [](const Garch11Spec&) { return std::string("Garch11"); },
                        [](const StochVolSpec&) { return std::string("StochVol"); },
                    },
                    spec);
}

const char* to_string(ScaleKind kind) {
  switch (kind) {
    case ScaleKind::Exact:
      return "Exact";
    case ScaleKind::Asymptotic:
      return "Asymptotic";
    case ScaleKind::MonteCarlo:
      return "MonteCarlo";
  }
  return "?";
}

double TailProfile::survival(double x) const {
  if (scale_kind == ScaleKind::MonteCarlo) {
    require(reference && !reference->empty(), ErrorCode::Precondition,
            "MonteCarlo tail profile has no reference sample");
    const auto& ref = *reference;
    const auto above = ref.end() - std::upper_bound(ref.begin(), ref.end(), x);
    return static_cast<double>(above) / static_cast<double>(ref.size());
  }
  if (x <= 0.0) return 1.0;
  return std::min(1.0, scale * std::pow(x, -alpha));
}

double TailProfile::quantile_for_survival(double prob) const {
  require(prob > 0.0 && prob < 1.0, ErrorCode::Domain, "survival level must lie in (0,1)");
  if (scale_kind == ScaleKind::MonteCarlo) {
    require(reference && !reference->empty(), ErrorCode::Precondition,
            "MonteCarlo tail profile has no reference sample");
    const auto& ref = *reference;
    const auto n = ref.size();
    auto k = static_cast<std::size_t>(std::floor(prob * static_cast<double>(n)));
    k = std::min(k, n - 1);
    return ref[n - 1 - k];
  }
  return std::pow(scale / prob, 1.0 / alpha);
}

double solve_kesten_index(std::span<const double> a_sample, double tol, double kappa_max) {
  require(!a_sample.empty(), ErrorCode::Parameter, "empty sample of A");
  std::vector<double> log_a(a_sample.size());
  for (std::size_t i = 0; i < a_sample.size(); ++i) {
    require(a_sample[i] >= 0.0, ErrorCode::Parameter, "Kesten solver requires A >= 0");
    log_a[i] = std::log(a_sample[i]);
  }
  require(mean_of(log_a) < 0.0, ErrorCode::NoKestenRoot, "E log A >= 0: no stationary solution");
  return kesten_root([&](double k) { return log_moment(log_a, k); }, tol, kappa_max);
}

double solve_kesten_index(const Law& a_law, std::size_t mc_n, double tol,
                          const SeedLineage& lineage) {
  validate(a_law);
  require(nonnegative_support(a_law), ErrorCode::Parameter, "Kesten solver requires A >= 0");
  if (auto* d = std::get_if<Discrete>(&a_law)) {
    double elog = 0.0;
    bool has_zero = false;
    for (std::size_t i = 0; i < d->atoms.size(); ++i) {
      if (d->probs[i] == 0.0) continue;
      if (d->atoms[i] == 0.0) {
        has_zero = true;
        continue;
      }
      elog += d->probs[i] * std::log(d->atoms[i]);
    }
    require(has_zero || elog < 0.0, ErrorCode::NoKestenRoot,
            "E log A >= 0: no stationary solution");
    auto h = [&](double k) {
      double s = 0.0;
      for (std::size_t i = 0; i < d->atoms.size(); ++i)
        if (d->atoms[i] > 0.0) s += d->probs[i] * std::pow(d->atoms[i], k);
      return std::log(s);
    };
    return kesten_root(h, tol, 256.0);
  }
  require(mc_n >= 2, ErrorCode::Parameter, "Kesten solver needs mc_n >= 2");
  const auto frozen = stratified_sample(a_law, lineage, mc_n);
  return solve_kesten_index(frozen, tol);
}

std::vector<double> iterate_sre(double x0, std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::Parameter, "A and B sequences differ in length");
  std::vector<double> out(a.size());
  double x = x0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    x = a[t] * x + b[t];
    out[t] = x;
  }
  return out;
}

// ---- Model ------------------------------------------------------------------

Model::Model(ModelSpec spec) : spec_(std::move(spec)) {
  std::visit(overloaded{
                 [&](const IidSpec& s) { init_iid(s); },
                 [&](const MovingAverageSpec& s) { init_ma(s); },
                 [&](const SreSpec& s) { init_sre(s); },
                 [&](const Garch11Spec& s) { init_garch(s); },
                 [&](const StochVolSpec& s) { init_stochvol(s); },
             },
             spec_);
  if (tail_.scale_kind == ScaleKind::MonteCarlo) build_reference();
  compute_centering();
}

void Model::init_iid(const IidSpec& s) {
  validate(s.law);
  const auto alpha = tail_index(s.law);
  require(alpha.has_value(), ErrorCode::Parameter,
          "iid law " + describe(s.law) + " is not regularly varying");
  tail_.alpha = *alpha;
  tail_.p_plus = *upper_tail_weight(s.law);
  if (auto c = tail_constant(s.law)) {
    tail_.scale_kind = ScaleKind::Exact;
    tail_.scale = *c;
  } else {
    tail_.scale_kind = ScaleKind::MonteCarlo;
  }
}

void Model::init_ma(const MovingAverageSpec& s) {
  validate(s.noise);
  require(!s.psi.empty(), ErrorCode::Parameter, "moving average needs coefficients psi");
  const auto alpha = tail_index(s.noise);
  require(alpha.has_value(), ErrorCode::Parameter, "moving-average noise is not regularly varying");
  const double p = *upper_tail_weight(s.noise);
  double total = 0.0, plus = 0.0;
  for (double psi : s.psi) {
    require(std::isfinite(psi), ErrorCode::Parameter, "psi coefficients must be finite");
    const double w = std::pow(std::abs(psi), *alpha);
    total += w;
    if (psi > 0.0) plus += w * p;
    if (psi < 0.0) plus += w * (1.0 - p);
  }
  require(total > 0.0, ErrorCode::Parameter, "psi coefficients are all zero");
  tail_.alpha = *alpha;
  tail_.p_plus = plus / total;
  if (auto c = tail_constant(s.noise)) {
    tail_.scale_kind = ScaleKind::Asymptotic;
    tail_.scale = total * *c;
  } else {
    tail_.scale_kind = ScaleKind::MonteCarlo;
  }
}

void Model::init_sre(const SreSpec& s) {
  validate(s.a_law);
  validate(s.b_law);
  std::vector<double> frozen;
  if (!std::holds_alternative<Discrete>(s.a_law)) {
    frozen = stratified_sample(s.a_law, split(kConstructionLineage, 1), kConstructionSample);
  }
  const double elog = expected_log_abs(s.a_law, frozen);
  contraction_ = std::exp(elog);
  require(elog < 0.0, ErrorCode::Parameter, "SRE requires E log|A| < 0 for stationarity");

  if (s.regime == SreRegime::Goldie) {
    require(nonnegative_support(s.a_law), ErrorCode::Parameter, "Goldie regime requires A >= 0");
    require(nonnegative_support(s.b_law), ErrorCode::Parameter,
            "Goldie regime is implemented for B >= 0 (Theta_0 = +1)");
    double kappa = 0.0;
    if (frozen.empty()) {
      kappa = solve_kesten_index(s.a_law, 0, 1e-10, kConstructionLineage);
    } else {
      kappa = solve_kesten_index(frozen, 1e-10);
    }
    tail_.alpha = kappa;
    tail_.p_plus = 1.0;
    tail_.scale_kind = ScaleKind::MonteCarlo;
    sre_abs_moment_ = 1.0;
  } else {
    const auto alpha = tail_index(s.b_law);
    require(alpha.has_value(), ErrorCode::Parameter,
            "Grey regime requires a regularly varying B, got " + describe(s.b_law));
    const SignedMoments am = signed_moments_or_mc(s.a_law, *alpha, frozen);
    require(am.total() < 1.0, ErrorCode::Parameter,
            "Grey regime requires E|A|^alpha < 1, got " + std::to_string(am.total()));
    sre_abs_moment_ = am.total();
    // sum_j E[|Pi_j|^alpha; sign] split by sign: S+ - S- = 1/(1 - (a+ - a-)),
    // S+ + S- = 1/(1 - (a+ + a-)).
    const double s_sum = 1.0 / (1.0 - am.total());
    const double s_diff = 1.0 / (1.0 - (am.positive - am.negative));
    const double s_plus = 0.5 * (s_sum + s_diff);
    const double s_minus = 0.5 * (s_sum - s_diff);
    const double p = *upper_tail_weight(s.b_law);
    tail_.alpha = *alpha;
    tail_.p_plus = (p * s_plus + (1.0 - p) * s_minus) / s_sum;
    if (auto c = tail_constant(s.b_law)) {
      tail_.scale_kind = ScaleKind::Asymptotic;
      tail_.scale = *c * s_sum;
    } else {
      tail_.scale_kind = ScaleKind::MonteCarlo;
    }
  }
  burn_in_ = burn_in_for_rate(contraction_);
}

void Model::init_garch(const Garch11Spec& s) {
  require(s.alpha0 > 0.0 && s.alpha1 > 0.0 && s.beta1 > 0.0, ErrorCode::Parameter,
          "GARCH(1,1) needs alpha0, alpha1, beta1 > 0");
  validate(s.z_law);
  const auto z = stratified_sample(s.z_law, split(kConstructionLineage, 2), kConstructionSample);
  std::vector<double> a(z.size());
  double elog = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    a[i] = s.alpha1 * z[i] * z[i] + s.beta1;
    elog += std::log(a[i]);
  }
  elog /= static_cast<double>(a.size());
  require(elog < 0.0, ErrorCode::Parameter,
          "GARCH(1,1) requires E log(alpha1 Z^2 + beta1) < 0 for stationarity");
  contraction_ = std::exp(0.5 * elog);
  const double kappa = solve_kesten_index(a, 1e-10);
  tail_.alpha = 2.0 * kappa;
  const SignedMoments zm = signed_moments_or_mc(s.z_law, tail_.alpha, z);
  tail_.p_plus = zm.positive / zm.total();
  garch_z_moment_ = zm.total();
  tail_.scale_kind = ScaleKind::MonteCarlo;
  burn_in_ = burn_in_for_rate(std::exp(elog));
}

void Model::init_stochvol(const StochVolSpec& s) {
  validate(s.sigma_law);
  validate(s.z_law);
  require(std::abs(s.log_ar) < 1.0, ErrorCode::Parameter,
          "stochastic volatility log_ar must lie in (-1, 1)");
  const auto alpha = tail_index(s.z_law);
  require(alpha.has_value(), ErrorCode::Parameter, "volatility innovation is not regularly varying");
  tail_.alpha = *alpha;
  tail_.p_plus = *upper_tail_weight(s.z_law);
  if (auto c = tail_constant(s.z_law)) {
    // Breiman: P(|sigma Z| > x) ~ E[sigma^alpha] P(|Z| > x).
    const double m = *alpha;
    tail_.scale_kind = ScaleKind::Asymptotic;
    tail_.scale = *c * std::exp(m * s.sigma_law.mu + 0.5 * m * m * s.sigma_law.sigma *
                                                          s.sigma_law.sigma);
  } else {
    tail_.scale_kind = ScaleKind::MonteCarlo;
  }
}

void Model::build_reference() {
  std::vector<double> path(kReferenceLength);
  Stream stream(split(kConstructionLineage, 3));
  simulate(stream, path);
  for (auto& x : path) x = std::abs(x);
  std::sort(path.begin(), path.end());
  tail_.reference = std::make_shared<const std::vector<double>>(std::move(path));
}

void Model::compute_centering() {
  std::optional<double> m = std::visit(
      overloaded{
          [](const IidSpec& s) { return htlab::mean(s.law); },
          [](const MovingAverageSpec& s) -> std::optional<double> {
            const auto mz = htlab::mean(s.noise);
            if (!mz) return std::nullopt;
            return *mz * std::accumulate(s.psi.begin(), s.psi.end(), 0.0);
          },
          [](const SreSpec& s) -> std::optional<double> {
            const auto ma = htlab::mean(s.a_law);
            const auto mb = htlab::mean(s.b_law);
            if (!ma || !mb || *ma >= 1.0) return std::nullopt;
            return *mb / (1.0 - *ma);
          },
          [](const Garch11Spec& s) -> std::optional<double> {
            const auto mz = htlab::mean(s.z_law);
            if (mz && *mz == 0.0) return 0.0;
            return std::nullopt;
          },
          [](const StochVolSpec& s) -> std::optional<double> {
            const auto mz = htlab::mean(s.z_law);
            if (!mz) return std::nullopt;
            return *mz * htlab::mean(s.sigma_law).value();
          },
      },
      spec_);
  if (tail_.alpha <= 1.0) {
    // No finite mean to subtract.
    centering_ = {};
    return;
  }
  if (m) {
    centering_ = {*m, 0.0};
    return;
  }
  // Batch means over a long path.
  constexpr std::size_t kBatches = 64;
  constexpr std::size_t kBatchLen = 1u << 15;
  std::vector<double> batch_means(kBatches);
  parallel_for(kBatches, [&](std::size_t b) {
    Stream stream(split(split(kConstructionLineage, 4), b));
    std::vector<double> path(kBatchLen);
    simulate(stream, path);
    batch_means[b] = mean_of(path);
  });
  const double mu = mean_of(batch_means);
  double var = 0.0;
  for (double bm : batch_means) var += (bm - mu) * (bm - mu);
  var /= static_cast<double>(kBatches - 1);
  centering_ = {mu, std::sqrt(var / static_cast<double>(kBatches))};
}

std::size_t Model::default_horizon() const {
  if (auto k = dependence_range()) return *k;
  if (!(contraction_ > 0.0)) return 1;
  const double k = std::ceil(std::log(1e-8) / std::log(contraction_));
  if (!(k < static_cast<double>(kMaxHorizon))) return kMaxHorizon;
  return std::max<std::size_t>(1, static_cast<std::size_t>(k));
}

std::optional<std::size_t> Model::dependence_range() const {
  return std::visit(
      overloaded{
          [](const IidSpec&) -> std::optional<std::size_t> { return 0; },
          [](const MovingAverageSpec& s) -> std::optional<std::size_t> {
            return s.psi.size() - 1;
          },
          [](const StochVolSpec&) -> std::optional<std::size_t> { return 0; },
          [](const auto&) -> std::optional<std::size_t> { return std::nullopt; },
      },
      spec_);
}

void Model::simulate(Stream& stream, std::span<double> out,
                     std::optional<double> initial_state) const {
  std::visit(
      overloaded{
          [&](const IidSpec& s) {
            for (auto& x : out) x = draw(s.law, stream);
          },
          [&](const MovingAverageSpec& s) {
            const std::size_t q = s.psi.size() - 1;
            std::vector<double> z(out.size() + q);
            for (auto& v : z) v = draw(s.noise, stream);
            for (std::size_t t = 0; t < out.size(); ++t) {
              double x = 0.0;
              for (std::size_t j = 0; j <= q; ++j) x += s.psi[j] * z[t + q - j];
              out[t] = x;
            }
          },
          [&](const SreSpec& s) {
            double x = initial_state.value_or(0.0);
            for (std::size_t t = 0; t < burn_in_; ++t) {
              const double a = draw(s.a_law, stream);
              x = a * x + draw(s.b_law, stream);
            }
            for (auto& v : out) {
              const double a = draw(s.a_law, stream);
              x = a * x + draw(s.b_law, stream);
              v = x;
            }
          },
          [&](const Garch11Spec& s) {
            const double persistence = s.alpha1 + s.beta1;
            double s2 = initial_state.value_or(persistence < 1.0 ? s.alpha0 / (1.0 - persistence)
                                                                  : s.alpha0);
            double z = draw(s.z_law, stream);
            for (std::size_t t = 0; t < burn_in_; ++t) {
              s2 = s.alpha0 + (s.alpha1 * z * z + s.beta1) * s2;
              z = draw(s.z_law, stream);
            }
            for (auto& v : out) {
              s2 = s.alpha0 + (s.alpha1 * z * z + s.beta1) * s2;
              z = draw(s.z_law, stream);
              v = std::sqrt(s2) * z;
            }
          },
          [&](const StochVolSpec& s) {
            const double mu = s.sigma_law.mu;
            const double sd = s.sigma_law.sigma;
            const double innov = sd * std::sqrt(1.0 - s.log_ar * s.log_ar);
            double h = mu + sd * draw_normal(stream);
            bool first = true;
            for (auto& v : out) {
              if (!first) h = mu + s.log_ar * (h - mu) + innov * draw_normal(stream);
              first = false;
              v = std::exp(h) * draw(s.z_law, stream);
            }
          },
      },
      spec_);
}

TailProfile tail_profile(const ModelSpec& spec) { return Model(spec).tail(); }

PathBatch simulate_paths(const Model& model, std::size_t n, std::size_t replicas,
                         const SeedLineage& lineage) {
  require(n >= 1 && replicas >= 1, ErrorCode::Parameter, "simulate_paths needs n, R >= 1");
  PathBatch batch;
  batch.replicas = replicas;
  batch.length = n;
  batch.lineage = lineage;
  batch.burn_in = model.burn_in();
  batch.values.resize(n * replicas);
  parallel_for(replicas, [&](std::size_t r) {
    Stream stream(split(lineage, r));
    model.simulate(stream, std::span<double>(batch.values.data() + r * n, n));
  });
  return batch;
}

}  // namespace htlab
