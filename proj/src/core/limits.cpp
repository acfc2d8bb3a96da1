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

#include "htlab/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "htlab/error.hpp"
#include "htlab/parallel.hpp"

namespace htlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double pos_pow(double x, double alpha) { return x > 0.0 ? std::pow(x, alpha) : 0.0; }

struct Contribution {
  double value = 0.0;
  double bound = 0.0;
};

struct Folded {
  Accumulator value;
  Accumulator bound;

  void merge(const Folded& o) {
    value.merge(o.value);
    bound.merge(o.bound);
  }
};

// Sum of |Theta_t| beyond the horizon under a geometric envelope.
double envelope_residual(const SpectralTailPath& path, double rate) {
  if (rate <= 0.0) return 0.0;
  if (!(rate < 1.0)) return kInf;
  return std::abs(path.fwd.back()) * rate / (1.0 - rate);
}

// Bound on |(a + d)_+^alpha - a_+^alpha| for |a| <= scale.
double power_increment_bound(double scale, double d, double alpha) {
  if (d == 0.0) return 0.0;
  if (!std::isfinite(d)) return kInf;
  if (alpha <= 1.0) return std::pow(d, alpha);
  return alpha * std::pow(scale + d, alpha - 1.0) * d;
}

template <class Fn>
MonteCarloEstimate spectral_fold(const SpectralSource& src, std::size_t n_draws,
                                 const SeedLineage& lineage, Fn&& fn) {
  require(n_draws >= 1, ErrorCode::Parameter, "need at least one Monte Carlo draw");
  require(static_cast<bool>(src.draw), ErrorCode::Parameter, "spectral source has no sampler");
  const std::size_t chunks = chunk_count(n_draws);
  const Folded total = fold_chunks<Folded>(chunks, [&](std::size_t c) {
    Folded part;
    Stream stream(split(lineage, c));
    SpectralTailPath path;
    const std::size_t begin = c * kDrawsPerChunk;
    const std::size_t end = std::min(n_draws, begin + kDrawsPerChunk);
    for (std::size_t i = begin; i < end; ++i) {
      src.draw(stream, path);
      const Contribution contrib = fn(path, stream);
      part.value.add(contrib.value, path.weight);
      part.bound.add(contrib.bound, path.weight);
    }
    return part;
  });
  MonteCarloEstimate est;
  est.value = total.value.mean();
  est.std_error = total.value.std_error();
  est.n = n_draws;
  est.lineage = lineage;
  est.truncation = {src.horizon, total.bound.mean()};
  return est;
}

MonteCarloEstimate scaled(MonteCarloEstimate est, double factor) {
  est.value *= factor;
  est.std_error *= std::abs(factor);
  est.truncation.tail_bound *= std::abs(factor);
  return est;
}

// (sup_{t>=0} sum_{i=0}^t Theta_i)_+^a - (sup_{t>=1} sum_{i=1}^t Theta_i)_+^a
Contribution sup_walk_difference(const SpectralTailPath& path, double alpha, double rate) {
  const auto& th = path.fwd;
  double s0 = th[0];
  double sup0 = s0;
  double s1 = 0.0;
  double sup1 = th.size() > 1 ? -kInf : 0.0;
  double abs_sum = std::abs(th[0]);
  for (std::size_t t = 1; t < th.size(); ++t) {
    s0 += th[t];
    s1 += th[t];
    sup0 = std::max(sup0, s0);
    sup1 = std::max(sup1, s1);
    abs_sum += std::abs(th[t]);
  }
  const double d = envelope_residual(path, rate);
  return {pos_pow(sup0, alpha) - pos_pow(sup1, alpha), 2.0 * power_increment_bound(abs_sum, d, alpha)};
}

Contribution sum_difference(const SpectralTailPath& path, double alpha, double rate) {
  const auto& th = path.fwd;
  double s1 = 0.0;
  double abs_sum = std::abs(th[0]);
  for (std::size_t t = 1; t < th.size(); ++t) {
    s1 += th[t];
    abs_sum += std::abs(th[t]);
  }
  const double d = envelope_residual(path, rate);
  return {pos_pow(th[0] + s1, alpha) - pos_pow(s1, alpha),
          2.0 * power_increment_bound(abs_sum, d, alpha)};
}

void require_ruin_alpha(double alpha, double rho) {
  require(alpha > 1.0, ErrorCode::AlphaOutOfRange,
          "ruin constants need alpha > 1, got " + std::to_string(alpha));
  require(rho > 0.0 && std::isfinite(rho), ErrorCode::Parameter, "safety loading rho must be > 0");
}

const SreSpec& require_sre(const Model& model) {
  const auto* sre = std::get_if<SreSpec>(&model.spec());
  require(sre != nullptr, ErrorCode::Parameter, "closed form needs an SRE model");
  return *sre;
}

}  // namespace

// ---- cluster functionals ------------------------------------------------

namespace functionals {

ClusterFunctional sup_abs_exceeds(double u) {
  require(u > 0.0, ErrorCode::Parameter, "threshold must be positive");
  return {0.5 * u,
          [u](std::span<const double> xs) {
            for (double x : xs)
              if (std::abs(x) > u) return 1.0;
            return 0.0;
          },
          "sup_abs"};
}

ClusterFunctional sup_exceeds(double u) {
  require(u > 0.0, ErrorCode::Parameter, "threshold must be positive");
  return {0.5 * u,
          [u](std::span<const double> xs) {
            for (double x : xs)
              if (x > u) return 1.0;
            return 0.0;
          },
          "sup"};
}

ClusterFunctional exceedance_count(double u) {
  require(u > 0.0, ErrorCode::Parameter, "threshold must be positive");
  return {0.5 * u,
          [u](std::span<const double> xs) {
            double n = 0.0;
            for (double x : xs)
              if (std::abs(x) > u) n += 1.0;
            return n;
          },
          "count"};
}

ClusterFunctional excess_sum_exceeds(double u, double level) {
  require(u > 0.0 && level > 0.0, ErrorCode::Parameter, "threshold and level must be positive");
  return {0.5 * u,
          [u, level](std::span<const double> xs) {
            double s = 0.0;
            for (double x : xs) s += std::max(0.0, x - u);
            return s > level ? 1.0 : 0.0;
          },
          "excess_sum"};
}

ClusterFunctional zero() {
  return {1.0, [](std::span<const double>) { return 0.0; }, "zero"};
}

ClusterFunctional max_value() {
  return {1.0,
          [](std::span<const double> xs) {
            double m = 0.0;
            for (double x : xs) m = std::max(m, x);
            return m;
          },
          "max"};
}

ClusterFunctional sum_value() {
  return {1.0,
          [](std::span<const double> xs) {
            double s = 0.0;
            for (double x : xs) s += x;
            return s;
          },
          "sum"};
}

ClusterFunctional shifted_exceedance(ClusterFunctional c) {
  auto inner = c.evaluate;
  return {1.0,
          [inner](std::span<const double> xs) {
            std::vector<double> shifted(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) shifted[i] = std::max(0.0, xs[i] - 1.0);
            return inner(shifted) > 1.0 ? 1.0 : 0.0;
          },
          "shifted:" + c.name};
}

std::vector<ClusterFunctional> shipped() {
  return {sup_abs_exceeds(),
          sup_exceeds(),
          exceedance_count(),
          excess_sum_exceeds(),
          zero(),
          shifted_exceedance(max_value()),
          shifted_exceedance(sum_value())};
}

ClusterFunctional by_name(const std::string& name, double u, double level) {
  constexpr std::string_view kShift = "shifted:";
  if (name.rfind(kShift, 0) == 0) {
    const std::string inner = name.substr(kShift.size());
    if (inner == "max") return shifted_exceedance(max_value());
    if (inner == "sum") return shifted_exceedance(sum_value());
    return shifted_exceedance(by_name(inner, u, level));
  }
  if (name == "sup_abs") return sup_abs_exceeds(u);
  if (name == "sup") return sup_exceeds(u);
  if (name == "count") return exceedance_count(u);
  if (name == "excess_sum") return excess_sum_exceeds(u, level);
  if (name == "zero") return zero();
  fail(ErrorCode::Config, "unknown cluster functional '" + name + "'");
}

}  // namespace functionals

// ---- sources --------------------------------------------------------------

SpectralSource spectral_source(const Model& model, std::size_t k) {
  auto sampler = std::make_shared<SpectralSampler>(model, k, 0);
  SpectralSource src;
  src.alpha = model.alpha();
  src.horizon = k;
  if (auto range = model.dependence_range()) {
    src.envelope_rate = k >= *range ? 0.0 : kInf;
  } else {
    src.envelope_rate = model.contraction_rate();
  }
  src.draw = [sampler](Stream& stream, SpectralTailPath& out) { sampler->draw(stream, out); };
  return src;
}

const char* to_string(KDepMode mode) {
  switch (mode) {
    case KDepMode::Sup:
      return "Sup";
    case KDepMode::Sum:
      return "Sum";
    case KDepMode::AbsSup:
      return "AbsSup";
  }
  return "?";
}

// ---- extremal index ---------------------------------------------------------

MonteCarloEstimate extremal_index(const SpectralSource& src, std::size_t n_draws,
                                  const SeedLineage& lineage) {
  const double alpha = src.alpha;
  return spectral_fold(src, n_draws, lineage, [&](const SpectralTailPath& path, Stream&) {
    double sup0 = 0.0, sup1 = 0.0;
    for (std::size_t t = 0; t < path.fwd.size(); ++t) {
      const double v = std::pow(std::abs(path.fwd[t]), alpha);
      sup0 = std::max(sup0, v);
      if (t >= 1) sup1 = std::max(sup1, v);
    }
    const double d = envelope_residual(path, src.envelope_rate);
    return Contribution{sup0 - sup1, std::isfinite(d) ? std::min(1.0, std::pow(d, alpha)) : 1.0};
  });
}

MonteCarloEstimate extremal_index(const Model& model, std::size_t k, std::size_t n_draws,
                                  const SeedLineage& lineage) {
  return extremal_index(spectral_source(model, k), n_draws, lineage);
}

// ---- generic cluster functional ------------------------------------------

MonteCarloEstimate cluster_limit(const ClusterFunctional& f, const SpectralSource& src,
                                 std::size_t n_draws, const SeedLineage& lineage) {
  require(f.epsilon > 0.0 && std::isfinite(f.epsilon), ErrorCode::Parameter,
          "cluster functional needs epsilon > 0");
  const double alpha = src.alpha;
  const double eps = f.epsilon;
  const double scale = std::pow(eps, -alpha);
  auto est = spectral_fold(src, n_draws, lineage, [&](const SpectralTailPath& path, Stream& stream) {
    const double y = eps * std::pow(stream.uniform(), -1.0 / alpha);
    thread_local std::vector<double> scaled_path;
    scaled_path.resize(path.fwd.size());
    for (std::size_t t = 0; t < path.fwd.size(); ++t) scaled_path[t] = y * path.fwd[t];
    const std::span<const double> all(scaled_path);
    const double v = f(all) - f(all.subspan(1));
    const double d = envelope_residual(path, src.envelope_rate);
    // The tail beyond k matters only if some y |Theta_t| > eps there.
    const double tail = std::isfinite(d) ? std::min(1.0, std::pow(y * d / eps, alpha)) : 1.0;
    return Contribution{v, 2.0 * tail};
  });
  est.value *= scale;
  est.std_error *= scale;
  est.truncation.tail_bound *= scale;
  return est;
}

MonteCarloEstimate cluster_limit(const ClusterFunctional& f, const Model& model, std::size_t k,
                                 std::size_t n_draws, const SeedLineage& lineage) {
  return cluster_limit(f, spectral_source(model, k), n_draws, lineage);
}

// ---- random-walk constants ----------------------------------------------------

MonteCarloEstimate sup_rw_constant(const SpectralSource& src, std::size_t n_draws,
                                   const SeedLineage& lineage) {
  return spectral_fold(src, n_draws, lineage, [&](const SpectralTailPath& path, Stream&) {
    return sup_walk_difference(path, src.alpha, src.envelope_rate);
  });
}

MonteCarloEstimate sup_rw_constant(const Model& model, std::size_t k, std::size_t n_draws,
                                   const SeedLineage& lineage) {
  return sup_rw_constant(spectral_source(model, k), n_draws, lineage);
}

MonteCarloEstimate sum_constant(const SpectralSource& src, std::size_t n_draws,
                                const SeedLineage& lineage) {
  return spectral_fold(src, n_draws, lineage, [&](const SpectralTailPath& path, Stream&) {
    return sum_difference(path, src.alpha, src.envelope_rate);
  });
}

MonteCarloEstimate sum_constant(const Model& model, std::size_t k, std::size_t n_draws,
                                const SeedLineage& lineage) {
  return sum_constant(spectral_source(model, k), n_draws, lineage);
}

MonteCarloEstimate kdep_constant(const KDepStructure& st, KDepMode mode, std::size_t n_draws,
                                 const SeedLineage& lineage) {
  SpectralSource src;
  src.alpha = st.alpha;
  src.horizon = st.k;
  src.draw = [&st](Stream& stream, SpectralTailPath& out) {
    out.back.clear();
    out.weight = 1.0;
    out.fwd.resize(st.k + 1);
    st.draw_tilde(stream, out.fwd);
  };
  const double alpha = st.alpha;
  auto est = spectral_fold(src, n_draws, lineage, [&](const SpectralTailPath& path, Stream&) {
    double s = 0.0;
    double g = -kInf;
    for (double th : path.fwd) {
      s += th;
      if (mode == KDepMode::Sup) g = std::max(g, s);
      if (mode == KDepMode::AbsSup) g = std::max(g, std::abs(s));
    }
    if (mode == KDepMode::Sum) g = s;
    return Contribution{pos_pow(g, alpha), 0.0};
  });
  return scaled(est, st.lambda);
}

// ---- ruin -------------------------------------------------------------------

MonteCarloEstimate ruin_constant(const SpectralSource& src, double rho, std::size_t n_draws,
                                 const SeedLineage& lineage) {
  require_ruin_alpha(src.alpha, rho);
  const auto numerator = sup_rw_constant(src, n_draws, lineage);
  return scaled(numerator, 1.0 / ((src.alpha - 1.0) * rho));
}

MonteCarloEstimate ruin_constant(const Model& model, double rho, std::size_t k,
                                 std::size_t n_draws, const SeedLineage& lineage) {
  require_ruin_alpha(model.alpha(), rho);
  return ruin_constant(spectral_source(model, k), rho, n_draws, lineage);
}

MonteCarloEstimate goldie_ruin_closed_form(const Model& model, double rho, std::size_t k,
                                           std::size_t n_draws, const SeedLineage& lineage) {
  const SreSpec& sre = require_sre(model);
  require_ruin_alpha(model.alpha(), rho);
  require(nonnegative_support(sre.a_law) && model.tail().p_plus == 1.0, ErrorCode::Parameter,
          "Goldie closed form needs A >= 0 and a nonnegative spectral process");
  const double alpha = model.alpha();
  const double rate = model.contraction_rate();
  SpectralSource src;
  src.alpha = alpha;
  src.horizon = k;
  // The "path" here is (1, Pi_1, ..., Pi_k).
  src.draw = [&sre, k](Stream& stream, SpectralTailPath& out) {
    out.back.clear();
    out.weight = 1.0;
    out.fwd.resize(k + 1);
    double pi = 1.0;
    out.fwd[0] = 1.0;
    for (std::size_t t = 1; t <= k; ++t) {
      pi *= draw(sre.a_law, stream);
      out.fwd[t] = pi;
    }
  };
  auto est = spectral_fold(src, n_draws, lineage, [&](const SpectralTailPath& path, Stream&) {
    double y = 0.0;
    for (double v : path.fwd) y += v;
    const double d = envelope_residual(path, rate);
    return Contribution{std::pow(y, alpha) - std::pow(y - 1.0, alpha),
                        2.0 * power_increment_bound(y, d, alpha)};
  });
  return scaled(est, 1.0 / ((alpha - 1.0) * rho));
}

MonteCarloEstimate grey_ruin_closed_form(const Model& model, double rho, std::size_t k,
                                         std::size_t n_draws, const SeedLineage& lineage) {
  const SreSpec& sre = require_sre(model);
  require(sre.regime == SreRegime::Grey, ErrorCode::Parameter,
          "Grey closed form needs the Grey regime");
  require_ruin_alpha(model.alpha(), rho);
  const double alpha = model.alpha();
  const double p = *upper_tail_weight(sre.b_law);
  const double rate = model.contraction_rate();
  SpectralSource src;
  src.alpha = alpha;
  src.horizon = k;
  src.draw = [&sre, k](Stream& stream, SpectralTailPath& out) {
    out.back.clear();
    out.weight = 1.0;
    out.fwd.resize(k + 1);
    double pi = 1.0;
    out.fwd[0] = 1.0;
    for (std::size_t t = 1; t <= k; ++t) {
      pi *= draw(sre.a_law, stream);
      out.fwd[t] = pi;
    }
  };
  auto est = spectral_fold(src, n_draws, lineage, [&](const SpectralTailPath& path, Stream&) {
    double s = 0.0, hi = -kInf, lo = kInf, abs_sum = 0.0;
    for (double v : path.fwd) {
      s += v;
      hi = std::max(hi, s);
      lo = std::min(lo, s);
      abs_sum += std::abs(v);
    }
    const double d = envelope_residual(path, rate);
    return Contribution{p * pos_pow(hi, alpha) + (1.0 - p) * pos_pow(-lo, alpha),
                        power_increment_bound(abs_sum, d, alpha)};
  });
  return scaled(est, (1.0 - model.sre_abs_moment()) / ((alpha - 1.0) * rho));
}

MonteCarloEstimate garch_ruin_constant(const Model& model, double rho, std::size_t k,
                                       std::size_t n_draws, const SeedLineage& lineage) {
  const auto* garch = std::get_if<Garch11Spec>(&model.spec());
  require(garch != nullptr, ErrorCode::Parameter, "garch_ruin_constant needs a GARCH(1,1) model");
  require_ruin_alpha(model.alpha(), rho);
  const double alpha = model.alpha();
  const double rate = model.contraction_rate();
  SpectralSource src;
  src.alpha = alpha;
  src.horizon = k;
  // fwd holds (Z_0, Z_1 Pi_1^{1/2}, ..., Z_k Pi_k^{1/2}).
  src.draw = [garch, k](Stream& stream, SpectralTailPath& out) {
    out.back.clear();
    out.weight = 1.0;
    out.fwd.resize(k + 1);
    double z = draw(garch->z_law, stream);
    out.fwd[0] = z;
    double pi = 1.0;
    for (std::size_t t = 1; t <= k; ++t) {
      pi *= garch->alpha1 * z * z + garch->beta1;
      z = draw(garch->z_law, stream);
      out.fwd[t] = z * std::sqrt(pi);
    }
  };
  auto est = spectral_fold(src, n_draws, lineage, [&](const SpectralTailPath& path, Stream&) {
    return sup_walk_difference(path, alpha, rate);
  });
  return scaled(est, 1.0 / (model.garch_z_moment() * (alpha - 1.0) * rho));
}

// ---- stable log-characteristic function ---------------------------------

ComplexEstimate stable_logcf(const Model& model, double s, std::size_t k, std::size_t n_draws,
                             double quad_eps, const SeedLineage& lineage) {
  const double alpha = model.alpha();
  require(alpha > 0.0 && alpha < 2.0 && alpha != 1.0, ErrorCode::Unsupported,
          "stable log-CF needs alpha in (0,2) without 1, got " + std::to_string(alpha));
  require(quad_eps > 0.0 && std::isfinite(quad_eps), ErrorCode::Parameter,
          "quad_eps must be positive");
  require(n_draws >= 1, ErrorCode::Parameter, "need at least one Monte Carlo draw");
  const SpectralSource src = spectral_source(model, k);
  const double eps = quad_eps;
  const double scale = std::pow(eps, -alpha);

  // Per draw on (eps, inf): eps^-alpha [e^{i y s S0} - e^{i y s S1}], y = eps P.
  // Moments of S0 = sum_{j>=0} Theta_j and S1 = sum_{j>=1} Theta_j feed the
  // Taylor expansion on (0, eps].
  struct Parts {
    Accumulator re, im, second, third, abs_sum, bound;
    void merge(const Parts& o) {
      re.merge(o.re);
      im.merge(o.im);
      second.merge(o.second);
      third.merge(o.third);
      abs_sum.merge(o.abs_sum);
      bound.merge(o.bound);
    }
  };
  const std::size_t chunks = chunk_count(n_draws);
  const Parts parts = fold_chunks<Parts>(chunks, [&](std::size_t c) {
    Parts part;
    Stream stream(split(lineage, c));
    SpectralTailPath path;
    const std::size_t begin = c * kDrawsPerChunk;
    const std::size_t end = std::min(n_draws, begin + kDrawsPerChunk);
    for (std::size_t i = begin; i < end; ++i) {
      src.draw(stream, path);
      const double y = eps * std::pow(stream.uniform(), -1.0 / alpha);
      double s1 = 0.0, abs_sum = std::abs(path.fwd[0]);
      for (std::size_t t = 1; t < path.fwd.size(); ++t) {
        s1 += path.fwd[t];
        abs_sum += std::abs(path.fwd[t]);
      }
      const double s0 = path.fwd[0] + s1;
      const double w = path.weight;
      part.re.add(std::cos(y * s * s0) - std::cos(y * s * s1), w);
      part.im.add(std::sin(y * s * s0) - std::sin(y * s * s1), w);
      part.second.add(s0 * s0 - s1 * s1, w);
      part.third.add(std::abs(s0 * s0 * s0) + std::abs(s1 * s1 * s1), w);
      part.abs_sum.add(abs_sum, w);
      const double d = envelope_residual(path, src.envelope_rate);
      // |e^{iu} - e^{iv}| <= |u - v| for the part of the sums beyond k.
      part.bound.add(std::isfinite(d) ? std::min(2.0, y * std::abs(s) * d) : 2.0, w);
    }
    return part;
  });
  require(std::isfinite(parts.abs_sum.mean()), ErrorCode::Unsupported,
          "E sum |Theta_j| is not finite");

  const double mean_theta0 = 2.0 * model.tail().p_plus - 1.0;
  // int_0^eps y^j alpha y^{-alpha-1} dy = alpha eps^{j-alpha} / (j - alpha), j > alpha.
  auto power_integral = [&](double j) { return alpha * std::pow(eps, j - alpha) / (j - alpha); };
  std::complex<double> value(scale * parts.re.mean(), scale * parts.im.mean());
  if (alpha < 1.0) {
    // First-order term on (0, eps]: i y s Theta_0.
    value += std::complex<double>(0.0, s * mean_theta0 * power_integral(1.0));
  } else {
    // Centering -i y s Theta_0 integrated over (eps, inf).
    value -= std::complex<double>(0.0, s * mean_theta0 * alpha * std::pow(eps, 1.0 - alpha) /
                                           (alpha - 1.0));
  }
  // Second-order term on (0, eps]: -(y s)^2 (S0^2 - S1^2) / 2.
  value -= 0.5 * s * s * parts.second.mean() * power_integral(2.0);
  if (s == 0.0) value = {0.0, 0.0};

  ComplexEstimate est;
  est.value = value;
  est.std_error_re = scale * parts.re.std_error() +
                     0.5 * s * s * parts.second.std_error() * power_integral(2.0);
  est.std_error_im = scale * parts.im.std_error();
  est.n = n_draws;
  est.lineage = lineage;
  // Third-order remainder on (0, eps] plus the horizon truncation.
  const double taylor = std::abs(s * s * s) / 6.0 * parts.third.mean() * power_integral(3.0);
  est.truncation = {k, taylor + scale * parts.bound.mean()};
  return est;
}

// ---- limit point process ---------------------------------------------------

std::vector<double> simulate_limit_pp(const KDepStructure& st, double x_floor,
                                      double window_intensity, const SeedLineage& lineage) {
  require(x_floor > 0.0, ErrorCode::Parameter, "x_floor must be positive");
  require(window_intensity > 0.0, ErrorCode::Parameter, "window intensity must be positive");
  const double c = st.max_abs();
  std::vector<double> points;
  if (c == 0.0) return points;
  const double rate = st.lambda * window_intensity;
  // Gamma^{-1/alpha} c > x_floor  <=>  Gamma < (x_floor / c)^{-alpha}.
  const double gamma_max = std::pow(x_floor / c, -st.alpha);
  Stream stream(lineage);
  std::vector<double> cluster(st.k + 1);
  double gamma = 0.0;
  for (;;) {
    gamma += -std::log(stream.uniform()) / rate;
    if (gamma > gamma_max) break;
    const double radius = std::pow(gamma, -1.0 / st.alpha);
    st.draw_tilde(stream, cluster);
    for (double th : cluster) {
      const double point = radius * th;
      if (std::abs(point) > x_floor) points.push_back(point);
    }
  }
  return points;
}

}  // namespace htlab
