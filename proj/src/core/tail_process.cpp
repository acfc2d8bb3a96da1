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

#include "htlab/tail_process.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "htlab/error.hpp"

namespace htlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline double random_sign(Stream& stream, double p) { return stream.uniform() <= p ? 1.0 : -1.0; }

inline double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

double SpectralTailPath::at(std::ptrdiff_t t) const {
  if (t >= 0) {
    require(static_cast<std::size_t>(t) < fwd.size(), ErrorCode::Domain,
            "time index beyond forward horizon");
    return fwd[static_cast<std::size_t>(t)];
  }
  const auto j = static_cast<std::size_t>(-t);
  require(j <= back.size(), ErrorCode::Domain, "time index beyond backward horizon");
  return back[back.size() - j];
}

SpectralSampler::SpectralSampler(const Model& model, std::size_t k, std::size_t m)
    : model_(&model), k_(k), m_(m) {
  const auto& spec = model.spec();
  if (m > 0) {
    const bool has_backward = std::visit(
        overloaded{
            [](const SreSpec& s) { return s.regime == SreRegime::Grey; },
            [](const Garch11Spec&) { return false; },
            [](const auto&) { return true; },
        },
        spec);
    require(has_backward, ErrorCode::UnsupportedBackwardHorizon,
            "no backward spectral tail construction for family " + model.family());
  }
  if (const auto* ma = std::get_if<MovingAverageSpec>(&spec)) {
    double total = 0.0;
    for (std::size_t j = 0; j < ma->psi.size(); ++j) {
      if (ma->psi[j] == 0.0) continue;
      total += std::pow(std::abs(ma->psi[j]), model.alpha());
      ma_offsets_.push_back(j);
      ma_cumulative_.push_back(total);
    }
    for (auto& c : ma_cumulative_) c /= total;
  }
  if (const auto* sre = std::get_if<SreSpec>(&spec); sre && sre->regime == SreRegime::Grey) {
    grey_lambda_ = 1.0 - model.sre_abs_moment();
    const double p = *upper_tail_weight(sre->b_law);
    grey_p_zero_branch_ = p;
    grey_p_other_branch_ =
        grey_lambda_ < 1.0
            ? std::clamp((model.tail().p_plus - grey_lambda_ * p) / (1.0 - grey_lambda_), 0.0, 1.0)
            : p;
  }
}

void SpectralSampler::draw(Stream& stream, SpectralTailPath& out) const {
  out.fwd.assign(k_ + 1, 0.0);
  out.back.assign(m_, 0.0);
  out.weight = 1.0;
  const Model& model = *model_;
  std::visit(
      overloaded{
          [&](const IidSpec&) { out.fwd[0] = random_sign(stream, model.tail().p_plus); },
          [&](const StochVolSpec&) { out.fwd[0] = random_sign(stream, model.tail().p_plus); },
          [&](const MovingAverageSpec& s) {
            const double u = stream.uniform();
            std::size_t idx = 0;
            while (idx + 1 < ma_cumulative_.size() && u > ma_cumulative_[idx]) ++idx;
            const std::size_t shock = ma_offsets_[idx];
            const double sign = random_sign(stream, *upper_tail_weight(s.noise));
            const double norm = sign / std::abs(s.psi[shock]);
            // Theta_t = s psi_{J+t} / |psi_J| for -J <= t <= q - J.
            for (std::size_t t = 0; t <= k_ && shock + t < s.psi.size(); ++t)
              out.fwd[t] = norm * s.psi[shock + t];
            for (std::size_t j = 1; j <= m_ && j <= shock; ++j)
              out.back[m_ - j] = norm * s.psi[shock - j];
          },
          [&](const SreSpec& s) {
            if (s.regime == SreRegime::Goldie) {
              out.fwd[0] = 1.0;
            } else {
              const bool quiet_past = stream.uniform() <= grey_lambda_;
              out.fwd[0] =
                  random_sign(stream, quiet_past ? grey_p_zero_branch_ : grey_p_other_branch_);
              if (!quiet_past) std::fill(out.back.begin(), out.back.end(), std::nan(""));
            }
            double theta = out.fwd[0];
            for (std::size_t t = 1; t <= k_; ++t) {
              theta *= htlab::draw(s.a_law, stream);
              out.fwd[t] = theta;
            }
          },
          [&](const Garch11Spec& s) {
            double z = htlab::draw(s.z_law, stream);
            while (z == 0.0) z = htlab::draw(s.z_law, stream);
            const double abs_z0 = std::abs(z);
            out.weight = std::pow(abs_z0, model.alpha()) / model.garch_z_moment();
            out.fwd[0] = sign_of(z);
            double pi = 1.0;
            for (std::size_t t = 1; t <= k_; ++t) {
              pi *= s.alpha1 * z * z + s.beta1;
              z = htlab::draw(s.z_law, stream);
              out.fwd[t] = z * std::sqrt(pi) / abs_z0;
            }
          },
      },
      model.spec());
}

SpectralTailPath sample_spectral(const Model& model, std::size_t k, std::size_t m,
                                 const SeedLineage& lineage) {
  SpectralSampler sampler(model, k, m);
  Stream stream(lineage);
  SpectralTailPath path;
  sampler.draw(stream, path);
  return path;
}

TailPath sample_tail(const Model& model, std::size_t k, std::size_t m,
                     const SeedLineage& lineage) {
  SpectralSampler sampler(model, k, m);
  Stream stream(lineage);
  TailPath path;
  path.y0 = std::pow(stream.uniform(), -1.0 / model.alpha());
  sampler.draw(stream, path.theta);
  return path;
}

void KDepStructure::draw_tilde(Stream& stream, std::span<double> out) const {
  const double s = random_sign(stream, p_sign);
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = t < shape.size() ? s * shape[t] : 0.0;
}

double KDepStructure::max_abs() const {
  double m = 0.0;
  for (double v : shape) m = std::max(m, std::abs(v));
  return m;
}

KDepStructure kdep_structure(const Model& model) {
  KDepStructure out;
  out.alpha = model.alpha();
  std::visit(overloaded{
                 [&](const IidSpec&) {
                   out.k = 0;
                   out.lambda = 1.0;
                   out.shape = {1.0};
                   out.p_sign = model.tail().p_plus;
                 },
                 [&](const StochVolSpec&) {
                   out.k = 0;
                   out.lambda = 1.0;
                   out.shape = {1.0};
                   out.p_sign = model.tail().p_plus;
                 },
                 [&](const MovingAverageSpec& s) {
                   require(s.psi[0] != 0.0, ErrorCode::Parameter,
                           "k-dependent structure needs psi_0 != 0");
                   double total = 0.0;
                   for (double psi : s.psi) total += std::pow(std::abs(psi), model.alpha());
                   out.k = s.psi.size() - 1;
                   out.lambda = std::pow(std::abs(s.psi[0]), model.alpha()) / total;
                   out.shape.resize(s.psi.size());
                   for (std::size_t t = 0; t < s.psi.size(); ++t)
                     out.shape[t] = s.psi[t] / std::abs(s.psi[0]);
                   out.p_sign = *upper_tail_weight(s.noise);
                 },
                 [&](const auto&) {
                   fail(ErrorCode::NotKDependent,
                        "family " + model.family() + " is not k-dependent");
                 },
             },
             model.spec());
  return out;
}

}  // namespace htlab
