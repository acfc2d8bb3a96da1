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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "htlab/error.hpp"
#include "htlab/models.hpp"
#include "htlab/tail_process.hpp"

using namespace htlab;

namespace {

std::vector<SpectralTailPath> draw_many(const Model& m, std::size_t k, std::size_t mback,
                                        std::size_t n, std::uint64_t seed) {
  const SpectralSampler sampler(m, k, mback);
  Stream s(SeedLineage{seed, {}});
  std::vector<SpectralTailPath> out(n);
  for (auto& p : out) sampler.draw(s, p);
  return out;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
  double s = 0.0, s2 = 0.0;
  for (double x : v) {
    s += x;
    s2 += x * x;
  }
  const double n = static_cast<double>(v.size());
  const double m = s / n;
  return {m, std::sqrt(std::max(0.0, s2 / n - m * m) / n)};
}

// Two-sample Kolmogorov-Smirnov distance with weights on the second sample.
// Values are rounded to a grid so that point masses blurred by O(1/u) terms
// compare equal.
double ks_distance(std::vector<double> a, std::vector<std::pair<double, double>> b, double grid) {
  auto snap = [grid](double x) { return std::round(x / grid) * grid; };
  for (auto& x : a) x = snap(x);
  for (auto& [x, w] : b) x = snap(x);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double wb = 0.0;
  for (const auto& [x, w] : b) wb += w;
  std::size_t i = 0, j = 0;
  double fa = 0.0, fb = 0.0, d = 0.0;
  while (i < a.size() || j < b.size()) {
    const double x = std::min(i < a.size() ? a[i] : INFINITY, j < b.size() ? b[j].first : INFINITY);
    while (i < a.size() && a[i] == x) ++i, fa = static_cast<double>(i) / a.size();
    while (j < b.size() && b[j].first == x) fb += b[j++].second / wb;
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

}  // namespace

TEST_SUITE("tail_process") {

TEST_CASE("theta_0 on the unit sphere") {
  const std::vector<ModelSpec> specs{
      IidSpec{TwoSidedPareto{1.5, 0.3}},
      MovingAverageSpec{{1.0, -0.5, 0.25}, TwoSidedPareto{2.0, 0.7}},
      SreSpec{Discrete{{2.0, 0.5}, {0.3, 0.7}}, Pareto{3.0}, SreRegime::Goldie},
      SreSpec{Discrete{{0.6, -0.4}, {0.5, 0.5}}, TwoSidedPareto{2.0, 0.8}, SreRegime::Grey},
      Garch11Spec{1e-6, 0.1, 0.85, Normal{}},
      StochVolSpec{LogNormal{0.0, 0.5}, TwoSidedPareto{3.0, 0.4}, 0.0},
  };
  for (const auto& spec : specs) {
    const Model m(spec);
    for (const auto& p : draw_many(m, 5, 0, 2000, 31)) CHECK(std::abs(p.fwd[0]) == 1.0);
  }
}

TEST_CASE("iid and stochastic volatility paths vanish off zero") {
  const Model iid(IidSpec{Pareto{2.0}});
  for (const auto& p : draw_many(iid, 4, 3, 100, 32)) {
    CHECK(p.fwd == std::vector<double>{1, 0, 0, 0, 0});
    CHECK(p.back == std::vector<double>{0, 0, 0});
    CHECK(p.weight == 1.0);
  }
  const Model sv(StochVolSpec{LogNormal{0.0, 1.0}, Pareto{2.0}, 0.9});
  for (const auto& p : draw_many(sv, 3, 0, 100, 33)) CHECK(p.fwd == std::vector<double>{1, 0, 0, 0});
}

TEST_CASE("moving average shock offsets") {
  const Model m(MovingAverageSpec{{1.0, 1.0}, Pareto{1.0}});
  std::size_t n_first = 0;
  const auto paths = draw_many(m, 1, 1, 20000, 34);
  for (const auto& p : paths) {
    const bool first = p.back[0] == 0.0;
    if (first) {
      ++n_first;
      CHECK(p.fwd == std::vector<double>{1, 1});
    } else {
      CHECK(p.back[0] == 1.0);
      CHECK(p.fwd == std::vector<double>{1, 0});
    }
  }
  CHECK(std::abs(n_first / 20000.0 - 0.5) < 4 * std::sqrt(0.25 / 20000));
}

TEST_CASE("geometric forward path for constant A") {
  const Model m(SreSpec{deterministic(0.5), Pareto{3.0}, SreRegime::Grey});
  const auto p = sample_spectral(m, 4, 0, {35, {}});
  CHECK(p.fwd == std::vector<double>{1, 0.5, 0.25, 0.125, 0.0625});
  const auto y = sample_tail(m, 2, 0, {35, {1}});
  CHECK(y.y0 >= 1.0);
  CHECK(y.at(2) / y.at(0) == 0.25);
  CHECK(sample_tail(Model(IidSpec{Pareto{2.0}}), 1, 0, {35, {2}}).at(1) == 0.0);
}

TEST_CASE("tail radius is pareto") {
  const Model m(MovingAverageSpec{{1.0, 0.5}, Pareto{1.5}});
  const std::size_t n = 200000;
  std::size_t above = 0;
  for (std::size_t i = 0; i < n; ++i) above += sample_tail(m, 1, 0, {36, {i}}).y0 > 2.0;
  const double p = std::pow(2.0, -1.5);
  CHECK(std::abs(above / double(n) - p) < 4 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("backward horizons only where constructed") {
  const Model goldie(SreSpec{Discrete{{2.0, 0.5}, {0.3, 0.7}}, Pareto{3.0}, SreRegime::Goldie});
  const Model garch(Garch11Spec{1e-6, 0.1, 0.85, Normal{}});
  for (const Model* m : {&goldie, &garch}) {
    CHECK_NOTHROW(SpectralSampler(*m, 3, 0));
    try {
      SpectralSampler(*m, 3, 1);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnsupportedBackwardHorizon);
    }
  }
}

TEST_CASE("k-dependent zero pattern") {
  const Model m(MovingAverageSpec{{1.0, 0.0, -0.7, 0.3}, TwoSidedPareto{1.2, 0.6}});
  const std::size_t k = 3;
  for (const auto& p : draw_many(m, 6, 6, 5000, 37)) {
    std::vector<std::ptrdiff_t> nonzero;
    for (std::ptrdiff_t t = -6; t <= 6; ++t)
      if (p.at(t) != 0.0) nonzero.push_back(t);
    for (std::ptrdiff_t t : nonzero) CHECK(std::abs(t) <= std::ptrdiff_t(k));
    CHECK(nonzero.back() - nonzero.front() <= std::ptrdiff_t(k));
  }
}

TEST_CASE("time-change identity for moving averages") {
  const Model m(MovingAverageSpec{{1.0, -0.5, 0.8}, TwoSidedPareto{1.7, 0.4}});
  const auto paths = draw_many(m, 2, 2, 200000, 38);
  for (std::ptrdiff_t j = 1; j <= 2; ++j) {
    std::vector<double> fwd, back;
    for (const auto& p : paths) {
      fwd.push_back(p.at(j) != 0.0);
      back.push_back(std::pow(std::abs(p.at(-j)), m.alpha()));
    }
    const auto a = mean_se(fwd), b = mean_se(back);
    CAPTURE(j);
    CHECK(std::abs(a.mean - b.mean) < 4 * std::hypot(a.se, b.se));
  }
}

TEST_CASE("k-dependent structure") {
  const auto iid = kdep_structure(Model(IidSpec{TwoSidedPareto{1.0, 0.25}}));
  CHECK(iid.k == 0);
  CHECK(iid.lambda == 1.0);
  CHECK(iid.p_sign == 0.25);

  const auto ma = kdep_structure(Model(MovingAverageSpec{{1.0, 1.0}, Pareto{1.0}}));
  CHECK(ma.k == 1);
  CHECK(ma.lambda == doctest::Approx(0.5));
  CHECK(ma.shape == std::vector<double>{1.0, 1.0});

  for (double theta : {0.3, 2.0}) {
    const auto s = kdep_structure(Model(MovingAverageSpec{{1.0, theta}, Pareto{1.5}}));
    CHECK(s.lambda == doctest::Approx(1.0 / (1.0 + std::pow(theta, 1.5))));
  }

  for (const ModelSpec& spec :
       {ModelSpec{SreSpec{deterministic(0.5), Pareto{3.0}, SreRegime::Grey}},
        ModelSpec{Garch11Spec{1e-6, 0.1, 0.85, Normal{}}}}) {
    try {
      kdep_structure(Model(spec));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotKDependent);
    }
  }
}

TEST_CASE("lambda matches the quiet-past frequency") {
  const Model m(MovingAverageSpec{{0.6, -1.0, 0.5}, TwoSidedPareto{1.3, 0.5}});
  const auto s = kdep_structure(m);
  std::vector<double> quiet;
  for (const auto& p : draw_many(m, s.k, s.k, 100000, 39)) {
    bool q = true;
    for (std::size_t j = 1; j <= s.k; ++j) q = q && p.at(-std::ptrdiff_t(j)) == 0.0;
    quiet.push_back(q);
  }
  const auto e = mean_se(quiet);
  CHECK(std::abs(e.mean - s.lambda) < 4 * e.se);

  // Grey: the Theta_{-1} = 0 indicator has probability 1 - E|A|^alpha.
  const Model grey(SreSpec{Discrete{{0.6, -0.4}, {0.5, 0.5}}, TwoSidedPareto{2.0, 0.8}, SreRegime::Grey});
  std::vector<double> grey_quiet;
  for (const auto& p : draw_many(grey, 1, 1, 100000, 40)) grey_quiet.push_back(p.back[0] == 0.0);
  const auto g = mean_se(grey_quiet);
  CHECK(std::abs(g.mean - (1.0 - (0.36 + 0.16) / 2)) < 4 * g.se);
}

TEST_CASE("garch tilting is scale free") {
  const double c = 3.0;
  const Model unit(Garch11Spec{1e-6, 0.1, 0.85, Normal{0.0, 1.0}});
  const Model scaled(Garch11Spec{1e-6, 0.1 / (c * c), 0.85, Normal{0.0, c}});
  CHECK(scaled.alpha() == doctest::Approx(unit.alpha()).epsilon(1e-6));
  auto weighted = [](const Model& m) {
    double sw = 0.0, s1 = 0.0, s2 = 0.0;
    for (const auto& p : draw_many(m, 3, 0, 100000, 41)) {
      sw += p.weight;
      s1 += p.weight * p.fwd[1] * p.fwd[1];
      s2 += p.weight * (p.fwd[3] > 0.5);
    }
    return std::pair{s1 / sw, s2 / sw};
  };
  const auto [a1, a2] = weighted(unit);
  const auto [b1, b2] = weighted(scaled);
  CHECK(b1 == doctest::Approx(a1).epsilon(1e-6));
  CHECK(b2 == doctest::Approx(a2).epsilon(1e-6));
}

TEST_CASE("conditional law of X_1 / |X_0| above a high threshold") {
  // Noise-driven families converge at rate 1/u, so they get a higher level
  // and a coarser grid than the multiplicative ones.
  struct Case {
    ModelSpec spec;
    double level;
    std::size_t chunks;
    double grid;
  };
  const std::vector<Case> cases{
      {IidSpec{TwoSidedPareto{1.5, 0.3}}, 1e-4, 10, 0.1},
      {MovingAverageSpec{{1.0, -0.5, 0.25}, TwoSidedPareto{2.0, 0.7}}, 1e-4, 10, 0.1},
      {SreSpec{Discrete{{0.6, -0.4}, {0.5, 0.5}}, TwoSidedPareto{2.0, 0.8}, SreRegime::Grey}, 1e-4, 10,
       0.1},
      {SreSpec{Discrete{{2.0, 0.5}, {0.3, 0.7}}, Pareto{3.0}, SreRegime::Goldie}, 1e-3, 5, 0.02},
      {Garch11Spec{1e-6, 0.1, 0.85, Normal{}}, 1e-3, 5, 0.02},
  };
  const std::size_t chunk = 4000000;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Model m(cases[i].spec);
    CAPTURE(m.family());
    const double u = m.tail().quantile_for_survival(cases[i].level);
    std::vector<double> empirical;
    for (std::size_t c = 0; c < cases[i].chunks; ++c) {
      const auto path = simulate_paths(m, chunk, 1, {42, {i, c}}).values;
      for (std::size_t t = 0; t + 1 < path.size(); ++t)
        if (std::abs(path[t]) > u) empirical.push_back(path[t + 1] / std::abs(path[t]));
    }
    std::vector<std::pair<double, double>> spectral;
    for (const auto& p : draw_many(m, 1, 0, 100000, 43)) spectral.emplace_back(p.fwd[1], p.weight);
    CHECK(empirical.size() > 3000);
    CHECK(ks_distance(empirical, spectral, cases[i].grid) < 0.05);
  }
}

}  // TEST_SUITE
