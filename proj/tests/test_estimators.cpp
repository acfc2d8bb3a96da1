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

#include <cmath>
#include <vector>

#include "htlab/error.hpp"
#include "htlab/estimators.hpp"
#include "htlab/limits.hpp"
#include "htlab/models.hpp"

using namespace htlab;

namespace {

template <class F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Undefined;
}

}  // namespace

TEST_SUITE("estimators") {

TEST_CASE("hill on constructed input") {
  const double e = std::exp(1.0);
  std::vector<double> xs{e, -e, e, e, 1.0, 0.5, 0.2, 0.1};
  const auto h = hill(xs, 5);
  CHECK(h.alpha == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(h.degenerate);

  CHECK(hill(std::vector<double>(10, 3.0), 4).degenerate);
  CHECK(error_of([&] { hill(xs, 1); }) == ErrorCode::Parameter);
  CHECK(error_of([&] { hill(xs, xs.size()); }) == ErrorCode::Parameter);
}

TEST_CASE("hill is scale free and consistent") {
  const auto xs = sample(Pareto{2.0}, {110, {}}, 100000);
  const auto h = hill(xs, 1000);
  CHECK(h.alpha > 1.85);
  CHECK(h.alpha < 2.15);
  for (double c : {0.001, 7.0, 1e6}) {
    std::vector<double> scaled(xs);
    for (auto& v : scaled) v *= c;
    CHECK(std::abs(hill(scaled, 1000).alpha - h.alpha) < 1e-9);
  }
}

TEST_CASE("hill on a garch path tracks the kesten index") {
  const Model m(Garch11Spec{1e-6, 0.3, 0.6, Normal{}});
  const std::size_t n = 1000000;
  const auto path = simulate_paths(m, n, 1, {111, {}});
  const auto h = hill(path.values, static_cast<std::size_t>(std::pow(n, 0.6)));
  CHECK(h.alpha == doctest::Approx(m.alpha()).epsilon(0.15));
}

TEST_CASE("tail empirical measure") {
  const Model m(IidSpec{Pareto{1.0}});
  const std::size_t n = 100000, block = 100;
  const auto batch = simulate_paths(m, n, 4, {112, {}});
  const double a_m = m.tail().quantile_for_survival(1.0 / block);
  const std::vector<TestSet> sets{{1.0, INFINITY}, {2.0, INFINITY}, {1.0, 2.0}};
  const auto mu = tail_empirical_measure(batch, a_m, block, sets);
  // Counts are binomial with n R / block expected events at level 1.
  const double k_total = 4.0 * n / block;
  CHECK(std::abs(mu[0] - 1.0) < 4 * std::sqrt(1.0 / k_total));
  CHECK(std::abs(mu[1] - 0.5) < 4 * std::sqrt(0.5 / k_total));
  CHECK(mu[2] == doctest::Approx(mu[0] - mu[1]));

  PathBatch empty;
  CHECK(tail_empirical_measure(empty, a_m, block, sets) == std::vector<double>(3, 0.0));
  const std::vector<TestSet> touching{{0.0, 1.0}};
  CHECK(error_of([&] { tail_empirical_measure(batch, a_m, block, touching); }) == ErrorCode::Domain);
  CHECK(error_of([&] { tail_empirical_measure(batch, a_m, 2 * n, sets); }) == ErrorCode::Precondition);
}

TEST_CASE("large-deviation region thresholds") {
  const auto p15 = tail_profile(IidSpec{Pareto{1.5}});
  CHECK(ld_region_threshold(p15, 100) == doctest::Approx(10.0 * std::pow(100.0, 1.0 / 1.5)));
  CHECK(ld_region_threshold(tail_profile(IidSpec{Pareto{2.0}}), 100) ==
        doctest::Approx(std::pow(100.0, 0.6)));
  CHECK(ld_region_threshold(tail_profile(IidSpec{Pareto{3.0}}), 100) ==
        doctest::Approx(10.0 * std::sqrt(100.0 * std::log(100.0))));
}

TEST_CASE("large-deviation ratio guards and ordering") {
  const Model m(MovingAverageSpec{{1.0, -0.6}, TwoSidedPareto{1.5, 0.6}});
  const auto batch = simulate_paths(m, 50, 20000, {113, {}});
  const double center = m.centering().mean;
  for (double x : {5.0, 50.0, 500.0}) {
    const auto sup = ld_ratio(batch, x, KDepMode::Sup, m.tail(), center);
    const auto sum = ld_ratio(batch, x, KDepMode::Sum, m.tail(), center);
    const auto abs_sup = ld_ratio(batch, x, KDepMode::AbsSup, m.tail(), center);
    CHECK(sup.ratio >= sum.ratio);
    CHECK(abs_sup.ratio >= sup.ratio);
    CHECK(sup.ratio == doctest::Approx(sup.numerator_prob.value / sup.denominator));
    CHECK(sup.denom_fidelity == ScaleKind::Asymptotic);
  }
  const auto low = ld_ratio(batch, 5.0, KDepMode::Sum, m.tail(), center);
  CHECK((low.flags & kFlagRegionViolation) != 0);
  const auto none = ld_ratio(batch, 1e12, KDepMode::Sum, m.tail(), center);
  CHECK(none.ratio == 0.0);
  CHECK((none.flags & kFlagUnreliableRareEvent) != 0);
  CHECK(flag_names(kFlagUnreliableRareEvent | kFlagRegionViolation) ==
        "UnreliableRareEvent|RegionViolation");

  // Iid Pareto: exact denominators.
  const Model iid(IidSpec{Pareto{1.5}});
  CHECK(ld_ratio(iid, 10, 10, 1e3, KDepMode::Sum, {114, {}}).denom_fidelity == ScaleKind::Exact);
}

TEST_CASE("streaming ratio equals the batch ratio") {
  const Model m(IidSpec{Pareto{1.5}});
  const auto batch = simulate_paths(m, 100, 3000, {115, {}});
  const double x = 400.0;
  const auto a = ld_ratio(batch, x, KDepMode::Sup, m.tail(), m.centering().mean);
  const auto b = ld_ratio(m, 100, 3000, x, KDepMode::Sup, {115, {}});
  CHECK(a.ratio == b.ratio);
  CHECK(a.numerator_prob.value == b.numerator_prob.value);
}

TEST_CASE("iid sum ratio approaches one") {
  const Model m(IidSpec{Pareto{1.5}});
  const std::size_t n = 100;
  const double x = m.tail().quantile_for_survival(1e-2 / n);
  const auto r = ld_ratio(m, n, 200000, x, KDepMode::Sum, {116, {}});
  CHECK(r.ratio == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("ruin probability guards") {
  const Model m(IidSpec{Pareto{3.0}});
  const double c_half = std::pow(0.5, 1.0 / (1.0 - 3.0));
  CHECK(error_of([&] { ruin_probability(m, 1.0, 10.0, c_half, 10, {117, {}}, 0.1); }) ==
        ErrorCode::Precondition);
  CHECK(error_of([&] { ruin_probability(Model(IidSpec{Pareto{0.9}}), 1.0, 10.0, 12.0, 10, {117, {}}); }) ==
        ErrorCode::AlphaOutOfRange);
  const auto r = ruin_probability(m, 1.0, 10.0, 12.0, 2000, {118, {}});
  CHECK(r.n == 120);
  CHECK(r.denom_fidelity == ScaleKind::Exact);
}

TEST_CASE("ruin ratio roughly halves when rho doubles") {
  const Model m(IidSpec{Pareto{3.0}});
  const auto r1 = ruin_probability(m, 1.0, 10.0, 12.0, 100000, {119, {}});
  const auto r2 = ruin_probability(m, 2.0, 10.0, 12.0, 100000, {119, {}});
  CHECK(r2.ratio / r1.ratio == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("block extremal index") {
  const Model iid(IidSpec{Pareto{1.0}});
  const auto ib = simulate_paths(iid, 1000000, 1, {120, {}});
  const double ui = iid.tail().quantile_for_survival(1e-3);
  const auto gi = block_extremal_index(ib, ui, 10);
  CHECK(gi.value == doctest::Approx(std::pow(1 - 1e-3, 10)).epsilon(0.02));

  const Model ma(MovingAverageSpec{{1.0, 1.0}, Pareto{1.0}});
  const auto mb = simulate_paths(ma, 2000000, 1, {121, {}});
  const auto gm = block_extremal_index(mb, ma.tail().quantile_for_survival(1e-3), 5);
  const auto theory = extremal_index(ma, 1, 100000, {122, {}});
  CHECK(std::abs(gm.value - theory.value) < 0.05);
  CHECK(gm.value >= 0.0);
  CHECK(gm.value <= 1.0);

  const Model ar(SreSpec{deterministic(0.5), Pareto{3.0}, SreRegime::Grey});
  const auto ab = simulate_paths(ar, 10000000, 1, {123, {}});
  const auto ga = block_extremal_index(ab, ar.tail().quantile_for_survival(1e-4), 20);
  CHECK(std::abs(ga.value - 0.875) < 0.05);

  CHECK(error_of([&] { block_extremal_index(ib, 1e300, 10); }) == ErrorCode::Undefined);
}

TEST_CASE("anticlustering diagnostic") {
  const Model iid(IidSpec{Pareto{2.0}});
  const auto batch = simulate_paths(iid, 400000, 1, {124, {}});
  const double v = iid.tail().quantile_for_survival(1e-3);
  const std::vector<std::size_t> ks{0, 5, 10, 20};
  const auto curve = anticlustering_diagnostic(batch, ks, 20, v, 1.0);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double exact = 1.0 - std::pow(1.0 - 1e-3, 20 - ks[i]);
    CHECK(std::abs(curve[i].value - exact) < 4 * curve[i].std_error + 1e-12);
  }
  CHECK(curve.back().value == 0.0);

  const Model ar(SreSpec{deterministic(0.5), Pareto{3.0}, SreRegime::Grey});
  const auto ab = simulate_paths(ar, 400000, 1, {125, {}});
  const auto c2 = anticlustering_diagnostic(ab, std::vector<std::size_t>{0, 1, 2, 4, 8}, 30,
                                            ar.tail().quantile_for_survival(1e-3), 1.0);
  for (std::size_t i = 1; i < c2.size(); ++i) CHECK(c2[i].value <= c2[i - 1].value);
  CHECK(c2.front().value > c2.back().value + 4 * c2.front().std_error);

  CHECK(error_of([&] { anticlustering_diagnostic(batch, ks, 20, 1.0, 1.0); }) ==
        ErrorCode::Precondition);
  const auto sparse = anticlustering_diagnostic(batch, ks, 20, 1e6, 1.0);
  CHECK((sparse[0].flags & kFlagWidened) != 0);
}

TEST_CASE("cluster functional ratio") {
  const Model m(IidSpec{Pareto{2.0}});
  const auto batch = simulate_paths(m, 50, 200000, {126, {}});
  const double x = m.tail().quantile_for_survival(1e-2 / 50);
  CHECK(cluster_functional_ratio(batch, functionals::zero(), x, m.tail()).ratio == 0.0);
  const auto r = cluster_functional_ratio(batch, functionals::max_value(), x, m.tail());
  const auto theory = cluster_limit(functionals::shifted_exceedance(functionals::max_value()), m, 0,
                                    100000, {127, {}});
  CHECK(std::abs(r.ratio - theory.value) < 4 * std::hypot(r.ratio_std_error, theory.std_error));
  CHECK(theory.value == doctest::Approx(0.25).epsilon(0.05));
}

}  // TEST_SUITE
