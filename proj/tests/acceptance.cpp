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

// Acceptance checks at desk scale.  Prints one line per criterion and exits
// non-zero when any criterion fails.
//
// Usage: htlab_acceptance <path to htlab cli> <scratch dir>

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "htlab/estimators.hpp"
#include "htlab/limits.hpp"
#include "htlab/models.hpp"
#include "htlab/tail_process.hpp"

using namespace htlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!ok) {
      pass = false;
      detail += " [FAIL]";
    }
  }
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double zval(const MonteCarloEstimate& a, const MonteCarloEstimate& b) {
  return z_score(a.value, a.std_error, b.value, b.std_error);
}

bool agree(const MonteCarloEstimate& a, const MonteCarloEstimate& b) { return std::abs(zval(a, b)) < 4.0; }

Outcome extremal_index_suite() {
  Outcome o;
  const auto iid = extremal_index(Model(IidSpec{Pareto{2.0}}), 1, 100000, {1, {1}});
  o.check(iid.value == 1.0 && iid.std_error == 0.0, fmt("iid %.6f", iid.value));

  const auto ma = extremal_index(Model(MovingAverageSpec{{1.0, 1.0}, Pareto{1.0}}), 1, 100000, {1, {2}});
  o.check(std::abs(ma.value - 0.5) <= 0.005, fmt("MA(1,1) a=1 %.4f+-%.4f", ma.value, ma.std_error));

  const Model ma2(MovingAverageSpec{{1.0, 0.5}, Pareto{1.5}});
  const auto g2 = extremal_index(ma2, 1, 100000, {1, {3}});
  const double e2 = 1.0 / (1.0 + std::pow(0.5, 1.5));
  o.check(std::abs(g2.value - e2) <= 4 * g2.std_error, fmt("MA(1,0.5) a=1.5 %.4f vs %.4f", g2.value, e2));

  const Model ar(SreSpec{deterministic(0.5), Pareto{3.0}, SreRegime::Grey});
  const auto g3 = extremal_index(ar, ar.default_horizon(), 100000, {1, {4}});
  o.check(std::abs(g3.value - 0.875) < 1e-12 && g3.std_error < 1e-12,
          fmt("AR(1) %.12f se %.1e", g3.value, g3.std_error));
  return o;
}

Outcome cross_formula() {
  Outcome o;
  const std::vector<std::pair<const char*, ModelSpec>> specs{
      {"iid", IidSpec{TwoSidedPareto{1.5, 0.3}}},
      {"MA(1,1)", MovingAverageSpec{{1.0, 1.0}, Pareto{1.0}}},
      {"MA(1,-0.5,0.25)", MovingAverageSpec{{1.0, -0.5, 0.25}, TwoSidedPareto{1.5, 0.7}}},
  };
  const std::size_t N = 100000;
  double worst = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Model m(specs[i].second);
    const auto st = kdep_structure(m);
    const auto g = extremal_index(m, st.k, N, {2, {i, 1}});
    const auto c = cluster_limit(functionals::sup_abs_exceeds(), m, st.k, N, {2, {i, 2}});
    const auto ks = kdep_constant(st, KDepMode::Sup, N, {2, {i, 3}});
    const auto sup = sup_rw_constant(m, st.k, N, {2, {i, 4}});
    const auto kn = kdep_constant(st, KDepMode::Sum, N, {2, {i, 5}});
    const auto sum = sum_constant(m, st.k, N, {2, {i, 6}});
    const bool ok = agree(g, c) && agree(ks, sup) && agree(kn, sum);
    worst = std::max({worst, std::abs(zval(g, c)), std::abs(zval(ks, sup)), std::abs(zval(kn, sum))});
    o.check(ok, fmt("%s z=(%.2f,%.2f,%.2f)", specs[i].first, zval(g, c), zval(ks, sup), zval(kn, sum)));
  }
  o.check(worst < 4.0, fmt("max|z| %.2f", worst));
  return o;
}

Outcome ruin_constants() {
  Outcome o;
  const auto iid = ruin_constant(Model(IidSpec{Pareto{3.0}}), 1.0, 1, 1000, {3, {1}});
  o.check(iid.value == 0.5, fmt("iid %.6f", iid.value));

  const Model ar(SreSpec{deterministic(0.5), Pareto{3.0}, SreRegime::Grey});
  const auto r = ruin_constant(ar, 1.0, ar.default_horizon(), 100000, {3, {2}});
  o.check(std::abs(r.value / 3.5 - 1.0) <= 0.02, fmt("AR(1) %.5f (k=%zu)", r.value, ar.default_horizon()));

  const Model sre(SreSpec{Discrete{{0.8, 0.2}, {0.5, 0.5}}, Pareto{2.5}, SreRegime::Grey});
  const std::size_t k = sre.default_horizon();
  const auto general = ruin_constant(sre, 1.0, k, 400000, {3, {3}});
  const auto goldie = goldie_ruin_closed_form(sre, 1.0, k, 400000, {3, {4}});
  const auto grey = grey_ruin_closed_form(sre, 1.0, k, 400000, {3, {5}});
  o.check(agree(general, goldie) && agree(general, grey) && agree(goldie, grey),
          fmt("SRE A~{0.8,0.2}: %.4f / %.4f / %.4f, z=(%.2f,%.2f,%.2f)", general.value, goldie.value,
              grey.value, zval(general, goldie), zval(general, grey), zval(goldie, grey)));

  // alpha < 2 keeps both estimators at finite variance.
  const Model garch(Garch11Spec{1e-6, 0.9, 0.2, Normal{}});
  const std::size_t kg = garch.default_horizon();
  const auto tilted = ruin_constant(garch, 1.0, kg, 400000, {3, {6}});
  const auto untilted = garch_ruin_constant(garch, 1.0, kg, 400000, {3, {7}});
  o.check(agree(tilted, untilted),
          fmt("GARCH(0.9,0.2) a=%.3f tilted %.4f+-%.4f untilted %.4f+-%.4f z=%.2f", garch.alpha(),
              tilted.value, tilted.std_error, untilted.value, untilted.std_error, zval(tilted, untilted)));
  return o;
}

Outcome large_deviations() {
  Outcome o;
  const std::size_t n = 100, R = 1000000;
  const Model iid(IidSpec{Pareto{1.5}});
  const double x1 = iid.tail().quantile_for_survival(1e-2 / n);
  const auto r1 = ld_ratio(iid, n, R, x1, KDepMode::Sum, {4, {1}});
  o.check(std::abs(r1.ratio - 1.0) <= 0.15 && !(r1.flags & kFlagRegionViolation),
          fmt("iid sum %.4f+-%.4f (x=%.1f, p=%.2e)", r1.ratio, r1.ratio_std_error, x1,
              r1.numerator_prob.value));

  const Model ma(MovingAverageSpec{{1.0, 1.0}, Pareto{1.5}});
  const double theory = std::pow(2.0, 1.5) / 2.0;
  const auto th = sup_rw_constant(ma, 1, 100000, {4, {2}});
  const double x2 = ma.tail().quantile_for_survival(1e-2 / (n * theory));
  const auto r2 = ld_ratio(ma, n, R, x2, KDepMode::Sup, {4, {3}});
  o.check(std::abs(r2.ratio / theory - 1.0) <= 0.15 && !(r2.flags & kFlagRegionViolation),
          fmt("MA(1,1) sup %.4f+-%.4f vs %.4f (MC %.4f)", r2.ratio, r2.ratio_std_error, theory, th.value));
  return o;
}

Outcome empirical_ruin() {
  Outcome o;
  const Model m(IidSpec{Pareto{3.0}});
  const double C = 12.0;
  const double theory = ruin_constant(m, 1.0, 1, 1000, {5, {1}}).value;
  // Barrier where theory * x * P(|X - mean| > x) = 1e-3.
  const double mean = m.centering().mean;
  double lo = 2.0, hi = 1e4;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (theory * mid * m.tail().survival(mid + mean) > 1e-3 ? lo : hi) = mid;
  }
  const auto r = ruin_probability(m, 1.0, hi, C, 1000000, {5, {2}}, 0.01);
  o.check(std::pow(C, -2.0) < 0.01, fmt("C=%.0f", C));
  o.check(std::abs(r.ratio / 0.5 - 1.0) <= 0.2,
          fmt("ratio %.4f+-%.4f (x=%.2f, p=%.2e)", r.ratio, r.ratio_std_error, hi, r.numerator_prob.value));
  return o;
}

Outcome hill_and_tail_measure() {
  Outcome o;
  const auto xs = sample(Pareto{2.0}, {6, {1}}, 100000);
  const auto h = hill(xs, 1000);
  o.check(h.alpha >= 1.9 && h.alpha <= 2.1, fmt("hill %.4f", h.alpha));

  const Model m(IidSpec{Pareto{1.0}});
  const std::size_t n = 100000, block = 100, R = 10;
  const auto batch = simulate_paths(m, n, R, {6, {2}});
  const std::vector<TestSet> sets{{1.0, INFINITY}, {2.0, INFINITY}};
  const auto mu = tail_empirical_measure(batch, m.tail().quantile_for_survival(1.0 / block), block, sets);
  const double k_total = static_cast<double>(R * (n / block));
  const double se1 = std::sqrt(1.0 / k_total), se2 = std::sqrt(0.5 / k_total);
  o.check(std::abs(mu[0] - 1.0) <= 4 * se1, fmt("mu(1,inf) %.4f+-%.4f", mu[0], se1));
  o.check(std::abs(mu[1] - 0.5) <= 4 * se2, fmt("mu(2,inf) %.4f+-%.4f", mu[1], se2));
  return o;
}

Outcome structural() {
  Outcome o;
  // Zero pattern on every k-dependent family.
  const std::vector<ModelSpec> kdep{
      IidSpec{TwoSidedPareto{1.5, 0.3}},
      MovingAverageSpec{{1.0, 1.0}, Pareto{1.0}},
      MovingAverageSpec{{1.0, 0.0, -0.7, 0.3}, TwoSidedPareto{1.2, 0.6}},
      StochVolSpec{LogNormal{0.0, 0.5}, TwoSidedPareto{2.0, 0.4}, 0.0},
  };
  std::size_t violations = 0;
  for (std::size_t i = 0; i < kdep.size(); ++i) {
    const Model m(kdep[i]);
    const std::size_t k = kdep_structure(m).k;
    const std::size_t h = k + 3;
    const SpectralSampler sampler(m, h, h);
    Stream s(SeedLineage{7, {1, i}});
    SpectralTailPath p;
    for (int d = 0; d < 10000; ++d) {
      sampler.draw(s, p);
      std::ptrdiff_t first = 1 << 20, last = -(1 << 20);
      for (std::ptrdiff_t t = -std::ptrdiff_t(h); t <= std::ptrdiff_t(h); ++t) {
        if (p.at(t) == 0.0) continue;
        first = std::min(first, t);
        last = std::max(last, t);
        if (std::abs(t) > std::ptrdiff_t(k)) ++violations;
      }
      if (last - first > std::ptrdiff_t(k)) ++violations;
    }
  }
  o.check(violations == 0, fmt("zero-pattern violations %zu", violations));

  // Time-change identity on a moving average.
  {
    const Model m(MovingAverageSpec{{1.0, -0.5, 0.8}, TwoSidedPareto{1.7, 0.4}});
    const SpectralSampler sampler(m, 2, 2);
    Stream s(SeedLineage{7, {2}});
    const int N = 200000;
    double worst = 0.0;
    std::vector<double> a(3), a2(3), b(3), b2(3);
    SpectralTailPath p;
    for (int d = 0; d < N; ++d) {
      sampler.draw(s, p);
      for (int j = 1; j <= 2; ++j) {
        const double u = p.at(j) != 0.0, v = std::pow(std::abs(p.at(-j)), m.alpha());
        a[j] += u, a2[j] += u * u, b[j] += v, b2[j] += v * v;
      }
    }
    for (int j = 1; j <= 2; ++j) {
      const double ma = a[j] / N, mb = b[j] / N;
      const double se = std::sqrt((a2[j] / N - ma * ma) / N + (b2[j] / N - mb * mb) / N);
      worst = std::max(worst, std::abs(ma - mb) / se);
    }
    o.check(worst <= 4.0, fmt("time-change max|z| %.2f", worst));
  }

  // Padding invariance of shipped functionals.
  {
    Stream s(SeedLineage{7, {3}});
    std::size_t bad = 0, total = 0;
    for (const auto& f : functionals::shipped()) {
      for (int trial = 0; trial < 1000; ++trial, ++total) {
        std::vector<double> xs(1 + s() % 6);
        for (auto& x : xs) x = 4.0 * (s.uniform() - 0.5) / s.uniform();
        std::vector<double> padded;
        for (std::size_t i = s() % 3; i > 0; --i) padded.push_back(f.epsilon * (2 * s.uniform() - 1));
        padded.insert(padded.end(), xs.begin(), xs.end());
        for (std::size_t i = s() % 3; i > 0; --i) padded.push_back(f.epsilon * (2 * s.uniform() - 1));
        if (f(padded) != f(xs)) ++bad;
      }
      if (f(std::vector<double>(3, 0.0)) != 0.0) ++bad;
    }
    o.check(bad == 0, fmt("padding mismatches %zu/%zu", bad, total));
  }

  // Limit point process maximum against exp(-gamma x^-alpha).
  {
    const Model m(MovingAverageSpec{{1.0, 1.0}, Pareto{1.0}});
    const auto st = kdep_structure(m);
    const double gamma = extremal_index(m, 1, 100000, {7, {4}}).value;
    const std::size_t runs = 10000;
    std::vector<double> maxima;
    for (std::size_t r = 0; r < runs; ++r) {
      const auto pts = simulate_limit_pp(st, 0.05, 1.0, {7, {5, r}});
      maxima.push_back(pts.empty() ? 0.0 : *std::max_element(pts.begin(), pts.end()));
    }
    std::sort(maxima.begin(), maxima.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < runs; ++i) {
      if (maxima[i] == 0.0) continue;
      const double f = std::exp(-gamma / maxima[i]);
      ks = std::max({ks, std::abs(f - double(i) / runs), std::abs(f - double(i + 1) / runs)});
    }
    o.check(ks < 0.02, fmt("pp KS %.4f", ks));
  }
  return o;
}

Outcome determinism(const std::string& cli, const std::filesystem::path& dir) {
  Outcome o;
  std::filesystem::create_directories(dir);
  auto run = [&](unsigned threads, const std::string& tag) {
    const auto out = dir / ("verify_" + tag + ".csv");
    const std::string cmd = "\"" + cli + "\" verify --seed 42 --threads " + std::to_string(threads) +
                            " --out \"" + out.string() + "\"";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::pair{rc, buf.str()};
  };
  const auto [rc0, ref] = run(1, "1a");
  o.check(rc0 == 0 && !ref.empty(), fmt("exit %d, %zu bytes", rc0, ref.size()));
  for (auto [threads, tag] : {std::pair{1u, "1b"}, std::pair{4u, "4"}, std::pair{8u, "8"}}) {
    const auto [rc, text] = run(threads, tag);
    o.check(rc == 0 && text == ref, fmt("threads=%u %s", threads, text == ref ? "identical" : "differs"));
  }
  return o;
}

Outcome stable_cf() {
  Outcome o;
  const Model m(IidSpec{Pareto{0.5}});
  boost::math::quadrature::ooura_fourier_sin<double> fsin;
  boost::math::quadrature::ooura_fourier_cos<double> fcos;
  auto inv_sqrt = [](double y) { return 1.0 / std::sqrt(y); };
  for (double s : {0.5, 1.0, 2.0}) {
    // int (e^{isy} - 1) (1/2) y^{-3/2} dy, integrated by parts.
    const std::complex<double> oracle(-s * fsin.integrate(inv_sqrt, s).first,
                                      s * fcos.integrate(inv_sqrt, s).first);
    const auto e = stable_logcf(m, s, 0, 1000000, 0.1, {9, {}});
    const double rel = std::abs(e.value - oracle) / std::abs(oracle);
    o.check(rel < 0.01, fmt("s=%.1f rel %.2e", s, rel));
  }
  const auto zero = stable_logcf(m, 0.0, 0, 1000, 0.1, {9, {1}});
  o.check(zero.value == std::complex<double>(0.0, 0.0), "logcf(0) = 0");
  const Model ma(MovingAverageSpec{{1.0, -0.5}, TwoSidedPareto{0.5, 0.7}});
  const auto plus = stable_logcf(ma, 1.0, 1, 200000, 0.1, {9, {2}});
  const auto minus = stable_logcf(ma, -1.0, 1, 200000, 0.1, {9, {2}});
  const double gap = std::abs(minus.value - std::conj(plus.value));
  o.check(gap <= 4 * std::hypot(plus.std_error_re, plus.std_error_im),
          fmt("conjugate gap %.2e", gap));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <htlab cli> <scratch dir>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::filesystem::path scratch = argv[2];

  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"extremal index suite", 10, extremal_index_suite},
      {"cross-formula identities", 30, cross_formula},
      {"ruin constants", 120, ruin_constants},
      {"empirical large deviations", 300, large_deviations},
      {"empirical ruin", 600, empirical_ruin},
      {"hill and tail measure", 60, hill_and_tail_measure},
      {"structural invariants", 600, structural},
      {"determinism", 600, [&] { return determinism(cli, scratch); }},
      {"stable log-cf", 600, stable_cf},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.check(false, std::string("error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < criteria[i].budget_s, fmt("%.1fs of %.0fs", secs, criteria[i].budget_s));
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
