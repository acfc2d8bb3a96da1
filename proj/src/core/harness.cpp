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

#include "htlab/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>

#include "htlab/error.hpp"
#include "htlab/estimators.hpp"
#include "htlab/limits.hpp"
#include "htlab/parallel.hpp"
#include "htlab/tail_process.hpp"

namespace htlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::array<std::pair<Subcommand, const char*>, 9> kCommands{{
    {Subcommand::Simulate, "simulate"},
    {Subcommand::Constant, "constant"},
    {Subcommand::Ratio, "ratio"},
    {Subcommand::Ruin, "ruin"},
    {Subcommand::Hill, "hill"},
    {Subcommand::TailMeasure, "tailmeasure"},
    {Subcommand::Pp, "pp"},
    {Subcommand::Diagnose, "diagnose"},
    {Subcommand::Verify, "verify"},
}};

bool fits(Subcommand cmd, ExperimentKind kind) {
  using K = ExperimentKind;
  switch (cmd) {
    case Subcommand::Constant:
    case Subcommand::Simulate:
      return true;
    case Subcommand::Ratio:
      return kind == K::LdSup || kind == K::LdSum || kind == K::ClusterFunctional;
    case Subcommand::Ruin:
      return kind == K::Ruin;
    case Subcommand::Hill:
      return kind == K::Hill;
    case Subcommand::TailMeasure:
      return kind == K::TailMeasure;
    case Subcommand::Pp:
      return kind == K::LimitPP;
    case Subcommand::Diagnose:
      return kind == K::ExtremalIndex || kind == K::Diagnostics || kind == K::StableCF;
    case Subcommand::Verify:
      return false;
  }
  return false;
}

std::string join_flags(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += '|';
    out += p;
  }
  return out;
}

std::string fidelity_flag(const Model& model) {
  const ScaleKind kind = model.tail().scale_kind;
  if (kind == ScaleKind::Exact) return "";
  return std::string("Fidelity:") + to_string(kind);
}

std::string format_param(const char* name, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.6g", name, v);
  return buf;
}

// Shared state of one run.
struct Context {
  const ExperimentConfig& cfg;
  const Model& model;
  bool theory_only;
  SeedLineage theory;
  SeedLineage empirical;

  std::size_t horizon() const { return cfg.sizes.k > 0 ? cfg.sizes.k : model.default_horizon(); }

  ComparisonRow row(const std::string& label, const MonteCarloEstimate& th, double emp, double emp_se,
                    const std::string& flags) const {
    ComparisonRow r;
    r.experiment = label;
    r.theory = th.value;
    r.theory_se = th.std_error;
    r.horizon = th.truncation.horizon;
    r.tail_bound = th.truncation.tail_bound;
    r.theory_lineage = to_string(th.lineage);
    r.empirical_lineage = theory_only ? "" : to_string(empirical);
    r.empirical = theory_only ? kNaN : emp;
    r.empirical_se = theory_only ? kNaN : emp_se;
    r.z = z_score(r.empirical, r.empirical_se, r.theory, r.theory_se);
    std::string f = join_flags({flags, fidelity_flag(model), r.tail_bound > 0.0 ? "Truncated" : ""});
    if (std::isnan(r.theory)) f = join_flags({f, "NoTheory"});
    r.flags = f;
    return r;
  }

  MonteCarloEstimate exact(double value) const {
    MonteCarloEstimate e;
    e.value = value;
    e.lineage = theory;
    return e;
  }

  // Threshold from x, target probability or quantile level.  target_fn maps
  // x to the approximate probability of the empirical event.
  template <class TargetFn>
  double threshold(TargetFn&& target_fn, double default_target) const {
    const auto& t = cfg.thresholds;
    if (t.x) return *t.x;
    if (!t.target_prob && t.quantile) return model.tail().quantile_for_survival(1.0 - *t.quantile);
    const double target = t.target_prob.value_or(default_target);
    // target_fn is decreasing in x; bisect on log x.
    double lo = std::log(1e-6), hi = std::log(1e12);
    require(target_fn(std::exp(hi)) < target, ErrorCode::Domain,
            "target probability is not reachable at any threshold");
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (target_fn(std::exp(mid)) > target ? lo : hi) = mid;
    }
    return std::exp(hi);
  }

  double quantile_threshold(double default_level) const {
    const auto& t = cfg.thresholds;
    if (t.x) return *t.x;
    if (t.target_prob) return model.tail().quantile_for_survival(*t.target_prob);
    return model.tail().quantile_for_survival(1.0 - t.quantile.value_or(default_level));
  }
};

void extremal_index_rows(const Context& ctx, ComparisonReport& report) {
  const auto th = extremal_index(ctx.model, ctx.horizon(), ctx.cfg.sizes.N, ctx.theory);
  double emp = kNaN, emp_se = kNaN;
  std::string flags;
  if (!ctx.theory_only) {
    const std::size_t n = ctx.cfg.sizes.n;
    const std::size_t m = ctx.cfg.sizes.m > 0 ? ctx.cfg.sizes.m
                                              : static_cast<std::size_t>(std::round(std::sqrt(n)));
    const double u = ctx.quantile_threshold(0.999);
    const auto batch = simulate_paths(ctx.model, n, ctx.cfg.sizes.R, ctx.empirical);
    const auto est = block_extremal_index(batch, u, m);
    emp = est.value;
    emp_se = est.std_error;
    flags = join_flags({flag_names(est.flags), "m=" + std::to_string(m)});
  }
  report.rows.push_back(ctx.row("extremal_index", th, emp, emp_se, flags));
}

void ld_rows(const Context& ctx, ComparisonReport& report, KDepMode mode) {
  const auto th = mode == KDepMode::Sum
                      ? sum_constant(ctx.model, ctx.horizon(), ctx.cfg.sizes.N, ctx.theory)
                      : sup_rw_constant(ctx.model, ctx.horizon(), ctx.cfg.sizes.N, ctx.theory);
  double emp = kNaN, emp_se = kNaN;
  std::string flags;
  const std::size_t n = ctx.cfg.sizes.n;
  const double x = ctx.threshold(
      [&](double v) { return static_cast<double>(n) * ctx.model.tail().survival(v); }, 1e-2);
  if (!ctx.theory_only) {
    const auto est = ld_ratio(ctx.model, n, ctx.cfg.sizes.R, x, mode, ctx.empirical);
    emp = est.ratio;
    emp_se = est.ratio_std_error;
    flags = flag_names(est.flags);
  }
  const std::string label = mode == KDepMode::Sum ? "ld_sum" : "ld_sup";
  report.rows.push_back(ctx.row(label, th, emp, emp_se, join_flags({flags, format_param("x", x)})));
}

void ruin_rows(const Context& ctx, ComparisonReport& report) {
  const double rho = ctx.cfg.thresholds.rho;
  const auto th = ruin_constant(ctx.model, rho, ctx.horizon(), ctx.cfg.sizes.N, ctx.theory);
  double emp = kNaN, emp_se = kNaN;
  std::string flags;
  const double theory = th.value;
  const double x = ctx.threshold(
      [&](double v) { return theory * v * ctx.model.tail().survival(v); }, 1e-3);
  if (!ctx.theory_only) {
    const auto est = ruin_probability(ctx.model, rho, x, ctx.cfg.thresholds.C, ctx.cfg.sizes.R,
                                      ctx.empirical);
    emp = est.ratio;
    emp_se = est.ratio_std_error;
    flags = flag_names(est.flags);
  }
  report.rows.push_back(ctx.row("ruin", th, emp, emp_se,
                                join_flags({flags, format_param("x", x), format_param("rho", rho)})));
}

void hill_rows(const Context& ctx, ComparisonReport& report) {
  const auto th = ctx.exact(ctx.model.alpha());
  double emp = kNaN, emp_se = kNaN;
  std::string flags;
  if (!ctx.theory_only) {
    const std::size_t n = ctx.cfg.sizes.n;
    const std::size_t m =
        ctx.cfg.sizes.m > 0 ? ctx.cfg.sizes.m
                            : static_cast<std::size_t>(std::round(std::pow(static_cast<double>(n), 0.6)));
    const auto batch = simulate_paths(ctx.model, n, ctx.cfg.sizes.R, ctx.empirical);
    Accumulator acc;
    bool degenerate = false;
    for (std::size_t r = 0; r < batch.replicas; ++r) {
      const auto est = hill(batch.replica(r), m);
      degenerate = degenerate || est.degenerate;
      acc.add(est.alpha);
    }
    emp = acc.mean();
    emp_se = acc.count() >= 2 ? acc.std_error() : emp / std::sqrt(static_cast<double>(m));
    flags = join_flags({degenerate ? "Degenerate" : "", "m=" + std::to_string(m)});
  }
  report.rows.push_back(ctx.row("hill", th, emp, emp_se, flags));
}

void tail_measure_rows(const Context& ctx, ComparisonReport& report) {
  std::vector<TestSet> sets = ctx.cfg.test_sets;
  if (sets.empty()) sets = {{1.0, INFINITY}, {2.0, INFINITY}};
  const std::size_t n = ctx.cfg.sizes.n;
  const std::size_t m =
      ctx.cfg.sizes.m > 0 ? ctx.cfg.sizes.m : static_cast<std::size_t>(std::round(std::sqrt(n)));
  const double alpha = ctx.model.alpha();
  const double p = ctx.model.tail().p_plus;
  std::vector<double> emp(sets.size(), kNaN), emp_se(sets.size(), kNaN);
  if (!ctx.theory_only) {
    const double a_m = ctx.model.tail().quantile_for_survival(1.0 / static_cast<double>(m));
    const auto batch = simulate_paths(ctx.model, n, ctx.cfg.sizes.R, ctx.empirical);
    emp = tail_empirical_measure(batch, a_m, m, sets);
    const double norm = static_cast<double>(n / m) * static_cast<double>(batch.replicas);
    for (std::size_t j = 0; j < sets.size(); ++j) emp_se[j] = std::sqrt(emp[j] / norm);
  }
  for (std::size_t j = 0; j < sets.size(); ++j) {
    const auto& b = sets[j];
    auto mass = [&](double v) { return std::isinf(v) ? 0.0 : std::pow(std::abs(v), -alpha); };
    const double mu = b.lo > 0.0 ? p * (mass(b.lo) - mass(b.hi)) : (1.0 - p) * (mass(b.hi) - mass(b.lo));
    char label[96];
    std::snprintf(label, sizeof label, "tail_measure(%g,%g]", b.lo, b.hi);
    report.rows.push_back(
        ctx.row(label, ctx.exact(mu), emp[j], emp_se[j], "m=" + std::to_string(m)));
  }
}

ClusterFunctional inner_functional(const std::string& name) {
  if (name == "max") return functionals::max_value();
  if (name == "sum") return functionals::sum_value();
  return functionals::by_name(name);
}

void cluster_rows(const Context& ctx, ComparisonReport& report) {
  const ClusterFunctional c = inner_functional(ctx.cfg.functional);
  const auto th = cluster_limit(functionals::shifted_exceedance(c), ctx.model, ctx.horizon(),
                                ctx.cfg.sizes.N, ctx.theory);
  double emp = kNaN, emp_se = kNaN;
  std::string flags;
  const std::size_t n = ctx.cfg.sizes.n;
  const double x = ctx.threshold(
      [&](double v) { return static_cast<double>(n) * ctx.model.tail().survival(v); }, 1e-2);
  if (!ctx.theory_only) {
    const auto batch = simulate_paths(ctx.model, n, ctx.cfg.sizes.R, ctx.empirical);
    const auto est = cluster_functional_ratio(batch, c, x, ctx.model.tail());
    emp = est.ratio;
    emp_se = est.ratio_std_error;
    flags = flag_names(est.flags);
  }
  report.rows.push_back(ctx.row("cluster:" + c.name, th, emp, emp_se,
                                join_flags({flags, format_param("x", x)})));
}

void stable_rows(const Context& ctx, ComparisonReport& report) {
  const std::size_t n = ctx.cfg.sizes.n;
  const std::size_t R = ctx.cfg.sizes.R;
  const double alpha = ctx.model.alpha();
  const double a_n = ctx.model.tail().quantile_for_survival(1.0 / static_cast<double>(n));
  const double center = alpha > 1.0 ? ctx.model.centering().mean : 0.0;
  std::vector<double> sums;
  if (!ctx.theory_only) {
    sums.resize(R);
    parallel_for(R, [&](std::size_t r) {
      thread_local std::vector<double> path;
      path.resize(n);
      Stream stream(split(ctx.empirical, r));
      ctx.model.simulate(stream, path);
      double s = 0.0;
      for (double v : path) s += v - center;
      sums[r] = s / a_n;
    });
  }
  for (std::size_t j = 0; j < ctx.cfg.frequencies.size(); ++j) {
    const double s = ctx.cfg.frequencies[j];
    const auto th = stable_logcf(ctx.model, s, ctx.horizon(), ctx.cfg.sizes.N, ctx.cfg.quad_eps,
                                 split(ctx.theory, j));
    double re = kNaN, im = kNaN, se_re = kNaN, se_im = kNaN;
    if (!ctx.theory_only) {
      double sc = 0, ss = 0, scc = 0, sss = 0, scs = 0;
      for (double v : sums) {
        const double c = std::cos(s * v), si = std::sin(s * v);
        sc += c;
        ss += si;
        scc += c * c;
        sss += si * si;
        scs += c * si;
      }
      const double Rd = static_cast<double>(R);
      const double a = sc / Rd, b = ss / Rd;
      const double vaa = (scc / Rd - a * a) / Rd, vbb = (sss / Rd - b * b) / Rd;
      const double vab = (scs / Rd - a * b) / Rd;
      const double r2 = a * a + b * b;
      const std::complex<double> lg = std::log(std::complex<double>(a, b));
      re = lg.real();
      im = lg.imag();
      se_re = std::sqrt(std::max(0.0, a * a * vaa + b * b * vbb + 2 * a * b * vab)) / r2;
      se_im = std::sqrt(std::max(0.0, b * b * vaa + a * a * vbb - 2 * a * b * vab)) / r2;
    }
    MonteCarloEstimate th_re;
    th_re.value = th.value.real();
    th_re.std_error = th.std_error_re;
    th_re.lineage = th.lineage;
    th_re.truncation = th.truncation;
    MonteCarloEstimate th_im = th_re;
    th_im.value = th.value.imag();
    th_im.std_error = th.std_error_im;
    char label[64];
    std::snprintf(label, sizeof label, "logcf_re(s=%g)", s);
    report.rows.push_back(ctx.row(label, th_re, re, se_re, format_param("a_n", a_n)));
    std::snprintf(label, sizeof label, "logcf_im(s=%g)", s);
    report.rows.push_back(ctx.row(label, th_im, im, se_im, format_param("a_n", a_n)));
  }
}

void limit_pp_rows(const Context& ctx, ComparisonReport& report) {
  const KDepStructure st = kdep_structure(ctx.model);
  const auto gamma = extremal_index(ctx.model, st.k, ctx.cfg.sizes.N, ctx.theory);
  std::vector<double> grid = ctx.cfg.grid;
  if (grid.empty()) grid = {0.5, 1.0, 2.0};
  for (double x : grid) require(x > 0.0, ErrorCode::Config, "config field 'grid': values must be positive");
  const double floor = 0.5 * *std::min_element(grid.begin(), grid.end());
  const std::size_t R = ctx.cfg.sizes.R;
  std::vector<double> maxima;
  if (!ctx.theory_only) {
    maxima.resize(R);
    parallel_for(R, [&](std::size_t r) {
      const auto pts = simulate_limit_pp(st, floor, 1.0, split(ctx.empirical, r));
      double m = 0.0;
      for (double p : pts) m = std::max(m, std::abs(p));
      maxima[r] = m;
    });
  }
  for (double x : grid) {
    const double xa = std::pow(x, -st.alpha);
    MonteCarloEstimate th = gamma;
    th.value = std::exp(-gamma.value * xa);
    th.std_error = th.value * xa * gamma.std_error;
    double emp = kNaN, emp_se = kNaN;
    if (!ctx.theory_only) {
      const auto below = std::count_if(maxima.begin(), maxima.end(), [&](double m) { return m <= x; });
      emp = static_cast<double>(below) / static_cast<double>(R);
      emp_se = std::sqrt(emp * (1.0 - emp) / static_cast<double>(R));
    }
    char label[64];
    std::snprintf(label, sizeof label, "pp_max_cdf(x=%g)", x);
    report.rows.push_back(ctx.row(label, th, emp, emp_se, ""));
  }
}

void diagnostics_rows(const Context& ctx, ComparisonReport& report) {
  std::vector<std::size_t> k_grid;
  for (double k : ctx.cfg.grid) {
    require(k >= 0.0 && k == std::floor(k), ErrorCode::Config,
            "config field 'grid': k values must be non-negative integers");
    k_grid.push_back(static_cast<std::size_t>(k));
  }
  if (k_grid.empty()) k_grid = {1, 2, 5, 10, 20};
  const std::size_t window = ctx.cfg.sizes.m > 0 ? ctx.cfg.sizes.m : 2 * *std::max_element(k_grid.begin(), k_grid.end());
  const double v = ctx.quantile_threshold(0.995);
  const double x = v / ctx.cfg.thresholds.delta;
  const bool iid = std::holds_alternative<IidSpec>(ctx.model.spec());
  const double p_exceed = ctx.model.tail().survival(v);
  std::vector<ProportionEstimate> curve;
  if (!ctx.theory_only) {
    const auto batch = simulate_paths(ctx.model, ctx.cfg.sizes.n, ctx.cfg.sizes.R, ctx.empirical);
    curve = anticlustering_diagnostic(batch, k_grid, window, x, ctx.cfg.thresholds.delta);
  }
  for (std::size_t g = 0; g < k_grid.size(); ++g) {
    const std::size_t k = k_grid[g];
    const double theory =
        iid ? 1.0 - std::pow(1.0 - p_exceed, static_cast<double>(window - std::min(window, k))) : kNaN;
    char label[64];
    std::snprintf(label, sizeof label, "anticlustering(k=%zu,n=%zu)", k, window);
    const bool have = !curve.empty();
    report.rows.push_back(ctx.row(label, ctx.exact(theory), have ? curve[g].value : kNaN,
                                  have ? curve[g].std_error : kNaN,
                                  have ? flag_names(curve[g].flags) : ""));
  }
  const std::size_t k = ctx.horizon();
  const auto sum = sum_constant(ctx.model, k, ctx.cfg.sizes.N, ctx.theory);
  const auto sup = sup_rw_constant(ctx.model, k, ctx.cfg.sizes.N, ctx.theory);
  MonteCarloEstimate gap = sup;
  gap.value = sup.value - sum.value;
  gap.std_error = std::hypot(sup.std_error, sum.std_error);
  gap.truncation.tail_bound = sup.truncation.tail_bound + sum.truncation.tail_bound;
  report.rows.push_back(ctx.row("sup_minus_sum_constant", gap, kNaN, kNaN, ""));
}

ComparisonReport run_checked(const ExperimentConfig& cfg, Subcommand cmd) {
  require(fits(cmd, cfg.experiment), ErrorCode::Config,
          std::string("subcommand '") + to_string(cmd) + "' does not run experiment '" +
              to_string(cfg.experiment) + "'");
  const Model model(cfg.model);
  const Context ctx{cfg, model, cmd == Subcommand::Constant, SeedLineage{cfg.root_seed, {1}},
                    SeedLineage{cfg.root_seed, {2}}};
  ComparisonReport report;
  report.experiment = to_string(cfg.experiment);
  report.model = model.family();
  report.config_hash = config_hash(cfg);
  report.root_seed = cfg.root_seed;
  switch (cfg.experiment) {
    case ExperimentKind::ExtremalIndex:
      extremal_index_rows(ctx, report);
      break;
    case ExperimentKind::LdSup:
      ld_rows(ctx, report, KDepMode::Sup);
      break;
    case ExperimentKind::LdSum:
      ld_rows(ctx, report, KDepMode::Sum);
      break;
    case ExperimentKind::Ruin:
      ruin_rows(ctx, report);
      break;
    case ExperimentKind::Hill:
      hill_rows(ctx, report);
      break;
    case ExperimentKind::TailMeasure:
      tail_measure_rows(ctx, report);
      break;
    case ExperimentKind::ClusterFunctional:
      cluster_rows(ctx, report);
      break;
    case ExperimentKind::StableCF:
      stable_rows(ctx, report);
      break;
    case ExperimentKind::LimitPP:
      limit_pp_rows(ctx, report);
      break;
    case ExperimentKind::Diagnostics:
      diagnostics_rows(ctx, report);
      break;
  }
  return report;
}

ExperimentConfig suite_entry(ModelSpec model, ExperimentKind kind, Sizes sizes) {
  ExperimentConfig c;
  c.model = std::move(model);
  c.experiment = kind;
  c.sizes = sizes;
  return c;
}

}  // namespace

const char* to_string(Subcommand cmd) {
  for (const auto& [c, name] : kCommands)
    if (c == cmd) return name;
  return "?";
}

Subcommand subcommand_from_string(const std::string& name) {
  for (const auto& [c, n] : kCommands)
    if (name == n) return c;
  fail(ErrorCode::Config, "unknown subcommand '" + name + "'");
}

ComparisonReport run(const ExperimentConfig& config, Subcommand cmd) {
  try {
    return run_checked(config, cmd);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Config) throw;
    throw Error(e.code(), std::string(to_string(config.experiment)) + ": " + e.what());
  }
}

std::string simulate_csv(const ExperimentConfig& config) {
  const Model model(config.model);
  const auto batch =
      simulate_paths(model, config.sizes.n, config.sizes.R, SeedLineage{config.root_seed, {2}});
  std::string out = "replica,t,value\r\n";
  char buf[64];
  for (std::size_t r = 0; r < batch.replicas; ++r) {
    const auto xs = batch.replica(r);
    for (std::size_t t = 0; t < xs.size(); ++t) {
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g\r\n", r, t, xs[t]);
      out += buf;
    }
  }
  return out;
}

ComparisonReport verify_suite(std::uint64_t root_seed) {
  using K = ExperimentKind;
  const Law pareto3 = Pareto{3.0};
  const MovingAverageSpec ma11{{1.0, 1.0}, Pareto{1.0}};
  const SreSpec ar05{deterministic(0.5), Pareto{3.0}, SreRegime::Grey};

  struct Entry {
    const char* label;
    Subcommand cmd;
    ExperimentConfig cfg;
  };
  std::vector<Entry> entries;
  auto add = [&](const char* label, Subcommand cmd, ExperimentConfig cfg) {
    cfg.root_seed = root_seed;
    entries.push_back({label, cmd, std::move(cfg)});
  };

  {
    auto c = suite_entry(IidSpec{pareto3}, K::ExtremalIndex, {20000, 4, 10000, 0, 10});
    add("iid", Subcommand::Diagnose, c);
  }
  {
    auto c = suite_entry(ma11, K::ExtremalIndex, {20000, 4, 100000, 0, 10});
    add("ma11", Subcommand::Diagnose, c);
  }
  {
    auto c = suite_entry(ar05, K::ExtremalIndex, {20000, 4, 10000, 0, 10});
    add("ar05", Subcommand::Diagnose, c);
  }
  {
    auto c = suite_entry(IidSpec{Pareto{1.5}}, K::LdSum, {100, 100000, 10000, 0, 0});
    add("iid_pareto1.5", Subcommand::Ratio, c);
  }
  {
    auto c = suite_entry(MovingAverageSpec{{1.0, 1.0}, Pareto{1.5}}, K::LdSup, {100, 100000, 100000, 0, 0});
    add("ma11_alpha1.5", Subcommand::Ratio, c);
  }
  {
    auto c = suite_entry(IidSpec{pareto3}, K::Ruin, {1, 100000, 10000, 0, 0});
    c.thresholds.x = 10.0;
    add("iid_pareto3", Subcommand::Ruin, c);
  }
  {
    auto c = suite_entry(ar05, K::Ruin, {1, 1, 10000, 40, 0});
    add("ar05", Subcommand::Constant, c);
  }
  {
    auto c = suite_entry(IidSpec{Pareto{2.0}}, K::Hill, {100000, 1, 1, 0, 1000});
    add("iid_pareto2", Subcommand::Hill, c);
  }
  {
    auto c = suite_entry(IidSpec{Pareto{1.0}}, K::TailMeasure, {100000, 1, 1, 0, 100});
    add("iid_pareto1", Subcommand::TailMeasure, c);
  }
  {
    auto c = suite_entry(IidSpec{Pareto{2.0}}, K::ClusterFunctional, {100, 100000, 100000, 0, 0});
    add("iid_pareto2", Subcommand::Ratio, c);
  }
  {
    auto c = suite_entry(IidSpec{Pareto{0.5}}, K::StableCF, {1000, 2000, 100000, 0, 0});
    c.frequencies = {0.5, 1.0, 2.0};
    add("iid_pareto0.5", Subcommand::Diagnose, c);
  }
  {
    auto c = suite_entry(ma11, K::LimitPP, {1, 10000, 100000, 0, 0});
    add("ma11", Subcommand::Pp, c);
  }
  {
    auto c = suite_entry(IidSpec{pareto3}, K::Diagnostics, {20000, 4, 10000, 0, 0});
    add("iid", Subcommand::Diagnose, c);
  }

  ComparisonReport suite;
  suite.experiment = "verify";
  suite.model = "suite";
  suite.root_seed = root_seed;
  std::string hashes;
  for (const auto& e : entries) {
    const auto report = run(e.cfg, e.cmd);
    hashes += report.config_hash;
    for (auto row : report.rows) {
      row.experiment = std::string(to_string(e.cfg.experiment)) + "/" + e.label + "/" + row.experiment;
      suite.rows.push_back(std::move(row));
    }
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : hashes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  suite.config_hash = buf;
  return suite;
}

}  // namespace htlab
