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

#include "htlab/config.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "htlab/error.hpp"

namespace htlab {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<ExperimentKind, const char*>, 10> kKinds{{
    {ExperimentKind::ExtremalIndex, "ExtremalIndex"},
    {ExperimentKind::LdSup, "LdSup"},
    {ExperimentKind::LdSum, "LdSum"},
    {ExperimentKind::Ruin, "Ruin"},
    {ExperimentKind::Hill, "Hill"},
    {ExperimentKind::TailMeasure, "TailMeasure"},
    {ExperimentKind::ClusterFunctional, "ClusterFunctional"},
    {ExperimentKind::StableCF, "StableCF"},
    {ExperimentKind::LimitPP, "LimitPP"},
    {ExperimentKind::Diagnostics, "Diagnostics"},
}};

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  fail(ErrorCode::Config, "config field '" + path + "': " + what);
}

// Typed access to a JSON object with the field path kept for diagnostics.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) field_error(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }
  std::string child_path(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& raw(const char* key) const {
    if (!has(key)) field_error(child_path(key), "missing required field");
    return j_.at(key);
  }
  Node object(const char* key) const { return Node(raw(key), child_path(key)); }

  double number(const char* key) const {
    const json& v = raw(key);
    if (!v.is_number()) field_error(child_path(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) field_error(child_path(key), "must be finite");
    return d;
  }
  double number(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }
  std::optional<double> maybe_number(const char* key) const {
    return has(key) ? std::optional<double>(number(key)) : std::nullopt;
  }

  std::size_t count(const char* key, std::size_t fallback, bool allow_zero = false) const {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_number_integer() && !v.is_number_unsigned())
      field_error(child_path(key), "expected a non-negative integer");
    if (v.is_number_integer() && v.get<std::int64_t>() < 0)
      field_error(child_path(key), "must be non-negative");
    const auto c = v.get<std::uint64_t>();
    if (c == 0 && !allow_zero) field_error(child_path(key), "must be positive");
    return static_cast<std::size_t>(c);
  }

  std::string text(const char* key) const {
    const json& v = raw(key);
    if (!v.is_string()) field_error(child_path(key), "expected a string");
    return v.get<std::string>();
  }
  std::string text(const char* key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
  }

  std::vector<double> numbers(const char* key) const {
    const json& v = raw(key);
    if (!v.is_array()) field_error(child_path(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number())
        field_error(child_path(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  const std::string& path() const { return path_; }

 private:
  const json& j_;
  std::string path_;
};

Law parse_law(const Node& node) {
  const std::string type = node.text("type");
  Law law;
  if (type == "pareto") {
    law = Pareto{node.number("alpha")};
  } else if (type == "two_sided_pareto") {
    law = TwoSidedPareto{node.number("alpha"), node.number("p", 0.5)};
  } else if (type == "discrete") {
    law = Discrete{node.numbers("atoms"), node.numbers("probs")};
  } else if (type == "constant") {
    law = deterministic(node.number("value"));
  } else if (type == "lognormal") {
    law = LogNormal{node.number("mu", 0.0), node.number("sigma", 1.0)};
  } else if (type == "student_t") {
    law = StudentT{node.number("nu")};
  } else if (type == "normal") {
    law = Normal{node.number("mean", 0.0), node.number("sd", 1.0)};
  } else {
    field_error(node.child_path("type"), "unknown law '" + type + "'");
  }
  try {
    validate(law);
  } catch (const Error& e) {
    field_error(node.path(), e.what());
  }
  return law;
}

json law_to_json(const Law& law) {
  return std::visit(
      [](const auto& l) -> json {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, Pareto>) {
          return {{"type", "pareto"}, {"alpha", l.alpha}};
        } else if constexpr (std::is_same_v<T, TwoSidedPareto>) {
          return {{"type", "two_sided_pareto"}, {"alpha", l.alpha}, {"p", l.p}};
        } else if constexpr (std::is_same_v<T, Discrete>) {
          return {{"type", "discrete"}, {"atoms", l.atoms}, {"probs", l.probs}};
        } else if constexpr (std::is_same_v<T, LogNormal>) {
          return {{"type", "lognormal"}, {"mu", l.mu}, {"sigma", l.sigma}};
        } else if constexpr (std::is_same_v<T, StudentT>) {
          return {{"type", "student_t"}, {"nu", l.nu}};
        } else {
          return {{"type", "normal"}, {"mean", l.mean}, {"sd", l.sd}};
        }
      },
      law);
}

ModelSpec parse_model(const Node& node) {
  const std::string family = node.text("family");
  if (family == "iid") return IidSpec{parse_law(node.object("law"))};
  if (family == "ma") {
    auto psi = node.numbers("psi");
    if (psi.empty()) field_error(node.child_path("psi"), "must not be empty");
    return MovingAverageSpec{std::move(psi), parse_law(node.object("noise"))};
  }
  if (family == "sre") {
    const std::string regime = node.text("regime", "grey");
    if (regime != "grey" && regime != "goldie")
      field_error(node.child_path("regime"), "expected 'grey' or 'goldie'");
    return SreSpec{parse_law(node.object("a")), parse_law(node.object("b")),
                   regime == "goldie" ? SreRegime::Goldie : SreRegime::Grey};
  }
  if (family == "garch") {
    Garch11Spec g;
    g.alpha0 = node.number("alpha0", g.alpha0);
    g.alpha1 = node.number("alpha1", g.alpha1);
    g.beta1 = node.number("beta1", g.beta1);
    if (node.has("z")) g.z_law = parse_law(node.object("z"));
    return g;
  }
  if (family == "stochvol") {
    StochVolSpec sv;
    const Node sigma = node.object("sigma");
    sv.sigma_law = LogNormal{sigma.number("mu", 0.0), sigma.number("sigma", 1.0)};
    sv.z_law = parse_law(node.object("z"));
    sv.log_ar = node.number("log_ar", 0.0);
    return sv;
  }
  field_error(node.child_path("family"), "unknown family '" + family + "'");
}

json model_to_json(const ModelSpec& spec) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, IidSpec>) {
          return {{"family", "iid"}, {"law", law_to_json(s.law)}};
        } else if constexpr (std::is_same_v<T, MovingAverageSpec>) {
          return {{"family", "ma"}, {"psi", s.psi}, {"noise", law_to_json(s.noise)}};
        } else if constexpr (std::is_same_v<T, SreSpec>) {
          return {{"family", "sre"},
                  {"a", law_to_json(s.a_law)},
                  {"b", law_to_json(s.b_law)},
                  {"regime", s.regime == SreRegime::Goldie ? "goldie" : "grey"}};
        } else if constexpr (std::is_same_v<T, Garch11Spec>) {
          return {{"family", "garch"},
                  {"alpha0", s.alpha0},
                  {"alpha1", s.alpha1},
                  {"beta1", s.beta1},
                  {"z", law_to_json(s.z_law)}};
        } else {
          return {{"family", "stochvol"},
                  {"sigma", {{"mu", s.sigma_law.mu}, {"sigma", s.sigma_law.sigma}}},
                  {"z", law_to_json(s.z_law)},
                  {"log_ar", s.log_ar}};
        }
      },
      spec);
}

void check_level(const std::string& path, std::optional<double> v) {
  if (v && !(*v > 0.0 && *v < 1.0)) field_error(path, "must lie in (0,1)");
}

void check_positive(const std::string& path, double v) {
  if (!(v > 0.0)) field_error(path, "must be positive");
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

const char* to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKinds)
    if (k == kind) return name;
  return "?";
}

ExperimentKind experiment_from_string(const std::string& name) {
  for (const auto& [k, n] : kKinds)
    if (name == n) return k;
  field_error("experiment", "unknown experiment '" + name + "'");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, json_text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (json_text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorCode::Config, "config parse error at line " + std::to_string(line) + ", column " +
                                std::to_string(col) + ": " + e.what());
  }
  const Node root(doc, "");
  ExperimentConfig cfg;
  cfg.model = parse_model(root.object("model"));
  cfg.experiment = experiment_from_string(root.text("experiment"));

  if (root.has("sizes")) {
    const Node s = root.object("sizes");
    cfg.sizes.n = s.count("n", cfg.sizes.n);
    cfg.sizes.R = s.count("R", cfg.sizes.R);
    cfg.sizes.N = s.count("N", cfg.sizes.N);
    cfg.sizes.k = s.count("k", cfg.sizes.k, true);
    cfg.sizes.m = s.count("m", cfg.sizes.m, true);
  }
  if (root.has("thresholds")) {
    const Node t = root.object("thresholds");
    cfg.thresholds.x = t.maybe_number("x");
    cfg.thresholds.quantile = t.maybe_number("quantile");
    cfg.thresholds.target_prob = t.maybe_number("target_prob");
    cfg.thresholds.rho = t.number("rho", cfg.thresholds.rho);
    cfg.thresholds.delta = t.number("delta", cfg.thresholds.delta);
    cfg.thresholds.C = t.number("C", cfg.thresholds.C);
    if (cfg.thresholds.x) check_positive(t.child_path("x"), *cfg.thresholds.x);
    check_level(t.child_path("quantile"), cfg.thresholds.quantile);
    check_level(t.child_path("target_prob"), cfg.thresholds.target_prob);
    check_positive(t.child_path("rho"), cfg.thresholds.rho);
    check_positive(t.child_path("delta"), cfg.thresholds.delta);
    check_positive(t.child_path("C"), cfg.thresholds.C);
  }
  cfg.functional = root.text("functional", cfg.functional);
  if (root.has("frequencies")) cfg.frequencies = root.numbers("frequencies");
  if (root.has("grid")) cfg.grid = root.numbers("grid");
  if (root.has("test_sets")) {
    const json& sets = root.raw("test_sets");
    if (!sets.is_array()) field_error("test_sets", "expected an array of [lo, hi] pairs");
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const std::string path = "test_sets[" + std::to_string(i) + "]";
      const json& b = sets[i];
      if (!b.is_array() || b.size() != 2 || !b[0].is_number() ||
          !(b[1].is_number() || b[1].is_null()))
        field_error(path, "expected [lo, hi] with hi null for +infinity");
      TestSet ts{b[0].get<double>(), b[1].is_null() ? std::numeric_limits<double>::infinity()
                                                    : b[1].get<double>()};
      if (!(ts.lo < ts.hi) || (ts.lo <= 0.0 && ts.hi >= 0.0))
        field_error(path, "interval must have lo < hi and stay away from 0");
      cfg.test_sets.push_back(ts);
    }
  }
  cfg.quad_eps = root.number("quad_eps", cfg.quad_eps);
  check_positive("quad_eps", cfg.quad_eps);
  cfg.gate = root.number("gate", cfg.gate);
  check_positive("gate", cfg.gate);
  if (root.has("root_seed")) {
    const json& seed = root.raw("root_seed");
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0))
      field_error("root_seed", "expected a non-negative integer");
    cfg.root_seed = seed.get<std::uint64_t>();
  }
  cfg.output = root.text("output", cfg.output);
  cfg.format = root.text("format", cfg.format);
  if (cfg.format != "csv" && cfg.format != "json") field_error("format", "expected 'csv' or 'json'");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::Config, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string dump_config(const ExperimentConfig& c) {
  json test_sets = json::array();
  for (const auto& b : c.test_sets)
    test_sets.push_back({b.lo, std::isinf(b.hi) ? json(nullptr) : json(b.hi)});
  json doc = {
      {"model", model_to_json(c.model)},
      {"experiment", to_string(c.experiment)},
      {"sizes", {{"n", c.sizes.n}, {"R", c.sizes.R}, {"N", c.sizes.N}, {"k", c.sizes.k}, {"m", c.sizes.m}}},
      {"thresholds",
       {{"x", optional_number(c.thresholds.x)},
        {"quantile", optional_number(c.thresholds.quantile)},
        {"target_prob", optional_number(c.thresholds.target_prob)},
        {"rho", c.thresholds.rho},
        {"delta", c.thresholds.delta},
        {"C", c.thresholds.C}}},
      {"functional", c.functional},
      {"frequencies", c.frequencies},
      {"grid", c.grid},
      {"test_sets", test_sets},
      {"quad_eps", c.quad_eps},
      {"gate", c.gate},
      {"root_seed", c.root_seed},
      {"output", c.output},
      {"format", c.format},
  };
  return doc.dump(2);
}

std::string config_hash(const ExperimentConfig& config) {
  // FNV-1a over the canonical dump, leaving out where the report goes.
  ExperimentConfig canon = config;
  canon.output.clear();
  canon.format = "csv";
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : dump_config(canon)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace htlab
