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

// htlab command-line driver.  Talks to the library only through htlab.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "htlab/htlab.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssert = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::string config;
  std::uint64_t seed = 0;
  bool has_seed = false;
  unsigned threads = 0;
  std::string out;
  std::string format;
  bool assert_gate = false;
};

int report_failure(htlab_status status) {
  std::cerr << "htlab: " << htlab_last_error() << "\n";
  return htlab_status_is_numeric(status) ? kExitNumeric : kExitUsage;
}

using ConfigPtr = std::unique_ptr<htlab_config, decltype(&htlab_config_free)>;
using ReportPtr = std::unique_ptr<htlab_report, decltype(&htlab_report_free)>;

int emit_text(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  file << text;
  file.close();
  if (!file) {
    std::cerr << "htlab: cannot write '" << out << "'\n";
    return kExitUsage;
  }
  return kExitOk;
}

int emit_report(const htlab_report* report, const std::string& out, const std::string& format,
                bool assert_gate, double gate) {
  char* text = nullptr;
  const htlab_status st = htlab_report_render(report, format.c_str(), &text);
  if (st != HTLAB_OK) return report_failure(st);
  const int rc = emit_text(text, out);
  htlab_string_free(text);
  if (rc != kExitOk) return rc;
  if (assert_gate && !htlab_report_within_gate(report, gate)) {
    for (std::size_t i = 0; i < htlab_report_rows(report); ++i) {
      const char* label = nullptr;
      double theory = 0, empirical = 0, z = 0;
      htlab_report_row(report, i, &label, &theory, &empirical, &z);
      if (z == z && (z >= gate || z <= -gate))
        std::cerr << "htlab: assertion failed: " << label << " z=" << z << "\n";
    }
    return kExitAssert;
  }
  return kExitOk;
}

int run_command(const std::string& name, const Options& opt) {
  if (htlab_status st = htlab_set_threads(opt.threads); st != HTLAB_OK) return report_failure(st);

  if (name == "verify") {
    htlab_report* raw = nullptr;
    if (htlab_status st = htlab_verify(opt.seed, &raw); st != HTLAB_OK) return report_failure(st);
    ReportPtr report(raw, htlab_report_free);
    return emit_report(report.get(), opt.out, opt.format.empty() ? "csv" : opt.format,
                       opt.assert_gate, 4.0);
  }

  if (opt.config.empty()) {
    std::cerr << "htlab: --config is required for '" << name << "'\n";
    return kExitUsage;
  }
  htlab_config* raw_cfg = nullptr;
  if (htlab_status st = htlab_config_load(opt.config.c_str(), &raw_cfg); st != HTLAB_OK)
    return report_failure(st);
  ConfigPtr cfg(raw_cfg, htlab_config_free);
  if (opt.has_seed) htlab_config_set_seed(cfg.get(), opt.seed);
  if (!opt.out.empty()) htlab_config_set_output(cfg.get(), opt.out.c_str());
  if (!opt.format.empty()) {
    if (htlab_status st = htlab_config_set_format(cfg.get(), opt.format.c_str()); st != HTLAB_OK)
      return report_failure(st);
  }
  const std::string out = htlab_config_output(cfg.get());
  const std::string format = htlab_config_format(cfg.get());

  if (name == "simulate") {
    char* text = nullptr;
    if (htlab_status st = htlab_simulate_csv(cfg.get(), &text); st != HTLAB_OK)
      return report_failure(st);
    const int rc = emit_text(text, out);
    htlab_string_free(text);
    return rc;
  }

  htlab_report* raw = nullptr;
  if (htlab_status st = htlab_run(cfg.get(), name.c_str(), &raw); st != HTLAB_OK)
    return report_failure(st);
  ReportPtr report(raw, htlab_report_free);
  return emit_report(report.get(), out, format, opt.assert_gate, htlab_config_gate(cfg.get()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"htlab: heavy-tailed time series experiments"};
  app.set_version_flag("--version", htlab_version());
  app.require_subcommand(1);

  Options opt;
  const char* commands[][2] = {
      {"simulate", "Simulate model paths and write them as CSV"},
      {"constant", "Evaluate the theoretical constant only"},
      {"ratio", "Large-deviation and cluster-functional ratios"},
      {"ruin", "Ruin probability against the ruin constant"},
      {"hill", "Hill estimator against the tail index"},
      {"tailmeasure", "Tail empirical measure against its limit"},
      {"pp", "Limit point process maxima"},
      {"diagnose", "Extremal index, anti-clustering and stable log-CF diagnostics"},
      {"verify", "Run the curated acceptance suite"},
  };
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(cmd, help);
    sub->add_option("--config", opt.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { opt.seed = s; opt.has_seed = true; }, "Root seed");
    sub->add_option("--threads", opt.threads, "Worker threads (default: all cores)");
    sub->add_option("--out", opt.out, "Output file (default: stdout)");
    sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--assert", opt.assert_gate, "Exit 1 when any |z| exceeds the gate");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  return run_command(app.get_subcommands().front()->get_name(), opt);
}
