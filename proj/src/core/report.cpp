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

#include "htlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "htlab/error.hpp"

namespace htlab {

using nlohmann::json;

namespace {

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  fail(ErrorCode::Config, "bad number '" + s + "' in report");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

bool operator==(const ComparisonRow& a, const ComparisonRow& b) {
  return a.experiment == b.experiment && same(a.theory, b.theory) && same(a.theory_se, b.theory_se) &&
         same(a.empirical, b.empirical) && same(a.empirical_se, b.empirical_se) && same(a.z, b.z) &&
         a.flags == b.flags && a.horizon == b.horizon && same(a.tail_bound, b.tail_bound) &&
         a.theory_lineage == b.theory_lineage && a.empirical_lineage == b.empirical_lineage;
}

bool operator==(const ComparisonReport& a, const ComparisonReport& b) {
  return a.experiment == b.experiment && a.model == b.model && a.config_hash == b.config_hash &&
         a.root_seed == b.root_seed && a.rows == b.rows;
}

std::string render_csv(const ComparisonReport& report) {
  std::string out =
      "experiment,theory,theory_se,empirical,empirical_se,z,flags,horizon,tail_bound,"
      "theory_lineage,empirical_lineage,config_hash\r\n";
  for (const auto& r : report.rows) {
    out += csv_field(r.experiment) + ',' + format_number(r.theory) + ',' + format_number(r.theory_se) +
           ',' + format_number(r.empirical) + ',' + format_number(r.empirical_se) + ',' +
           format_number(r.z) + ',' + csv_field(r.flags) + ',' + std::to_string(r.horizon) + ',' +
           format_number(r.tail_bound) + ',' + csv_field(r.theory_lineage) + ',' +
           csv_field(r.empirical_lineage) + ',' + csv_field(report.config_hash) + "\r\n";
  }
  return out;
}

std::string render_json(const ComparisonReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"experiment", r.experiment},
                    {"theory", {{"value", number_to_json(r.theory)},
                                {"se", number_to_json(r.theory_se)},
                                {"lineage", r.theory_lineage},
                                {"truncation", {{"horizon", r.horizon},
                                                {"tail_bound", number_to_json(r.tail_bound)}}}}},
                    {"empirical", {{"value", number_to_json(r.empirical)},
                                   {"se", number_to_json(r.empirical_se)},
                                   {"lineage", r.empirical_lineage}}},
                    {"z", number_to_json(r.z)},
                    {"flags", r.flags}});
  }
  json doc = {{"experiment", report.experiment},
              {"model", report.model},
              {"provenance", {{"config_hash", report.config_hash}, {"root_seed", report.root_seed}}},
              {"rows", rows}};
  return doc.dump(2) + "\n";
}

ComparisonReport parse_report_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    ComparisonReport report;
    report.experiment = doc.at("experiment").get<std::string>();
    report.model = doc.at("model").get<std::string>();
    report.config_hash = doc.at("provenance").at("config_hash").get<std::string>();
    report.root_seed = doc.at("provenance").at("root_seed").get<std::uint64_t>();
    for (const auto& j : doc.at("rows")) {
      ComparisonRow r;
      r.experiment = j.at("experiment").get<std::string>();
      const auto& th = j.at("theory");
      r.theory = number_from_json(th.at("value"));
      r.theory_se = number_from_json(th.at("se"));
      r.theory_lineage = th.at("lineage").get<std::string>();
      r.horizon = th.at("truncation").at("horizon").get<std::size_t>();
      r.tail_bound = number_from_json(th.at("truncation").at("tail_bound"));
      const auto& em = j.at("empirical");
      r.empirical = number_from_json(em.at("value"));
      r.empirical_se = number_from_json(em.at("se"));
      r.empirical_lineage = em.at("lineage").get<std::string>();
      r.z = number_from_json(j.at("z"));
      r.flags = j.at("flags").get<std::string>();
      report.rows.push_back(std::move(r));
    }
    return report;
  } catch (const json::exception& e) {
    fail(ErrorCode::Config, std::string("malformed report JSON: ") + e.what());
  }
}

std::string render(const ComparisonReport& report, const std::string& format) {
  if (format == "csv") return render_csv(report);
  if (format == "json") return render_json(report);
  fail(ErrorCode::Config, "unknown report format '" + format + "'");
}

void write_report(const ComparisonReport& report, const std::string& path,
                  const std::string& format) {
  const std::string text = render(report, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorCode::Io, "cannot write report to '" + path + "'");
  out << text;
  out.close();
  require(!out.fail(), ErrorCode::Io, "failed writing report to '" + path + "'");
}

bool within_gate(const ComparisonReport& report, double gate) {
  for (const auto& r : report.rows)
    if (std::isfinite(r.z) && std::abs(r.z) >= gate) return false;
  return true;
}

}  // namespace htlab
