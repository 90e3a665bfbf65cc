/*
 * Copyright 2026 The miselect Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Report documents: JSON (all tables and tests), one CSV per accuracy table
// and long-format plot series.
//
// JSON numbers are rounded to 6 decimal places; CSV cells are printed with
// exactly 6 decimals. Non-finite t values are written as "inf" / "-inf".

#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "miselect/error.hpp"
#include "miselect/evaluation.hpp"
#include "miselect/version.hpp"

namespace miselect {

enum class ReportFormat { json, csv, plotdata };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "plotdata") return ReportFormat::plotdata;
  throw InvalidArgument("unknown report format '" + std::string(s) + "'");
}

struct Report {
  std::string tool_version = kToolVersion;
  std::uint64_t seed = 0;
  nlohmann::ordered_json plan_echo = nlohmann::ordered_json::object();
  std::vector<AccuracyTable> tables;
  std::vector<Comparison> ttests;
};

inline double round6(double v) { return std::round(v * 1e6) / 1e6; }

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline nlohmann::ordered_json plan_to_json(const ExperimentPlan& p) {
  nlohmann::ordered_json j;
  auto& sel = j["selectors"] = nlohmann::ordered_json::array();
  for (const auto& s : p.selectors) {
    nlohmann::ordered_json e;
    e["method"] = method_name(s.method);
    if (s.method == Method::mifs) e["beta"] = s.beta_fixed;
    if (s.gamma) e["gamma"] = *s.gamma;
    e["unit"] = s.unit == LogBase::bits ? "bits" : "nats";
    sel.push_back(e);
  }
  j["set_sizes"] = p.set_sizes;
  auto& cls = j["classifiers"] = nlohmann::ordered_json::array();
  for (const auto& c : p.classifiers) {
    nlohmann::ordered_json e;
    e["name"] = model_display_name(c.kind);
    switch (c.kind) {
      case ModelKind::knn: e["k"] = c.knn.k; break;
      case ModelKind::logistic:
        e["learning_rate"] = c.logistic.learning_rate;
        e["epochs"] = c.logistic.epochs;
        e["l2"] = c.logistic.l2;
        break;
      case ModelKind::tree:
        e["max_depth"] = c.tree.max_depth;
        e["min_split"] = c.tree.min_split;
        break;
      case ModelKind::forest:
        e["n_trees"] = c.forest.n_trees;
        e["features_per_split"] = c.forest.features_per_split == 0
                                      ? nlohmann::ordered_json("sqrt")
                                      : nlohmann::ordered_json(c.forest.features_per_split);
        e["bootstrap"] = c.forest.bootstrap;
        e["max_depth"] = c.forest.tree.max_depth;
        e["min_split"] = c.forest.tree.min_split;
        break;
    }
    cls.push_back(e);
  }
  j["k_folds"] = p.k_folds;
  j["seed"] = p.seed;
  j["bins"] = p.bins;
  j["strategy"] = p.strategy == BinStrategy::equal_frequency ? "equal_frequency" : "equal_width";
  j["alpha"] = p.alpha;
  j["tails"] = tails_name(p.tails);
  j["threads"] = p.threads;
  return j;
}

inline nlohmann::ordered_json table_to_json(const AccuracyTable& t) {
  nlohmann::ordered_json j;
  j["selector"] = t.selector;
  j["classifiers"] = t.classifiers;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (std::size_t z = 0; z < t.set_sizes.size(); ++z) {
    nlohmann::ordered_json r;
    r["features"] = t.set_sizes[z];
    auto& acc = r["accuracy"] = nlohmann::ordered_json::array();
    for (double v : t.cells[z]) acc.push_back(round6(v));
    rows.push_back(r);
  }
  auto& avg = j["avg"] = nlohmann::ordered_json::array();
  for (double v : t.avg) avg.push_back(round6(v));
  return j;
}

inline AccuracyTable table_from_json(const nlohmann::ordered_json& j) {
  AccuracyTable t;
  t.selector = j.at("selector").get<std::string>();
  t.classifiers = j.at("classifiers").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows")) {
    t.set_sizes.push_back(r.at("features").get<std::size_t>());
    t.cells.push_back(r.at("accuracy").get<std::vector<double>>());
    if (t.cells.back().size() != t.classifiers.size())
      throw DataError("report: row width does not match classifier count");
  }
  t.avg = j.at("avg").get<std::vector<double>>();
  return t;
}

inline nlohmann::ordered_json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return round6(v);
}

inline double number_or_inf(const nlohmann::ordered_json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    throw DataError("report: bad numeric value '" + s + "'");
  }
  return j.get<double>();
}

inline nlohmann::ordered_json comparison_to_json(const Comparison& c) {
  nlohmann::ordered_json j;
  j["proposed"] = c.proposed;
  j["baseline"] = c.baseline;
  j["classifier"] = c.classifier;
  j["t_value"] = number_or_inf(c.test.t_value);
  // p-values are kept at full precision; tiny values would round to 0.
  j["p_value"] = c.test.p_value;
  j["degrees_of_freedom"] = c.test.degrees_of_freedom;
  j["significant"] = c.test.significant;
  j["tails"] = tails_name(c.test.tails);
  j["degenerate"] = c.test.degenerate;
  j["alpha"] = c.test.alpha;
  return j;
}

inline Comparison comparison_from_json(const nlohmann::ordered_json& j) {
  Comparison c;
  c.proposed = j.at("proposed").get<std::string>();
  c.baseline = j.at("baseline").get<std::string>();
  c.classifier = j.at("classifier").get<std::string>();
  c.test.t_value = number_or_inf(j.at("t_value"));
  c.test.p_value = j.at("p_value").get<double>();
  c.test.degrees_of_freedom = j.at("degrees_of_freedom").get<std::size_t>();
  c.test.significant = j.at("significant").get<bool>();
  c.test.tails = parse_tails(j.at("tails").get<std::string>());
  c.test.degenerate = j.at("degenerate").get<bool>();
  c.test.alpha = j.at("alpha").get<double>();
  return c;
}

inline nlohmann::ordered_json report_to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["tool_version"] = r.tool_version;
  j["seed"] = r.seed;
  j["plan_echo"] = r.plan_echo;
  auto& tables = j["tables"] = nlohmann::ordered_json::array();
  for (const auto& t : r.tables) tables.push_back(table_to_json(t));
  auto& tests = j["ttests"] = nlohmann::ordered_json::array();
  for (const auto& c : r.ttests) tests.push_back(comparison_to_json(c));
  return j;
}

inline Report report_from_json(const nlohmann::ordered_json& j) {
  try {
    Report r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.plan_echo = j.at("plan_echo");
    for (const auto& t : j.at("tables")) r.tables.push_back(table_from_json(t));
    for (const auto& c : j.at("ttests")) r.ttests.push_back(comparison_from_json(c));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("report: malformed document: ") + e.what());
  }
}

inline Report load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open report '" + path.string() + "'");
  try {
    return report_from_json(nlohmann::ordered_json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("report '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

/// Table layout: header "features,<classifiers...>", one row per set size,
/// final row "Avg.".
inline std::string table_to_csv(const AccuracyTable& t) {
  std::string s = "features";
  for (const auto& c : t.classifiers) s += "," + c;
  s += '\n';
  for (std::size_t z = 0; z < t.set_sizes.size(); ++z) {
    s += std::to_string(t.set_sizes[z]);
    for (double v : t.cells[z]) s += "," + fixed6(v);
    s += '\n';
  }
  s += "Avg.";
  for (double v : t.avg) s += "," + fixed6(v);
  s += '\n';
  return s;
}

struct PlotSeries {
  std::string classifier;
  std::string selector;
  std::vector<std::size_t> x;
  std::vector<double> y;
};

/// One series per (classifier, selector): x = set size, y = accuracy.
inline std::vector<PlotSeries> build_plot_series(const std::vector<AccuracyTable>& tables) {
  std::vector<PlotSeries> out;
  if (tables.empty()) return out;
  for (std::size_t c = 0; c < tables.front().classifiers.size(); ++c)
    for (const auto& t : tables) {
      if (c >= t.classifiers.size()) continue;
      out.push_back({t.classifiers[c], t.selector, t.set_sizes, t.column(c)});
    }
  return out;
}

inline std::string plot_series_to_csv(const std::vector<PlotSeries>& series) {
  std::string s = "classifier,selector,features,accuracy\n";
  for (const auto& p : series)
    for (std::size_t i = 0; i < p.x.size(); ++i)
      s += p.classifier + "," + p.selector + "," + std::to_string(p.x[i]) + "," + fixed6(p.y[i]) +
           "\n";
  return s;
}

namespace report_detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace report_detail

/// Writes the requested formats into out_dir and returns the written paths:
/// report.json, table_<selector>.csv per table, plotdata.csv.
inline std::vector<std::filesystem::path> emit_report(const Report& report,
                                                      const std::filesystem::path& out_dir,
                                                      const std::set<ReportFormat>& formats) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir))
    throw IoError("output directory '" + out_dir.string() + "' is not writable");
  std::vector<fs::path> written;
  if (formats.contains(ReportFormat::json)) {
    auto p = out_dir / "report.json";
    report_detail::write_file(p, report_to_json(report).dump(2) + "\n");
    written.push_back(p);
  }
  if (formats.contains(ReportFormat::csv))
    for (const auto& t : report.tables) {
      auto p = out_dir / ("table_" + t.selector + ".csv");
      report_detail::write_file(p, table_to_csv(t));
      written.push_back(p);
    }
  if (formats.contains(ReportFormat::plotdata)) {
    auto p = out_dir / "plotdata.csv";
    report_detail::write_file(p, plot_series_to_csv(build_plot_series(report.tables)));
    written.push_back(p);
  }
  return written;
}

}  // namespace miselect
