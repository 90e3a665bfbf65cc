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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "miselect.hpp"

using namespace miselect;
namespace fs = std::filesystem;

namespace {

AccuracyTable table(const std::string& selector, std::size_t sizes, std::size_t classifiers) {
  AccuracyTable t;
  t.selector = selector;
  const char* names[] = {"LR", "DT", "RF", "KNN"};
  for (std::size_t c = 0; c < classifiers; ++c) t.classifiers.push_back(names[c]);
  for (std::size_t z = 0; z < sizes; ++z) {
    t.set_sizes.push_back(5 * (z + 1));
    std::vector<double> row;
    for (std::size_t c = 0; c < classifiers; ++c) row.push_back(0.9 + 0.001 * double(z + c));
    t.cells.push_back(row);
  }
  t.compute_avg();
  for (auto& v : t.avg) v = round6(v);
  return t;
}

Report sample_report() {
  Report r;
  r.seed = 42;
  auto plan = ExperimentPlan::defaults();
  r.plan_echo = plan_to_json(plan);
  r.tables = {table("emifs", 10, 4), table("mrmr", 10, 4)};
  r.ttests = compare_tables(r.tables);
  Comparison inf;
  inf.proposed = "emifs";
  inf.baseline = "mrmr";
  inf.classifier = "LR";
  inf.test.t_value = -INFINITY;
  inf.test.p_value = 1.0;
  inf.test.degenerate = true;
  inf.test.degrees_of_freedom = 9;
  r.ttests.push_back(inf);
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Report, JsonRoundTrip) {
  auto r = sample_report();
  auto j = report_to_json(r);
  auto back = report_from_json(nlohmann::ordered_json::parse(j.dump()));
  EXPECT_EQ(back.seed, 42u);
  EXPECT_EQ(back.tool_version, kToolVersion);
  EXPECT_EQ(back.plan_echo, r.plan_echo);
  ASSERT_EQ(back.tables.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back.tables[i].selector, r.tables[i].selector);
    EXPECT_EQ(back.tables[i].set_sizes, r.tables[i].set_sizes);
    EXPECT_EQ(back.tables[i].classifiers, r.tables[i].classifiers);
    EXPECT_EQ(back.tables[i].cells, r.tables[i].cells);
    EXPECT_EQ(back.tables[i].avg, r.tables[i].avg);
  }
  ASSERT_EQ(back.ttests.size(), r.ttests.size());
  for (std::size_t i = 0; i < r.ttests.size(); ++i) {
    EXPECT_EQ(back.ttests[i].classifier, r.ttests[i].classifier);
    EXPECT_EQ(back.ttests[i].test.p_value, r.ttests[i].test.p_value);
    EXPECT_EQ(back.ttests[i].test.degenerate, r.ttests[i].test.degenerate);
    const double t = r.ttests[i].test.t_value;
    if (std::isinf(t))
      EXPECT_EQ(back.ttests[i].test.t_value, t);
    else
      EXPECT_NEAR(back.ttests[i].test.t_value, t, 5e-7);
  }
  EXPECT_TRUE(std::isinf(back.ttests.back().test.t_value));
  EXPECT_EQ(report_to_json(back).dump(), j.dump());
}

TEST(Report, TopLevelFields) {
  auto j = report_to_json(sample_report());
  for (const char* k : {"tool_version", "seed", "plan_echo", "tables", "ttests"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["plan_echo"]["set_sizes"].size(), 10u);
}

TEST(Report, NumbersHaveSixDecimals) {
  AccuracyTable t = table("emifs", 2, 1);
  t.cells[0][0] = 0.123456789;
  auto j = table_to_json(t);
  EXPECT_EQ(j["rows"][0]["accuracy"][0].get<double>(), 0.123457);
  EXPECT_NE(table_to_csv(t).find("0.123457"), std::string::npos);
}

TEST(Report, CsvLayout) {
  auto csv = lines(table_to_csv(table("emifs", 10, 4)));
  ASSERT_EQ(csv.size(), 12u);
  EXPECT_EQ(csv[0], "features,LR,DT,RF,KNN");
  EXPECT_EQ(csv[1].substr(0, 2), "5,");
  EXPECT_EQ(csv[11].substr(0, 5), "Avg.,");
  for (const auto& l : csv) EXPECT_EQ(std::count(l.begin(), l.end(), ','), 4);
}

TEST(Report, PlotSeriesCardinality) {
  std::vector<AccuracyTable> tables = {table("emifs", 10, 1), table("mm_emifs", 10, 1)};
  auto series = build_plot_series(tables);
  ASSERT_EQ(series.size(), 2u);
  for (const auto& s : series) {
    EXPECT_EQ(s.classifier, "LR");
    EXPECT_EQ(s.x.size(), 10u);
    EXPECT_EQ(s.y.size(), 10u);
  }
  EXPECT_EQ(series[1].selector, "mm_emifs");
  auto csv = lines(plot_series_to_csv(series));
  EXPECT_EQ(csv.size(), 21u);
  EXPECT_EQ(csv[0], "classifier,selector,features,accuracy");
}

TEST(Report, EmitAndReload) {
  auto dir = fs::temp_directory_path() / "miselect_report_emit";
  fs::remove_all(dir);
  auto r = sample_report();
  auto written = emit_report(r, dir, {ReportFormat::json, ReportFormat::csv, ReportFormat::plotdata});
  EXPECT_EQ(written.size(), 4u);
  for (const char* f : {"report.json", "table_emifs.csv", "table_mrmr.csv", "plotdata.csv"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  auto reloaded = load_report(dir / "report.json");
  auto again = fs::temp_directory_path() / "miselect_report_again";
  fs::remove_all(again);
  emit_report(reloaded, again, {ReportFormat::json, ReportFormat::csv, ReportFormat::plotdata});
  for (const char* f : {"report.json", "table_emifs.csv", "plotdata.csv"})
    EXPECT_EQ(slurp(dir / f), slurp(again / f)) << f;
}

TEST(Report, Errors) {
  auto file = fs::temp_directory_path() / "miselect_report_blocker";
  { std::ofstream(file) << "x"; }
  EXPECT_THROW(emit_report(sample_report(), file, {ReportFormat::json}), IoError);
  EXPECT_THROW(load_report(file), DataError);
  EXPECT_THROW(load_report("/nonexistent/report.json"), IoError);
  EXPECT_THROW(report_from_json(nlohmann::ordered_json::parse("{\"seed\": 1}")), DataError);
  EXPECT_THROW(parse_report_format("xml"), InvalidArgument);
}
