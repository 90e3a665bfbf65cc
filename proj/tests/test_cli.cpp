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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "miselect.hpp"
#include "miselect/cli.hpp"

using namespace miselect;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("miselect_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_dataset(const fs::path& dir, std::size_t per_class) {
  SynthConfig cfg;
  cfg.n_ransomware = per_class;
  cfg.n_benign = per_class;
  cfg.vocabulary_size = 60;
  auto ds = tfidf_vectorize(synth_corpus(cfg, 1).documents);
  auto path = dir / "data.csv";
  save_csv(path, ds, "label");
  return path;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, SelectHappyPath) {
  auto dir = scratch("select");
  auto data = write_dataset(dir, 40);
  auto r = cli({"select", "--input", data.string(), "--method", "emifs", "--tau", "30", "--out",
                (dir / "sel.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = read_json(dir / "sel.json");
  EXPECT_EQ(j["order"].size(), 30u);
  EXPECT_EQ(j["features"].size(), 30u);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["config"]["method"], "emifs");
  EXPECT_EQ(j["beta_trajectory"].size(), 29u);
}

TEST(Cli, UnknownFlagIsUsageError) {
  auto r = cli({"select", "--foo"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("Usage"), std::string::npos) << r.err;
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({}).code, 1);
}

TEST(Cli, BadValueIsUsageError) {
  auto dir = scratch("badvalue");
  auto data = write_dataset(dir, 20);
  auto r = cli({"select", "--input", data.string(), "--method", "nope", "--out",
                (dir / "x.json").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("nope"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "x.json"));
  r = cli({"evaluate", "--input", data.string(), "--sizes", "10,5", "--out", (dir / "e").string()});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, EvaluateTooFewSamplesForFolds) {
  auto dir = scratch("fewsamples");
  std::ofstream(dir / "tiny.csv") << "a,b,label\n1,2,0\n2,3,1\n3,1,0\n4,4,1\n5,0,0\n";
  auto r = cli({"evaluate", "--input", (dir / "tiny.csv").string(), "--k-folds", "10", "--sizes",
                "1", "--out", (dir / "out").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("k_folds exceeds class size"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("evaluate"), std::string::npos);
}

TEST(Cli, MissingInputIsRuntimeError) {
  auto dir = scratch("missing");
  auto r = cli({"select", "--input", (dir / "nope.csv").string(), "--out",
                (dir / "s.json").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("select"), std::string::npos);
  EXPECT_NE(r.err.find("nope.csv"), std::string::npos);
}

TEST(Cli, SeedFromEnvironmentAndFlagWins) {
  auto dir = scratch("seed");
  ::setenv("MISELECT_SEED", "777", 1);
  auto r = cli({"synth", "--out", (dir / "a").string(), "--n-ransomware", "5", "--n-benign", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_json(dir / "a" / "ground_truth.json")["seed"], 777);
  r = cli({"synth", "--out", (dir / "b").string(), "--n-ransomware", "5", "--n-benign", "5",
           "--seed", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_json(dir / "b" / "ground_truth.json")["seed"], 9);
  ::unsetenv("MISELECT_SEED");
}

TEST(Cli, SynthIngestSelectPipeline) {
  auto dir = scratch("pipeline");
  ASSERT_EQ(cli({"synth", "--out", (dir / "traces").string(), "--n-ransomware", "60",
                 "--n-benign", "60", "--seed", "3"})
                .code,
            0);
  std::ofstream(dir / "traces" / "stray.trace") << "NtClose\n";
  auto r = cli({"ingest", "--input", (dir / "traces").string(), "--out",
                (dir / "data.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("stray.trace"), std::string::npos);
  auto ds = load_csv(dir / "data.csv", "label");
  EXPECT_EQ(ds.n_samples(), 120u);
  r = cli({"select", "--input", (dir / "data.csv").string(), "--method", "mm_emifs", "--tau", "5",
           "--out", (dir / "sel.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto truth = read_json(dir / "traces" / "ground_truth.json");
  auto sel = read_json(dir / "sel.json");
  EXPECT_EQ(sel["features"][0].get<std::string>().substr(0, 3), "Inf");
  EXPECT_EQ(truth["informative"].size(), 5u);
}

TEST(Cli, EvaluateThenReportAreReproducible) {
  auto dir = scratch("evaluate");
  auto data = write_dataset(dir, 30);
  std::vector<std::string> base = {"evaluate", "--input", data.string(), "--sizes", "2,4",
                                   "--classifiers", "lr,knn", "--k-folds", "3", "--seed", "5"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", (dir / "a").string()});
  b.insert(b.end(), {"--out", (dir / "b").string(), "--threads", "2"});
  ASSERT_EQ(cli(a).code, 0);
  ASSERT_EQ(cli(b).code, 0);
  for (const char* f : {"table_emifs.csv", "table_mm_emifs.csv", "plotdata.csv"})
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  auto j = read_json(dir / "a" / "report.json");
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["plan_echo"]["k_folds"], 3);
  EXPECT_EQ(j["tables"].size(), 2u);
  EXPECT_EQ(j["ttests"].size(), 2u);

  auto r = cli({"report", "--input", (dir / "a" / "report.json").string(), "--out",
                (dir / "r").string(), "--formats", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir / "a" / "table_emifs.csv"), slurp(dir / "r" / "table_emifs.csv"));
  EXPECT_FALSE(fs::exists(dir / "r" / "report.json"));
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = MISELECT_CLI_PATH;
  EXPECT_EQ(std::system((bin + " --version > /dev/null").c_str()), 0);
  int status = std::system((bin + " select --foo > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(status), 1);
  status = std::system((bin + " select --input /nonexistent.csv --out /tmp/x.json 2> /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}
