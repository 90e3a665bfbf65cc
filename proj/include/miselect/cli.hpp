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

// Command-line front end.
//
//   ingest    trace directory + manifest -> TF-IDF CSV
//   synth     synthetic trace corpus + ground truth
//   select    one greedy selection run -> JSON
//   evaluate  full CV grid -> report.json, per-selector CSV tables, plotdata.csv
//   report    re-render tables and plot data from a report.json
//
// Exit status: 0 success, 1 usage error, 2 data/runtime error.

#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "miselect/csv.hpp"
#include "miselect/discretize.hpp"
#include "miselect/evaluation.hpp"
#include "miselect/report.hpp"
#include "miselect/selectors.hpp"
#include "miselect/synth.hpp"
#include "miselect/tfidf.hpp"
#include "miselect/traces.hpp"
#include "miselect/version.hpp"

namespace miselect {

namespace cli_detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (auto t = csv_detail::trim(item); !t.empty()) out.emplace_back(t);
  return out;
}

template <typename Fn>
auto resolve(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

inline void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

struct Options {
  // shared
  std::string input, out, label = "label", method, strategy = "equal_frequency";
  std::uint64_t seed = 42;
  std::size_t threads = default_threads();
  std::size_t bins = 5;
  double beta = 0.5;
  // ingest
  std::string manifest;
  std::size_t min_df = 2;
  // select
  std::size_t tau = 10;
  // evaluate
  std::string sizes = "5,10,15,20,25,30,35,40,45,50";
  std::string classifiers = "lr,dt,rf,knn";
  std::size_t k_folds = 10;
  double alpha = 0.05;
  std::string tails = "one";
  // report
  std::string formats = "json,csv,plotdata";
  // synth
  SynthConfig synth;
};

inline void add_seed(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed, "RNG seed (falls back to $MISELECT_SEED)")
      ->envname("MISELECT_SEED")
      ->capture_default_str();
}

inline int do_ingest(const Options& o, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  const fs::path dir = o.input;
  const fs::path manifest = o.manifest.empty() ? dir / "manifest.csv" : fs::path(o.manifest);
  std::vector<std::string> warnings;
  auto corpus = ingest_traces(dir, manifest, &warnings);
  if (corpus.empty()) throw DataError("manifest lists no traces");
  for (const auto& w : warnings) err << "miselect ingest: warning: " << w << '\n';
  auto ds = tfidf_vectorize(corpus, o.min_df);
  save_csv(o.out, ds, o.label);
  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["seed"] = o.seed;
  j["config"] = {{"input", o.input}, {"manifest", manifest.string()}, {"out", o.out},
                 {"min_df", o.min_df}, {"label", o.label}};
  j["n_samples"] = ds.n_samples();
  j["n_features"] = ds.n_features();
  j["skipped"] = warnings.size();
  out << j.dump(2) << '\n';
  return 0;
}

inline int do_synth(const Options& o, std::ostream& out) {
  auto corpus = resolve([&] { return synth_corpus(o.synth, o.seed); });
  write_trace_corpus(o.out, corpus.documents);
  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["seed"] = o.seed;
  const auto& c = o.synth;
  j["config"] = {{"n_ransomware", c.n_ransomware}, {"n_benign", c.n_benign},
                 {"vocabulary_size", c.vocabulary_size}, {"n_informative", c.n_informative},
                 {"n_redundant", c.n_redundant}, {"n_noise", c.n_noise},
                 {"p_ransomware", c.p_ransomware}, {"p_benign", c.p_benign},
                 {"p_noise", c.p_noise}, {"min_length", c.min_length},
                 {"max_length", c.max_length}, {"max_repeat", c.max_repeat}};
  j["informative"] = corpus.informative;
  j["redundant_of"] = corpus.redundant_of;
  j["noise"] = corpus.noise;
  write_json(std::filesystem::path(o.out) / "ground_truth.json", j);
  out << "wrote " << corpus.documents.size() << " traces to " << o.out << '\n';
  return 0;
}

inline int do_select(const Options& o, std::ostream& out) {
  SelectorConfig cfg;
  cfg.method = resolve([&] { return parse_method(o.method.empty() ? "emifs" : o.method); });
  cfg.tau = o.tau;
  cfg.beta_fixed = o.beta;
  cfg.threads = o.threads;
  const auto strategy = resolve([&] { return parse_bin_strategy(o.strategy); });
  resolve([&] {
    cfg.validate();
    if (o.bins < 2) throw InvalidArgument("--bins must be >= 2");
    return 0;
  });
  auto ds = load_csv(o.input, o.label);
  if (!ds.usable()) throw DataError("dataset '" + o.input + "' has no samples");
  auto discrete = discretize(ds, o.bins, strategy);
  auto res = greedy_select(discrete, cfg);

  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["seed"] = o.seed;
  j["config"] = {{"input", o.input}, {"label", o.label},
                 {"method", method_name(cfg.method)}, {"tau", cfg.tau},
                 {"beta", cfg.beta_fixed}, {"bins", o.bins},
                 {"strategy", o.strategy}, {"threads", o.threads}};
  j["n_features"] = ds.n_features();
  j["order"] = res.order;
  std::vector<std::string> names;
  for (auto f : res.order) names.push_back(ds.feature_names()[f]);
  j["features"] = names;
  auto& scores = j["scores"] = nlohmann::ordered_json::array();
  for (double s : res.scores) scores.push_back(round6(s));
  auto& betas = j["beta_trajectory"] = nlohmann::ordered_json::array();
  for (double b : res.beta_trajectory) betas.push_back(round6(b));
  write_json(o.out, j);
  out << "selected " << res.order.size() << " features with " << method_name(cfg.method) << '\n';
  return 0;
}

inline ExperimentPlan plan_from_options(const Options& o) {
  return resolve([&] {
    ExperimentPlan plan;
    for (const auto& m : split_list(o.method.empty() ? "emifs,mm_emifs" : o.method)) {
      SelectorConfig s;
      s.method = parse_method(m);
      s.beta_fixed = o.beta;
      plan.selectors.push_back(s);
    }
    plan.set_sizes.clear();
    for (const auto& s : split_list(o.sizes)) {
      std::size_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size())
        throw InvalidArgument("--sizes: '" + s + "' is not a positive integer");
      plan.set_sizes.push_back(v);
    }
    plan.classifiers.clear();
    for (const auto& c : split_list(o.classifiers))
      plan.classifiers.push_back(ModelSpec::of(parse_model_kind(c)));
    plan.k_folds = o.k_folds;
    plan.seed = o.seed;
    plan.bins = o.bins;
    plan.strategy = parse_bin_strategy(o.strategy);
    plan.alpha = o.alpha;
    if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw InvalidArgument("--alpha must be in (0,1)");
    plan.tails = parse_tails(o.tails);
    plan.threads = o.threads;
    plan.validate();
    return plan;
  });
}

inline std::set<ReportFormat> formats_from_options(const Options& o) {
  return resolve([&] {
    std::set<ReportFormat> f;
    for (const auto& s : split_list(o.formats)) f.insert(parse_report_format(s));
    if (f.empty()) throw InvalidArgument("--formats is empty");
    return f;
  });
}

inline int do_evaluate(const Options& o, std::ostream& out, std::ostream& err) {
  auto plan = plan_from_options(o);
  auto formats = formats_from_options(o);
  auto ds = load_csv(o.input, o.label);
  auto result = run_experiment(plan, ds);
  for (const auto& w : result.warnings) err << "miselect evaluate: warning: " << w << '\n';
  Report report;
  report.seed = plan.seed;
  report.plan_echo = plan_to_json(plan);
  report.plan_echo["input"] = o.input;
  report.plan_echo["label"] = o.label;
  report.plan_echo["effective_set_sizes"] = result.set_sizes;
  report.tables = result.tables;
  report.ttests = compare_tables(result.tables, plan.alpha, plan.tails);
  auto written = emit_report(report, o.out, formats);
  for (const auto& p : written) out << "wrote " << p.string() << '\n';
  return 0;
}

inline int do_report(const Options& o, std::ostream& out) {
  auto formats = formats_from_options(o);
  auto report = load_report(o.input);
  auto written = emit_report(report, o.out, formats);
  for (const auto& p : written) out << "wrote " << p.string() << '\n';
  return 0;
}

}  // namespace cli_detail

/// Runs one CLI invocation. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  using namespace cli_detail;
  Options o;
  CLI::App app{"Mutual-information feature selection toolkit", "miselect"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto* ingest = app.add_subcommand("ingest", "Convert a labeled trace directory to a TF-IDF CSV");
  ingest->add_option("--input", o.input, "Trace directory")->required();
  ingest->add_option("--manifest", o.manifest, "Manifest CSV (default: <input>/manifest.csv)");
  ingest->add_option("--out", o.out, "Output CSV")->required();
  ingest->add_option("--min-df", o.min_df, "Minimum document frequency")->capture_default_str();
  ingest->add_option("--label", o.label, "Label column name")->capture_default_str();
  add_seed(ingest, o);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic trace corpus");
  synth->add_option("--out", o.out, "Output directory")->required();
  synth->add_option("--n-ransomware", o.synth.n_ransomware)->capture_default_str();
  synth->add_option("--n-benign", o.synth.n_benign)->capture_default_str();
  synth->add_option("--vocab", o.synth.vocabulary_size)->capture_default_str();
  synth->add_option("--informative", o.synth.n_informative)->capture_default_str();
  synth->add_option("--redundant", o.synth.n_redundant)->capture_default_str();
  synth->add_option("--noise", o.synth.n_noise)->capture_default_str();
  synth->add_option("--p-ransomware", o.synth.p_ransomware)->capture_default_str();
  synth->add_option("--p-benign", o.synth.p_benign)->capture_default_str();
  synth->add_option("--p-noise", o.synth.p_noise)->capture_default_str();
  synth->add_option("--min-length", o.synth.min_length)->capture_default_str();
  synth->add_option("--max-length", o.synth.max_length)->capture_default_str();
  add_seed(synth, o);

  auto* select = app.add_subcommand("select", "Run one feature selector on a CSV dataset");
  select->add_option("--input", o.input, "Input CSV")->required();
  select->add_option("--out", o.out, "Output JSON")->required();
  select->add_option("--method", o.method, "emifs|mm_emifs|mm_emifs_beta|mifs|mrmr|jmi|jmim");
  select->add_option("--tau", o.tau, "Number of features to select")->capture_default_str();
  select->add_option("--beta", o.beta, "Fixed beta for mifs")->capture_default_str();
  select->add_option("--bins", o.bins, "Discretization bins")->capture_default_str();
  select->add_option("--strategy", o.strategy, "equal_frequency|equal_width")->capture_default_str();
  select->add_option("--label", o.label, "Label column name")->capture_default_str();
  select->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
  add_seed(select, o);

  auto* evaluate = app.add_subcommand("evaluate", "Cross-validated selector x classifier grid");
  evaluate->add_option("--input", o.input, "Input CSV")->required();
  evaluate->add_option("--out", o.out, "Output directory")->required();
  evaluate->add_option("--method", o.method, "Comma-separated selectors (default emifs,mm_emifs)");
  evaluate->add_option("--sizes", o.sizes, "Comma-separated feature-set sizes")->capture_default_str();
  evaluate->add_option("--classifiers", o.classifiers, "Comma-separated: lr,dt,rf,knn")
      ->capture_default_str();
  evaluate->add_option("--k-folds", o.k_folds, "Cross-validation folds")->capture_default_str();
  evaluate->add_option("--bins", o.bins, "Discretization bins")->capture_default_str();
  evaluate->add_option("--strategy", o.strategy, "equal_frequency|equal_width")->capture_default_str();
  evaluate->add_option("--beta", o.beta, "Fixed beta for mifs")->capture_default_str();
  evaluate->add_option("--alpha", o.alpha, "Significance level")->capture_default_str();
  evaluate->add_option("--tails", o.tails, "one|two")->capture_default_str();
  evaluate->add_option("--formats", o.formats, "Comma-separated: json,csv,plotdata")
      ->capture_default_str();
  evaluate->add_option("--label", o.label, "Label column name")->capture_default_str();
  evaluate->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
  add_seed(evaluate, o);

  auto* report = app.add_subcommand("report", "Render tables and plot data from report.json");
  report->add_option("--input", o.input, "report.json from evaluate")->required();
  report->add_option("--out", o.out, "Output directory")->required();
  report->add_option("--formats", o.formats, "Comma-separated: json,csv,plotdata")
      ->capture_default_str();

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("miselect");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "miselect: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string stage = sub->get_name();
  if (o.threads == 0) o.threads = 1;
  try {
    if (sub == ingest) return do_ingest(o, out, err);
    if (sub == synth) return do_synth(o, out);
    if (sub == select) return do_select(o, out);
    if (sub == evaluate) return do_evaluate(o, out, err);
    return do_report(o, out);
  } catch (const UsageError& e) {
    err << "miselect " << stage << ": " << e.what() << "\n\n" << sub->help();
    return 1;
  } catch (const std::exception& e) {
    err << "miselect " << stage << ": " << e.what() << '\n';
    return 2;
  }
}

}  // namespace miselect
