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

// Cross-validated experiment grid: selectors x feature-set sizes x classifiers,
// plus paired t-tests between selectors' accuracy columns.
//
// Features are selected inside every fold from that fold's training rows only.
// Each (selector, fold) pair runs one greedy pass up to the largest set size;
// smaller sizes use prefixes of that order.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "miselect/classifiers.hpp"
#include "miselect/dataset.hpp"
#include "miselect/discretize.hpp"
#include "miselect/error.hpp"
#include "miselect/kfold.hpp"
#include "miselect/parallel.hpp"
#include "miselect/selectors.hpp"
#include "miselect/stats.hpp"

namespace miselect {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::vector<std::size_t> default_set_sizes() { return {5, 10, 15, 20, 25, 30, 35, 40, 45, 50}; }

inline std::vector<ModelSpec> default_classifiers() {
  return {ModelSpec::of(ModelKind::logistic), ModelSpec::of(ModelKind::tree),
          ModelSpec::of(ModelKind::forest), ModelSpec::of(ModelKind::knn)};
}

struct ExperimentPlan {
  std::vector<SelectorConfig> selectors;  // tau is taken from set_sizes
  std::vector<std::size_t> set_sizes = default_set_sizes();
  std::vector<ModelSpec> classifiers = default_classifiers();
  std::size_t k_folds = 10;
  std::uint64_t seed = 42;
  std::size_t bins = 5;
  BinStrategy strategy = BinStrategy::equal_frequency;
  double alpha = 0.05;
  Tails tails = Tails::one;
  std::size_t threads = 1;

  static ExperimentPlan defaults() {
    ExperimentPlan p;
    SelectorConfig a, b;
    a.method = Method::emifs;
    b.method = Method::mm_emifs;
    p.selectors = {a, b};
    return p;
  }

  void validate() const {
    if (selectors.empty()) throw InvalidArgument("plan: no selectors");
    if (classifiers.empty()) throw InvalidArgument("plan: no classifiers");
    if (set_sizes.empty()) throw InvalidArgument("plan: no set sizes");
    for (std::size_t i = 0; i < set_sizes.size(); ++i) {
      if (set_sizes[i] == 0) throw InvalidArgument("plan: set sizes must be positive");
      if (i > 0 && set_sizes[i] <= set_sizes[i - 1])
        throw InvalidArgument("plan: set sizes must be strictly increasing");
    }
    if (k_folds < 2) throw InvalidArgument("plan: k_folds must be >= 2");
    if (bins < 2) throw InvalidArgument("plan: bins must be >= 2");
    for (const auto& s : selectors) {
      SelectorConfig probe = s;
      probe.tau = set_sizes.back();
      probe.validate();
    }
    for (const auto& c : classifiers) c.validate();
  }
};

/// Mean CV accuracy per (set size, classifier) for one selector.
struct AccuracyTable {
  std::string selector;
  std::vector<std::size_t> set_sizes;
  std::vector<std::string> classifiers;
  std::vector<std::vector<double>> cells;  // [size][classifier]
  std::vector<double> avg;                 // per classifier, mean over sizes

  std::vector<double> column(std::size_t c) const {
    std::vector<double> out;
    out.reserve(cells.size());
    for (const auto& row : cells) out.push_back(row.at(c));
    return out;
  }

  void compute_avg() {
    avg.assign(classifiers.size(), 0.0);
    for (std::size_t c = 0; c < classifiers.size(); ++c) {
      double s = 0.0;
      for (const auto& row : cells) s += row[c];
      avg[c] = cells.empty() ? 0.0 : s / static_cast<double>(cells.size());
    }
  }
};

struct Comparison {
  std::string proposed;
  std::string baseline;
  std::string classifier;
  TTestResult test;
};

struct ExperimentResult {
  std::vector<AccuracyTable> tables;
  std::vector<std::size_t> set_sizes;                          // after truncation
  std::vector<std::vector<std::vector<std::size_t>>> selections;  // [selector][fold]
  std::vector<std::string> warnings;
};

/// One fold's selection: bins the training rows and runs the greedy pass.
inline SelectionResult select_on_rows(const Dataset& ds, std::span<const std::size_t> train_rows,
                                      SelectorConfig cfg, std::size_t bins,
                                      BinStrategy strategy = BinStrategy::equal_frequency) {
  auto discrete = discretize(ds.subset(train_rows), bins, strategy);
  return greedy_select(discrete, cfg);
}

inline ExperimentResult run_experiment(const ExperimentPlan& plan, const Dataset& ds) {
  plan.validate();
  if (!ds.usable()) throw DataError("evaluate: dataset has no samples or no features");

  ExperimentResult out;
  for (auto s : plan.set_sizes)
    if (s <= ds.n_features()) out.set_sizes.push_back(s);
  if (out.set_sizes.size() != plan.set_sizes.size()) {
    out.warnings.push_back("dataset has only " + std::to_string(ds.n_features()) +
                           " features; larger set sizes dropped");
    if (out.set_sizes.empty()) out.set_sizes.push_back(ds.n_features());
  }
  const std::size_t max_size = out.set_sizes.back();

  const FoldPlan folds = stratified_kfold(ds, plan.k_folds, plan.seed);
  const std::size_t nf = folds.folds.size();
  const std::size_t ns = plan.selectors.size();
  const std::size_t nc = plan.classifiers.size();
  const std::size_t nz = out.set_sizes.size();

  std::vector<DiscreteDataset> binned(nf);
  parallel_for(nf, plan.threads, [&](std::size_t f) {
    binned[f] = discretize(ds.subset(folds.folds[f].train), plan.bins, plan.strategy);
  });

  out.selections.assign(ns, std::vector<std::vector<std::size_t>>(nf));
  parallel_for(ns * nf, plan.threads, [&](std::size_t task) {
    const std::size_t s = task / nf, f = task % nf;
    SelectorConfig cfg = plan.selectors[s];
    cfg.tau = max_size;
    cfg.threads = 1;
    out.selections[s][f] = greedy_select(binned[f], cfg).order;
  });

  // acc[((s * nz + z) * nc + c) * nf + f]
  std::vector<double> acc(ns * nz * nc * nf, 0.0);
  parallel_for(acc.size(), plan.threads, [&](std::size_t task) {
    const std::size_t f = task % nf;
    const std::size_t c = (task / nf) % nc;
    const std::size_t z = (task / (nf * nc)) % nz;
    const std::size_t s = task / (nf * nc * nz);
    const auto& order = out.selections[s][f];
    std::vector<std::size_t> subset(order.begin(),
                                    order.begin() + static_cast<std::ptrdiff_t>(
                                                        std::min(out.set_sizes[z], order.size())));
    ModelSpec spec = plan.classifiers[c];
    spec.forest.seed = mix_seed(plan.seed, f);
    const auto& fold = folds.folds[f];
    auto pred = train_predict(spec, ds, fold.train, fold.test, subset);
    std::vector<Label> actual;
    actual.reserve(fold.test.size());
    for (auto r : fold.test) actual.push_back(ds.labels()[r]);
    acc[task] = accuracy(confusion(pred, actual));
  });

  for (std::size_t s = 0; s < ns; ++s) {
    AccuracyTable t;
    t.selector = std::string(method_name(plan.selectors[s].method));
    t.set_sizes = out.set_sizes;
    for (const auto& c : plan.classifiers) t.classifiers.emplace_back(model_display_name(c.kind));
    t.cells.assign(nz, std::vector<double>(nc, 0.0));
    for (std::size_t z = 0; z < nz; ++z)
      for (std::size_t c = 0; c < nc; ++c) {
        double sum = 0.0;
        for (std::size_t f = 0; f < nf; ++f) sum += acc[((s * nz + z) * nc + c) * nf + f];
        t.cells[z][c] = sum / static_cast<double>(nf);
      }
    t.compute_avg();
    out.tables.push_back(std::move(t));
  }
  return out;
}

/// Paired t-tests over the set-size axis. Each proposed selector is tested
/// against each baseline, per classifier. Without any baseline in the run,
/// every later selector is tested against the first one.
inline std::vector<Comparison> compare_tables(const std::vector<AccuracyTable>& tables,
                                              double alpha = 0.05, Tails tails = Tails::one) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < tables.size(); ++i)
    for (std::size_t j = 0; j < tables.size(); ++j)
      if (is_proposed(parse_method(tables[i].selector)) &&
          !is_proposed(parse_method(tables[j].selector)))
        pairs.emplace_back(i, j);
  if (pairs.empty())
    for (std::size_t j = 1; j < tables.size(); ++j) pairs.emplace_back(j, 0);

  std::vector<Comparison> out;
  for (auto [i, j] : pairs) {
    const auto& a = tables[i];
    const auto& b = tables[j];
    if (a.cells.size() < 2) continue;
    for (std::size_t c = 0; c < a.classifiers.size(); ++c) {
      auto ca = a.column(c), cb = b.column(c);
      out.push_back({a.selector, b.selector, a.classifiers[c], paired_ttest(ca, cb, alpha, tails)});
    }
  }
  return out;
}

}  // namespace miselect
