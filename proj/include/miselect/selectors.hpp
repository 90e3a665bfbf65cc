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

// Greedy forward feature selection over discrete data.
//
// Every method starts from the feature with the highest relevance I(f;C) and
// then repeatedly adds the remaining candidate with the best score:
//
//   emifs          I(x;C) - (|S|/|F|) * sum_s I(x;s)
//   mifs           I(x;C) - beta_fixed * sum_s I(x;s)
//   mrmr           I(x;C) - (1/|S|) * sum_s I(x;s)
//   jmi            I(x;C) - (1/|S|) * sum_s [I(x;s) - I(x;s|C)]
//   mm_emifs       min_s I(C;x|s)
//   mm_emifs_beta  I(x;C) - (|S|/|F|) * min_s I(x;s)
//   jmim           min_s I((x,s);C)
//
// |F| is the total feature count, S the already selected set. Scores within
// kTieTolerance of each other are ties and go to the lowest feature index.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "miselect/dataset.hpp"
#include "miselect/error.hpp"
#include "miselect/infotheory.hpp"
#include "miselect/parallel.hpp"

namespace miselect {

enum class Method { emifs, mm_emifs, mm_emifs_beta, mifs, mrmr, jmi, jmim };

inline constexpr Method kAllMethods[] = {Method::emifs, Method::mm_emifs, Method::mm_emifs_beta,
                                         Method::mifs,  Method::mrmr,     Method::jmi,
                                         Method::jmim};

inline constexpr double kTieTolerance = 1e-12;

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::emifs: return "emifs";
    case Method::mm_emifs: return "mm_emifs";
    case Method::mm_emifs_beta: return "mm_emifs_beta";
    case Method::mifs: return "mifs";
    case Method::mrmr: return "mrmr";
    case Method::jmi: return "jmi";
    case Method::jmim: return "jmim";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  for (auto m : kAllMethods)
    if (method_name(m) == s) return m;
  throw InvalidArgument("unknown selection method '" + std::string(s) + "'");
}

/// The gradually up-weighted methods; everything else is a baseline.
inline bool is_proposed(Method m) {
  return m == Method::emifs || m == Method::mm_emifs || m == Method::mm_emifs_beta;
}

struct SelectorConfig {
  Method method = Method::emifs;
  std::size_t tau = 10;
  double beta_fixed = 0.5;        // mifs only
  std::optional<double> gamma;    // jmi only; unset means 1/|S|
  LogBase unit = LogBase::bits;
  std::size_t threads = 1;

  void validate() const {
    if (tau < 1) throw InvalidArgument("tau must be >= 1");
    if (!(beta_fixed >= 0.0 && beta_fixed <= 1.0))
      throw InvalidArgument("beta must lie in [0,1]");
    if (gamma) {
      if (method != Method::jmi)
        throw InvalidArgument("gamma is only used by jmi, not " + std::string(method_name(method)));
      if (!(*gamma >= 0.0 && *gamma <= 1.0)) throw InvalidArgument("gamma must lie in [0,1]");
    }
  }
};

struct SelectionResult {
  Method method = Method::emifs;
  std::vector<std::size_t> order;
  std::vector<double> scores;
  /// Redundancy coefficient per step from the second step on; empty for
  /// mm_emifs and jmim.
  std::vector<double> beta_trajectory;
};

/// |S| / |F|.
inline double compute_beta(std::size_t selected_count, std::size_t total_count) {
  if (total_count == 0) throw InvalidArgument("compute_beta: feature count is zero");
  if (selected_count > total_count)
    throw InvalidArgument("compute_beta: selected count exceeds feature count");
  return static_cast<double>(selected_count) / static_cast<double>(total_count);
}

/// Selected set, remaining candidates and lazily filled information caches.
/// Pairwise terms are stored per selected position, so each I(x;s) style
/// term is computed at most once over a whole run.
class SelectionState {
 public:
  enum class Term { pair_mi, cmi_given_class, class_cmi_given, joint_mi };

  explicit SelectionState(const DiscreteDataset& ds, LogBase unit = LogBase::bits)
      : ds_(&ds),
        unit_(unit),
        is_candidate_(ds.n_features(), true),
        relevance_(ds.n_features(), kUnset) {}

  const DiscreteDataset& data() const { return *ds_; }
  LogBase unit() const { return unit_; }
  std::size_t n_features() const { return ds_->n_features(); }
  const std::vector<std::size_t>& selected() const { return selected_; }
  bool is_candidate(std::size_t f) const { return f < n_features() && is_candidate_[f]; }

  std::vector<std::size_t> candidates() const {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < n_features(); ++f)
      if (is_candidate_[f]) out.push_back(f);
    return out;
  }

  void select(std::size_t f) {
    if (!is_candidate(f))
      throw InvalidArgument("feature " + std::to_string(f) + " is not a candidate");
    is_candidate_[f] = false;
    selected_.push_back(f);
    for (auto& rows : cache_) rows.emplace_back(n_features(), kUnset);
  }

  double class_entropy() const {
    return entropy(ds_->labels(), ds_->label_arity(), unit_);
  }

  /// I(f;C).
  double relevance(std::size_t f) {
    double& slot = relevance_.at(f);
    if (std::isnan(slot))
      slot = mutual_information(ds_->column(f), ds_->arity(f), ds_->labels(), ds_->label_arity(),
                                unit_);
    return slot;
  }

  /// Cached information term between candidate f and the selected feature at
  /// position `pos` of the selection order.
  double term(Term kind, std::size_t f, std::size_t pos) {
    double& slot = cache_[static_cast<std::size_t>(kind)].at(pos).at(f);
    if (std::isnan(slot)) slot = compute(kind, f, selected_.at(pos));
    return slot;
  }

  /// Fills one cache row for every current candidate, spread over workers.
  void prefill(Term kind, std::size_t pos, std::size_t threads) {
    auto cands = candidates();
    auto& row = cache_[static_cast<std::size_t>(kind)].at(pos);
    const std::size_t s = selected_.at(pos);
    parallel_for(cands.size(), threads, [&](std::size_t i) {
      if (std::isnan(row[cands[i]])) row[cands[i]] = compute(kind, cands[i], s);
    });
  }

  void prefill_relevance(std::size_t threads) {
    parallel_for(n_features(), threads, [&](std::size_t f) {
      if (std::isnan(relevance_[f]))
        relevance_[f] = mutual_information(ds_->column(f), ds_->arity(f), ds_->labels(),
                                           ds_->label_arity(), unit_);
    });
  }

 private:
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  double compute(Term kind, std::size_t f, std::size_t s) const {
    const auto& d = *ds_;
    switch (kind) {
      case Term::pair_mi:
        return mutual_information(d.column(f), d.arity(f), d.column(s), d.arity(s), unit_);
      case Term::cmi_given_class:
        return conditional_mutual_information(d.column(f), d.arity(f), d.column(s), d.arity(s),
                                              d.labels(), d.label_arity(), unit_);
      case Term::class_cmi_given:
        return conditional_mutual_information(d.labels(), d.label_arity(), d.column(f), d.arity(f),
                                              d.column(s), d.arity(s), unit_);
      case Term::joint_mi:
        return joint_pair_mi(d.column(f), d.arity(f), d.column(s), d.arity(s), d.labels(),
                             d.label_arity(), unit_);
    }
    return kUnset;
  }

  const DiscreteDataset* ds_;
  LogBase unit_;
  std::vector<std::size_t> selected_;
  std::vector<bool> is_candidate_;
  std::vector<double> relevance_;
  std::vector<std::vector<double>> cache_[4];
};

namespace selectors_detail {

inline void require_candidate(const SelectionState& st, std::size_t candidate) {
  if (candidate >= st.n_features())
    throw InvalidArgument("feature " + std::to_string(candidate) + " out of range");
  if (!st.is_candidate(candidate))
    throw InvalidArgument("feature " + std::to_string(candidate) + " is already selected");
}

inline double sum_term(SelectionState& st, SelectionState::Term kind, std::size_t candidate) {
  double s = 0.0;
  for (std::size_t pos = 0; pos < st.selected().size(); ++pos) s += st.term(kind, candidate, pos);
  return s;
}

inline double min_term(SelectionState& st, SelectionState::Term kind, std::size_t candidate) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t pos = 0; pos < st.selected().size(); ++pos)
    m = std::min(m, st.term(kind, candidate, pos));
  return m;
}

}  // namespace selectors_detail

/// I(x;C) - (|S|/|F|) * sum_{s in S} I(x;s).
inline double score_emifs(SelectionState& st, std::size_t candidate) {
  selectors_detail::require_candidate(st, candidate);
  const double rel = st.relevance(candidate);
  if (st.selected().empty()) return rel;
  const double beta = compute_beta(st.selected().size(), st.n_features());
  return rel - beta * selectors_detail::sum_term(st, SelectionState::Term::pair_mi, candidate);
}

/// Linear-combination baselines (mifs, mrmr, jmi).
inline double score_linear_baseline(SelectionState& st, std::size_t candidate, Method method,
                                    double beta_fixed = 0.5,
                                    std::optional<double> gamma = std::nullopt) {
  using Term = SelectionState::Term;
  selectors_detail::require_candidate(st, candidate);
  const double rel = st.relevance(candidate);
  const std::size_t k = st.selected().size();
  if (method != Method::mifs && method != Method::mrmr && method != Method::jmi)
    throw InvalidArgument("score_linear_baseline: unsupported method " +
                          std::string(method_name(method)));
  if (k == 0) return rel;
  const double redundancy = selectors_detail::sum_term(st, Term::pair_mi, candidate);
  const double inv = 1.0 / static_cast<double>(k);
  switch (method) {
    case Method::mifs: return rel - beta_fixed * redundancy;
    case Method::mrmr: return rel - inv * redundancy;
    default: {
      const double g = gamma.value_or(inv);
      return rel - inv * redundancy +
             g * selectors_detail::sum_term(st, Term::cmi_given_class, candidate);
    }
  }
}

/// Max-of-min criteria (mm_emifs, mm_emifs_beta, jmim). Needs |S| >= 1.
inline double score_maxmin(SelectionState& st, std::size_t candidate, Method method) {
  using Term = SelectionState::Term;
  selectors_detail::require_candidate(st, candidate);
  if (st.selected().empty())
    throw InvalidArgument("score_maxmin: selected set is empty; seed it with the max-MI feature");
  switch (method) {
    case Method::mm_emifs: return selectors_detail::min_term(st, Term::class_cmi_given, candidate);
    case Method::mm_emifs_beta:
      return st.relevance(candidate) -
             compute_beta(st.selected().size(), st.n_features()) *
                 selectors_detail::min_term(st, Term::pair_mi, candidate);
    case Method::jmim: return selectors_detail::min_term(st, Term::joint_mi, candidate);
    default:
      throw InvalidArgument("score_maxmin: unsupported method " + std::string(method_name(method)));
  }
}

/// The configured method's score; with an empty selected set every method
/// reduces to relevance.
inline double score(SelectionState& st, std::size_t candidate, const SelectorConfig& cfg) {
  if (st.selected().empty()) {
    selectors_detail::require_candidate(st, candidate);
    return st.relevance(candidate);
  }
  switch (cfg.method) {
    case Method::emifs: return score_emifs(st, candidate);
    case Method::mifs:
    case Method::mrmr:
    case Method::jmi: return score_linear_baseline(st, candidate, cfg.method, cfg.beta_fixed, cfg.gamma);
    default: return score_maxmin(st, candidate, cfg.method);
  }
}

namespace selectors_detail {

// Coefficient on the redundancy term when the selected set has k members.
inline std::optional<double> step_beta(const SelectorConfig& cfg, std::size_t k,
                                       std::size_t n_features) {
  switch (cfg.method) {
    case Method::emifs:
    case Method::mm_emifs_beta: return compute_beta(k, n_features);
    case Method::mifs: return cfg.beta_fixed;
    case Method::mrmr:
    case Method::jmi: return 1.0 / static_cast<double>(k);
    default: return std::nullopt;
  }
}

inline void prefill_step(SelectionState& st, const SelectorConfig& cfg) {
  using Term = SelectionState::Term;
  if (cfg.threads <= 1 || st.selected().empty()) return;
  const std::size_t pos = st.selected().size() - 1;
  switch (cfg.method) {
    case Method::mm_emifs: st.prefill(Term::class_cmi_given, pos, cfg.threads); break;
    case Method::jmim: st.prefill(Term::joint_mi, pos, cfg.threads); break;
    case Method::jmi:
      st.prefill(Term::pair_mi, pos, cfg.threads);
      st.prefill(Term::cmi_given_class, pos, cfg.threads);
      break;
    default: st.prefill(Term::pair_mi, pos, cfg.threads); break;
  }
}

}  // namespace selectors_detail

/// Greedy forward selection of min(tau, |F|) features.
///
/// When the class is constant no feature carries information; the first tau
/// features are returned in index order with zero scores.
inline SelectionResult greedy_select(const DiscreteDataset& ds, const SelectorConfig& cfg) {
  cfg.validate();
  if (ds.n_features() == 0) throw InvalidArgument("greedy_select: dataset has no features");
  if (ds.n_samples() < 2) throw InvalidArgument("greedy_select: dataset needs >= 2 samples");

  SelectionResult result;
  result.method = cfg.method;
  const std::size_t target = std::min(cfg.tau, ds.n_features());
  SelectionState st(ds, cfg.unit);

  if (st.class_entropy() == 0.0) {
    for (std::size_t f = 0; f < target; ++f) {
      auto beta = st.selected().empty()
                      ? std::nullopt
                      : selectors_detail::step_beta(cfg, st.selected().size(), ds.n_features());
      if (beta) result.beta_trajectory.push_back(*beta);
      st.select(f);
      result.order.push_back(f);
      result.scores.push_back(0.0);
    }
    return result;
  }

  st.prefill_relevance(cfg.threads);
  while (st.selected().size() < target) {
    selectors_detail::prefill_step(st, cfg);
    // Lowest index among candidates within kTieTolerance of the maximum.
    auto cands = st.candidates();
    std::vector<double> scores(cands.size());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cands.size(); ++i) {
      scores[i] = score(st, cands[i], cfg);
      top = std::max(top, scores[i]);
    }
    std::size_t pick = 0;
    while (scores[pick] < top - kTieTolerance) ++pick;
    const std::size_t best = cands[pick];
    const double best_score = scores[pick];
    if (!st.selected().empty())
      if (auto beta = selectors_detail::step_beta(cfg, st.selected().size(), ds.n_features()))
        result.beta_trajectory.push_back(*beta);
    st.select(best);
    result.order.push_back(best);
    result.scores.push_back(best_score);
  }
  return result;
}

/// Features ordered by decreasing relevance I(f;C) alone (ties by index);
/// the redundancy-blind reference ranking.
inline std::vector<std::size_t> rank_by_relevance(const DiscreteDataset& ds, std::size_t tau,
                                                  LogBase unit = LogBase::bits) {
  SelectionState st(ds, unit);
  std::vector<std::size_t> order(ds.n_features());
  for (std::size_t f = 0; f < order.size(); ++f) order[f] = f;
  std::vector<double> rel(ds.n_features());
  for (std::size_t f = 0; f < rel.size(); ++f) rel[f] = st.relevance(f);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rel[a] > rel[b]; });
  order.resize(std::min(tau, order.size()));
  return order;
}

}  // namespace miselect
