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

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "miselect/dataset.hpp"
#include "miselect/error.hpp"

namespace miselect {

/// Stratified k-fold split. Each class is shuffled and dealt round-robin over
/// the folds, the second class continuing where the first stopped, so fold
/// sizes differ by at most one overall and per class.
inline FoldPlan stratified_kfold(std::span<const Label> labels, std::size_t k,
                                 std::uint64_t seed) {
  if (k < 2) throw InvalidArgument("k_folds must be >= 2");
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  for (const auto& members : by_class)
    if (!members.empty() && members.size() < k)
      throw InvalidArgument("k_folds exceeds class size (k=" + std::to_string(k) +
                            ", smallest class has " + std::to_string(members.size()) +
                            " samples)");
  if (labels.size() < k) throw InvalidArgument("k_folds exceeds class size");

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> fold_of(labels.size(), 0);
  std::size_t slot = 0;
  for (auto& members : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    for (auto idx : members) fold_of[idx] = slot++ % k;
  }

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.folds.resize(k);
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t f = 0; f < k; ++f)
      (f == fold_of[i] ? plan.folds[f].test : plan.folds[f].train).push_back(i);
  return plan;
}

inline FoldPlan stratified_kfold(const Dataset& ds, std::size_t k, std::uint64_t seed) {
  return stratified_kfold(std::span<const Label>(ds.labels()), k, seed);
}

}  // namespace miselect
