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

// Core data containers shared by ingestion, selection and evaluation.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "miselect/error.hpp"

namespace miselect {

/// Class label. 0 = benign, 1 = ransomware.
using Label = std::uint8_t;

/// Integer code of a discretized value.
using Code = std::uint32_t;

/// Continuous feature matrix (sample-major) with binary labels.
class Dataset {
 public:
  Dataset() = default;

  Dataset(std::vector<std::string> feature_names, std::vector<double> values,
          std::vector<Label> labels)
      : names_(std::move(feature_names)),
        values_(std::move(values)),
        labels_(std::move(labels)) {
    validate();
  }

  std::size_t n_samples() const { return labels_.size(); }
  std::size_t n_features() const { return names_.size(); }

  /// False for header-only inputs; downstream stages refuse such data.
  bool usable() const { return n_samples() > 0 && n_features() > 0; }

  const std::vector<std::string>& feature_names() const { return names_; }
  const std::vector<Label>& labels() const { return labels_; }
  const std::vector<double>& values() const { return values_; }

  double at(std::size_t sample, std::size_t feature) const {
    return values_[sample * n_features() + feature];
  }
  std::span<const double> row(std::size_t sample) const {
    return {values_.data() + sample * n_features(), n_features()};
  }
  std::vector<double> column(std::size_t feature) const {
    std::vector<double> out(n_samples());
    for (std::size_t i = 0; i < n_samples(); ++i) out[i] = at(i, feature);
    return out;
  }

  /// Copy of the given rows, in the given order.
  Dataset subset(std::span<const std::size_t> rows) const {
    std::vector<double> vals;
    vals.reserve(rows.size() * n_features());
    std::vector<Label> labs;
    labs.reserve(rows.size());
    for (auto r : rows) {
      if (r >= n_samples()) throw InvalidArgument("row index out of range");
      auto src = row(r);
      vals.insert(vals.end(), src.begin(), src.end());
      labs.push_back(labels_[r]);
    }
    return Dataset(names_, std::move(vals), std::move(labs));
  }

  /// Same rows and features with the label vector replaced.
  Dataset with_labels(std::vector<Label> labels) const {
    return Dataset(names_, values_, std::move(labels));
  }

 private:
  void validate() const {
    if (values_.size() != names_.size() * labels_.size())
      throw DataError("value matrix size " + std::to_string(values_.size()) +
                      " does not match " + std::to_string(labels_.size()) + " x " +
                      std::to_string(names_.size()));
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
      if (n.empty()) throw DataError("empty feature name");
      if (!seen.insert(n).second) throw DataError("duplicate feature name '" + n + "'");
    }
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!std::isfinite(values_[i]))
        throw DataError("non-finite value at sample " + std::to_string(i / names_.size()) +
                        ", feature '" + names_[i % names_.size()] + "'");
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] > 1)
        throw DataError("label at sample " + std::to_string(i) + " is not 0/1");
  }

  std::vector<std::string> names_;
  std::vector<double> values_;
  std::vector<Label> labels_;
};

/// Integer-coded columns (feature-major) with declared arities; the input
/// to every information-theoretic estimate.
class DiscreteDataset {
 public:
  DiscreteDataset() = default;

  DiscreteDataset(std::vector<std::vector<Code>> columns, std::vector<Code> arities,
                  std::vector<Code> labels, Code label_arity)
      : columns_(std::move(columns)),
        arities_(std::move(arities)),
        labels_(std::move(labels)),
        label_arity_(label_arity) {
    if (columns_.size() != arities_.size())
      throw DataError("column count and arity count differ");
    if (label_arity_ == 0) throw DataError("label arity must be positive");
    for (auto l : labels_)
      if (l >= label_arity_) throw DataError("label code exceeds label arity");
    for (std::size_t f = 0; f < columns_.size(); ++f) {
      if (arities_[f] == 0) throw DataError("arity must be positive");
      if (columns_[f].size() != labels_.size())
        throw DataError("column " + std::to_string(f) + " length differs from label count");
      for (auto c : columns_[f])
        if (c >= arities_[f])
          throw DataError("code " + std::to_string(c) + " in column " + std::to_string(f) +
                          " exceeds arity " + std::to_string(arities_[f]));
    }
  }

  /// Infers arities as 1 + max code present.
  static DiscreteDataset from_codes(std::vector<std::vector<Code>> columns,
                                    std::vector<Code> labels) {
    std::vector<Code> arities;
    arities.reserve(columns.size());
    for (const auto& c : columns) arities.push_back(max_plus_one(c));
    Code la = max_plus_one(labels);
    return DiscreteDataset(std::move(columns), std::move(arities), std::move(labels), la);
  }

  std::size_t n_samples() const { return labels_.size(); }
  std::size_t n_features() const { return columns_.size(); }
  std::span<const Code> column(std::size_t f) const { return columns_[f]; }
  Code arity(std::size_t f) const { return arities_[f]; }
  std::span<const Code> labels() const { return labels_; }
  Code label_arity() const { return label_arity_; }
  const std::vector<Code>& arities() const { return arities_; }

 private:
  static Code max_plus_one(std::span<const Code> c) {
    Code m = 0;
    for (auto v : c) m = v > m ? v : m;
    return c.empty() ? 1 : m + 1;
  }

  std::vector<std::vector<Code>> columns_;
  std::vector<Code> arities_;
  std::vector<Code> labels_;
  Code label_arity_ = 1;
};

/// One program's API-call trace.
struct TraceDocument {
  std::string sample_id;
  std::vector<std::string> calls;
  Label label = 0;

  bool operator==(const TraceDocument&) const = default;
};

/// Cross-validation split plan.
struct FoldPlan {
  struct Fold {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    bool operator==(const Fold&) const = default;
  };
  std::vector<Fold> folds;
  std::size_t k = 0;
  std::uint64_t seed = 0;

  bool operator==(const FoldPlan&) const = default;
};

}  // namespace miselect
