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

// Small binary classifiers used to score selected feature subsets:
// k-nearest neighbours, logistic regression, CART decision tree and random
// forest. Classifiers see the continuous feature values.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "miselect/dataset.hpp"
#include "miselect/error.hpp"

namespace miselect {

enum class ModelKind { logistic, tree, forest, knn };

struct KnnParams {
  std::size_t k = 5;
};

struct LogisticParams {
  double learning_rate = 0.1;
  std::size_t epochs = 500;
  double l2 = 1e-4;
};

struct TreeParams {
  std::size_t max_depth = 10;
  std::size_t min_split = 2;
};

struct ForestParams {
  std::size_t n_trees = 100;
  std::size_t features_per_split = 0;  // 0 = floor(sqrt(n_features)), at least 1
  bool bootstrap = true;
  std::uint64_t seed = 1;
  TreeParams tree;
};

struct ModelSpec {
  ModelKind kind = ModelKind::forest;
  KnnParams knn;
  LogisticParams logistic;
  TreeParams tree;
  ForestParams forest;

  static ModelSpec of(ModelKind kind) {
    ModelSpec s;
    s.kind = kind;
    return s;
  }

  void validate() const {
    auto positive = [](std::size_t v, const char* what) {
      if (v == 0) throw InvalidArgument(std::string(what) + " must be positive");
    };
    positive(knn.k, "knn k");
    positive(logistic.epochs, "logistic epochs");
    if (!(logistic.learning_rate > 0.0)) throw InvalidArgument("learning rate must be positive");
    if (!(logistic.l2 >= 0.0)) throw InvalidArgument("l2 must be non-negative");
    positive(tree.max_depth, "tree max depth");
    positive(tree.min_split, "tree min split");
    positive(forest.n_trees, "forest tree count");
    positive(forest.tree.max_depth, "forest max depth");
    positive(forest.tree.min_split, "forest min split");
  }
};

/// Column names as printed in accuracy tables.
inline std::string_view model_display_name(ModelKind k) {
  switch (k) {
    case ModelKind::logistic: return "LR";
    case ModelKind::tree: return "DT";
    case ModelKind::forest: return "RF";
    case ModelKind::knn: return "KNN";
  }
  return "?";
}

inline std::string_view model_cli_name(ModelKind k) {
  switch (k) {
    case ModelKind::logistic: return "lr";
    case ModelKind::tree: return "dt";
    case ModelKind::forest: return "rf";
    case ModelKind::knn: return "knn";
  }
  return "?";
}

inline ModelKind parse_model_kind(std::string_view s) {
  for (auto k : {ModelKind::logistic, ModelKind::tree, ModelKind::forest, ModelKind::knn})
    if (s == model_cli_name(k) || s == model_display_name(k)) return k;
  if (s == "logistic") return ModelKind::logistic;
  if (s == "tree") return ModelKind::tree;
  if (s == "forest") return ModelKind::forest;
  throw InvalidArgument("unknown classifier '" + std::string(s) + "'");
}

/// Dense column-major copy of selected rows/features.
class FeatureMatrix {
 public:
  FeatureMatrix(const Dataset& ds, std::span<const std::size_t> rows,
                std::span<const std::size_t> features)
      : n_(rows.size()), d_(features.size()), cols_(features.size() * rows.size()) {
    for (std::size_t j = 0; j < d_; ++j) {
      if (features[j] >= ds.n_features())
        throw InvalidArgument("feature id " + std::to_string(features[j]) + " out of range");
      for (std::size_t i = 0; i < n_; ++i) cols_[j * n_ + i] = ds.at(rows[i], features[j]);
    }
  }

  std::size_t rows() const { return n_; }
  std::size_t cols() const { return d_; }
  double at(std::size_t i, std::size_t j) const { return cols_[j * n_ + i]; }
  std::span<const double> column(std::size_t j) const { return {cols_.data() + j * n_, n_}; }

 private:
  std::size_t n_, d_;
  std::vector<double> cols_;
};

class KnnModel {
 public:
  KnnModel(const FeatureMatrix& x, std::vector<Label> y, KnnParams p)
      : x_(x), y_(std::move(y)), p_(p) {}

  std::vector<Label> predict(const FeatureMatrix& q) const {
    const std::size_t k = std::min(p_.k, x_.rows());
    std::vector<Label> out(q.rows());
    std::vector<std::pair<double, std::size_t>> dist(x_.rows());
    for (std::size_t i = 0; i < q.rows(); ++i) {
      for (std::size_t t = 0; t < x_.rows(); ++t) dist[t] = {0.0, t};
      for (std::size_t j = 0; j < x_.cols(); ++j) {
        auto col = x_.column(j);
        const double v = q.at(i, j);
        for (std::size_t t = 0; t < x_.rows(); ++t) {
          const double diff = col[t] - v;
          dist[t].first += diff * diff;
        }
      }
      std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1), dist.end());
      std::size_t ones = 0;
      for (std::size_t t = 0; t < k; ++t) ones += y_[dist[t].second];
      out[i] = ones * 2 > k ? 1 : 0;
    }
    return out;
  }

 private:
  FeatureMatrix x_;
  std::vector<Label> y_;
  KnnParams p_;
};

/// Full-batch gradient descent on standardized features with L2 penalty.
class LogisticModel {
 public:
  LogisticModel(const FeatureMatrix& x, std::span<const Label> y, LogisticParams p) {
    const std::size_t n = x.rows(), d = x.cols();
    mean_.assign(d, 0.0);
    scale_.assign(d, 1.0);
    for (std::size_t j = 0; j < d; ++j) {
      auto col = x.column(j);
      double m = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(n);
      double var = 0.0;
      for (double v : col) var += (v - m) * (v - m);
      var /= static_cast<double>(n);
      mean_[j] = m;
      scale_[j] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    std::vector<double> z(n * d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < n; ++i) z[j * n + i] = (x.at(i, j) - mean_[j]) / scale_[j];

    weights_.assign(d, 0.0);
    bias_ = 0.0;
    std::vector<double> residual(n), grad(d);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t epoch = 0; epoch < p.epochs; ++epoch) {
      std::fill(residual.begin(), residual.end(), bias_);
      for (std::size_t j = 0; j < d; ++j) {
        const double w = weights_[j];
        const double* col = z.data() + j * n;
        for (std::size_t i = 0; i < n; ++i) residual[i] += w * col[i];
      }
      double gb = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        residual[i] = 1.0 / (1.0 + std::exp(-residual[i])) - static_cast<double>(y[i]);
        gb += residual[i];
      }
      for (std::size_t j = 0; j < d; ++j) {
        const double* col = z.data() + j * n;
        double g = 0.0;
        for (std::size_t i = 0; i < n; ++i) g += residual[i] * col[i];
        grad[j] = g * inv_n + p.l2 * weights_[j];
      }
      for (std::size_t j = 0; j < d; ++j) weights_[j] -= p.learning_rate * grad[j];
      bias_ -= p.learning_rate * gb * inv_n;
    }
  }

  /// Linear score in standardized space; positive means class 1.
  double decision(const FeatureMatrix& q, std::size_t i) const {
    double s = bias_;
    for (std::size_t j = 0; j < weights_.size(); ++j)
      s += weights_[j] * (q.at(i, j) - mean_[j]) / scale_[j];
    return s;
  }

  std::vector<Label> predict(const FeatureMatrix& q) const {
    std::vector<Label> out(q.rows());
    for (std::size_t i = 0; i < q.rows(); ++i) out[i] = decision(q, i) > 0.0 ? 1 : 0;
    return out;
  }

  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }

 private:
  std::vector<double> mean_, scale_, weights_;
  double bias_ = 0.0;
};

/// CART tree with Gini impurity. With `features_per_split` below the feature
/// count, each node draws that many candidate features from `rng`; otherwise
/// all features are scanned in index order.
class TreeModel {
 public:
  TreeModel(const FeatureMatrix& x, std::span<const Label> y, std::vector<std::size_t> rows,
            TreeParams p, std::size_t features_per_split = 0, std::mt19937_64* rng = nullptr)
      : p_(p),
        mtry_(features_per_split == 0 ? x.cols() : std::min(features_per_split, x.cols())),
        rng_(rng) {
    if (mtry_ < x.cols() && rng_ == nullptr)
      throw InvalidArgument("tree: feature subsampling needs a random generator");
    feature_pool_.resize(x.cols());
    std::iota(feature_pool_.begin(), feature_pool_.end(), std::size_t{0});
    build(x, y, rows, 0);
  }

  Label predict_row(const FeatureMatrix& q, std::size_t i) const {
    std::size_t n = 0;
    while (nodes_[n].feature >= 0)
      n = q.at(i, static_cast<std::size_t>(nodes_[n].feature)) <= nodes_[n].threshold
              ? nodes_[n].left
              : nodes_[n].right;
    return nodes_[n].prediction;
  }

  std::vector<Label> predict(const FeatureMatrix& q) const {
    std::vector<Label> out(q.rows());
    for (std::size_t i = 0; i < q.rows(); ++i) out[i] = predict_row(q, i);
    return out;
  }

  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    int feature = -1;
    double threshold = 0.0;
    std::size_t left = 0, right = 0;
    Label prediction = 0;
  };

  static double weighted_gini(double pos, double n) {
    if (n == 0.0) return 0.0;
    return 2.0 * pos * (n - pos) / n;
  }

  std::size_t build(const FeatureMatrix& x, std::span<const Label> y,
                    std::vector<std::size_t>& rows, std::size_t depth) {
    const std::size_t id = nodes_.size();
    nodes_.emplace_back();
    std::size_t pos = 0;
    for (auto r : rows) pos += y[r];
    const std::size_t n = rows.size();
    nodes_[id].prediction = pos * 2 > n ? 1 : 0;
    if (pos == 0 || pos == n || depth >= p_.max_depth || n < p_.min_split) return id;

    const double parent = weighted_gini(double(pos), double(n));
    double best_imp = parent - 1e-12;
    int best_feature = -1;
    double best_threshold = 0.0;

    std::size_t m = x.cols();
    if (mtry_ < x.cols()) {
      for (std::size_t j = 0; j < mtry_; ++j) {
        std::uniform_int_distribution<std::size_t> pick(j, x.cols() - 1);
        std::swap(feature_pool_[j], feature_pool_[pick(*rng_)]);
      }
      m = mtry_;
    }
    for (std::size_t jj = 0; jj < m; ++jj) {
      const std::size_t f = mtry_ < x.cols() ? feature_pool_[jj] : jj;
      auto col = x.column(f);
      scratch_.resize(n);
      for (std::size_t i = 0; i < n; ++i) scratch_[i] = {col[rows[i]], y[rows[i]]};
      std::sort(scratch_.begin(), scratch_.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      if (scratch_.front().first == scratch_.back().first) continue;
      double left_pos = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_pos += scratch_[i].second;
        if (scratch_[i].first == scratch_[i + 1].first) continue;
        const double nl = double(i + 1), nr = double(n - i - 1);
        const double imp =
            weighted_gini(left_pos, nl) + weighted_gini(double(pos) - left_pos, nr);
        if (imp < best_imp) {
          best_imp = imp;
          best_feature = static_cast<int>(f);
          best_threshold = 0.5 * (scratch_[i].first + scratch_[i + 1].first);
        }
      }
    }
    if (best_feature < 0) return id;

    std::vector<std::size_t> left, right;
    auto col = x.column(static_cast<std::size_t>(best_feature));
    for (auto r : rows) (col[r] <= best_threshold ? left : right).push_back(r);
    if (left.empty() || right.empty()) return id;
    rows.clear();
    rows.shrink_to_fit();
    nodes_[id].feature = best_feature;
    nodes_[id].threshold = best_threshold;
    const std::size_t l = build(x, y, left, depth + 1);
    const std::size_t r = build(x, y, right, depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  TreeParams p_;
  std::size_t mtry_;
  std::mt19937_64* rng_;
  std::vector<std::size_t> feature_pool_;
  std::vector<std::pair<double, Label>> scratch_;
  std::vector<Node> nodes_;
};

class ForestModel {
 public:
  ForestModel(const FeatureMatrix& x, std::span<const Label> y, const ForestParams& p) {
    std::mt19937_64 rng(p.seed);
    std::size_t mtry = p.features_per_split;
    if (mtry == 0)
      mtry = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(double(x.cols()))));
    const std::size_t n = x.rows();
    trees_.reserve(p.n_trees);
    for (std::size_t t = 0; t < p.n_trees; ++t) {
      std::vector<std::size_t> rows(n);
      if (p.bootstrap) {
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (auto& r : rows) r = pick(rng);
      } else {
        std::iota(rows.begin(), rows.end(), std::size_t{0});
      }
      trees_.emplace_back(x, y, std::move(rows), p.tree, mtry, &rng);
    }
  }

  std::vector<Label> predict(const FeatureMatrix& q) const {
    std::vector<Label> out(q.rows());
    for (std::size_t i = 0; i < q.rows(); ++i) {
      std::size_t votes = 0;
      for (const auto& t : trees_) votes += t.predict_row(q, i);
      out[i] = votes * 2 > trees_.size() ? 1 : 0;
    }
    return out;
  }

 private:
  std::vector<TreeModel> trees_;
};

/// Trains on `train_rows` and predicts `test_rows`, both using only the
/// feature columns in `features`. A single-class training set predicts that
/// class everywhere.
inline std::vector<Label> train_predict(const ModelSpec& spec, const Dataset& ds,
                                        std::span<const std::size_t> train_rows,
                                        std::span<const std::size_t> test_rows,
                                        std::span<const std::size_t> features) {
  spec.validate();
  if (features.empty()) throw InvalidArgument("train_predict: empty feature subset");
  if (train_rows.empty()) throw InvalidArgument("train_predict: empty training set");
  std::vector<Label> y;
  y.reserve(train_rows.size());
  for (auto r : train_rows) {
    if (r >= ds.n_samples()) throw InvalidArgument("train_predict: row out of range");
    y.push_back(ds.labels()[r]);
  }
  FeatureMatrix xtest(ds, test_rows, features);
  const std::size_t ones = static_cast<std::size_t>(std::count(y.begin(), y.end(), Label{1}));
  if (ones == 0 || ones == y.size()) return std::vector<Label>(test_rows.size(), y.front());

  FeatureMatrix xtrain(ds, train_rows, features);
  switch (spec.kind) {
    case ModelKind::knn: return KnnModel(xtrain, std::move(y), spec.knn).predict(xtest);
    case ModelKind::logistic: return LogisticModel(xtrain, y, spec.logistic).predict(xtest);
    case ModelKind::tree: {
      std::vector<std::size_t> rows(y.size());
      std::iota(rows.begin(), rows.end(), std::size_t{0});
      return TreeModel(xtrain, y, std::move(rows), spec.tree).predict(xtest);
    }
    case ModelKind::forest: return ForestModel(xtrain, y, spec.forest).predict(xtest);
  }
  return {};
}

/// Convenience form over two separate datasets sharing a feature space.
inline std::vector<Label> train_predict(const ModelSpec& spec, const Dataset& train,
                                        const Dataset& test, std::span<const std::size_t> features) {
  if (train.feature_names() != test.feature_names())
    throw InvalidArgument("train_predict: train and test feature spaces differ");
  std::vector<std::size_t> tr(train.n_samples()), te(test.n_samples());
  std::iota(tr.begin(), tr.end(), std::size_t{0});
  std::iota(te.begin(), te.end(), std::size_t{0});
  if (tr.empty()) throw InvalidArgument("train_predict: empty training set");
  if (features.empty()) throw InvalidArgument("train_predict: empty feature subset");
  // Stack both so row ids index one matrix.
  std::vector<double> vals(train.values());
  vals.insert(vals.end(), test.values().begin(), test.values().end());
  std::vector<Label> labs(train.labels());
  labs.insert(labs.end(), test.labels().begin(), test.labels().end());
  Dataset joint(train.feature_names(), std::move(vals), std::move(labs));
  for (auto& t : te) t += train.n_samples();
  return train_predict(spec, joint, tr, te, features);
}

struct ConfusionCounts {
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;

  std::size_t total() const { return tp + tn + fp + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    tn += o.tn;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const ConfusionCounts&) const = default;
};

inline ConfusionCounts confusion(std::span<const Label> predicted, std::span<const Label> actual) {
  if (predicted.size() != actual.size())
    throw InvalidArgument("confusion: predicted and actual lengths differ");
  ConfusionCounts c;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const auto p = predicted[i], a = actual[i];
    if (p > 1 || a > 1) throw InvalidArgument("confusion: non-binary label at " + std::to_string(i));
    if (p == 1 && a == 1) ++c.tp;
    else if (p == 0 && a == 0) ++c.tn;
    else if (p == 1) ++c.fp;
    else ++c.fn;
  }
  return c;
}

/// (tp + tn) / (tp + tn + fp + fn).
inline double accuracy(const ConfusionCounts& c) {
  if (c.total() == 0) throw InvalidArgument("accuracy: no evaluated samples");
  return static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
}

}  // namespace miselect
