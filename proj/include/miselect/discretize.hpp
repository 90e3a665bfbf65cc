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

// Per-column binning of continuous features into integer codes.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

#include "miselect/dataset.hpp"
#include "miselect/error.hpp"

namespace miselect {

enum class BinStrategy { equal_frequency, equal_width };

inline BinStrategy parse_bin_strategy(std::string_view s) {
  if (s == "equal_frequency") return BinStrategy::equal_frequency;
  if (s == "equal_width") return BinStrategy::equal_width;
  throw InvalidArgument("unknown binning strategy '" + std::string(s) + "'");
}

namespace discretize_detail {

// Renumbers the used bins to 0..m-1 preserving order; returns m.
inline Code compact(std::vector<Code>& codes, Code bins) {
  std::vector<Code> remap(bins, 0);
  std::vector<bool> used(bins, false);
  for (auto c : codes) used[c] = true;
  Code next = 0;
  for (Code b = 0; b < bins; ++b)
    if (used[b]) remap[b] = next++;
  for (auto& c : codes) c = remap[c];
  return next == 0 ? 1 : next;
}

}  // namespace discretize_detail

/// Bins one column. Equal-frequency places edges at empirical quantiles; a run
/// of equal values always lands in the bin of its lowest rank. Returns the
/// codes and writes the (compacted) arity.
inline std::vector<Code> discretize_column(std::span<const double> values, std::size_t bins,
                                           BinStrategy strategy, Code& arity) {
  if (bins < 2) throw InvalidArgument("discretize: bins must be >= 2");
  const std::size_t n = values.size();
  std::vector<Code> codes(n, 0);
  arity = 1;
  if (n == 0) return codes;
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  if (lo == hi) return codes;

  if (strategy == BinStrategy::equal_frequency) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::size_t r = 0;
    while (r < n) {
      std::size_t end = r;
      while (end < n && values[order[end]] == values[order[r]]) ++end;
      auto bin = static_cast<Code>(r * bins / n);
      for (std::size_t j = r; j < end; ++j) codes[order[j]] = bin;
      r = end;
    }
  } else {
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i < n; ++i) {
      auto b = static_cast<std::size_t>(std::floor((values[i] - lo) / width));
      codes[i] = static_cast<Code>(std::min(b, bins - 1));
    }
  }
  arity = discretize_detail::compact(codes, static_cast<Code>(bins));
  return codes;
}

/// Bins every column independently; labels become codes with arity 2.
inline DiscreteDataset discretize(const Dataset& ds, std::size_t bins = 5,
                                  BinStrategy strategy = BinStrategy::equal_frequency) {
  if (bins < 2) throw InvalidArgument("discretize: bins must be >= 2");
  std::vector<std::vector<Code>> columns;
  std::vector<Code> arities;
  columns.reserve(ds.n_features());
  arities.reserve(ds.n_features());
  for (std::size_t f = 0; f < ds.n_features(); ++f) {
    Code a = 1;
    auto col = ds.column(f);
    columns.push_back(discretize_column(col, bins, strategy, a));
    arities.push_back(a);
  }
  std::vector<Code> labels(ds.labels().begin(), ds.labels().end());
  return DiscreteDataset(std::move(columns), std::move(arities), std::move(labels), 2);
}

}  // namespace miselect
