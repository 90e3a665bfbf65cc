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

// Plug-in (empirical frequency) estimators of entropy, mutual information and
// conditional mutual information over discrete columns.
//
// All estimators build a contingency table, turn every non-empty cell into a
// term of the form  c * ln(ratio)  in extended precision, sort the terms and
// add them pairwise. Sorting makes the result independent of argument order
// and of any bijective relabeling of the codes. Zero cells contribute nothing.

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include "miselect/dataset.hpp"
#include "miselect/error.hpp"

namespace miselect {

enum class LogBase { bits, nats };

template <typename R>
concept CodeRange = std::ranges::contiguous_range<R> && std::ranges::sized_range<R> &&
                    std::integral<std::ranges::range_value_t<R>>;

/// Joint counts of one to three discrete variables, row-major over the axes.
class ContingencyTable {
 public:
  ContingencyTable() = default;

  explicit ContingencyTable(std::vector<Code> arities) : arities_(std::move(arities)) {
    if (arities_.empty() || arities_.size() > 3)
      throw InvalidArgument("contingency table supports 1 to 3 axes");
    std::size_t cells = 1;
    for (auto a : arities_) {
      if (a == 0) throw InvalidArgument("contingency table arity must be positive");
      cells *= a;
    }
    counts_.assign(cells, 0);
  }

  template <std::integral T>
  static ContingencyTable tabulate(std::span<const T> x, Code ax) {
    ContingencyTable t({ax});
    for (auto v : x) t.counts_[check(v, ax)] += 1;
    t.total_ = x.size();
    return t;
  }

  template <std::integral T, std::integral U>
  static ContingencyTable tabulate(std::span<const T> x, Code ax, std::span<const U> y, Code ay) {
    same_length(x.size(), y.size());
    ContingencyTable t({ax, ay});
    for (std::size_t i = 0; i < x.size(); ++i)
      t.counts_[std::size_t(check(x[i], ax)) * ay + check(y[i], ay)] += 1;
    t.total_ = x.size();
    return t;
  }

  template <std::integral T, std::integral U, std::integral V>
  static ContingencyTable tabulate(std::span<const T> x, Code ax, std::span<const U> y, Code ay,
                                   std::span<const V> z, Code az) {
    same_length(x.size(), y.size());
    same_length(x.size(), z.size());
    ContingencyTable t({ax, ay, az});
    for (std::size_t i = 0; i < x.size(); ++i)
      t.counts_[(std::size_t(check(x[i], ax)) * ay + check(y[i], ay)) * az + check(z[i], az)] += 1;
    t.total_ = x.size();
    return t;
  }

  std::size_t axes() const { return arities_.size(); }
  const std::vector<Code>& arities() const { return arities_; }
  std::uint64_t total() const { return total_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  std::uint64_t at(Code i) const { return counts_[i]; }
  std::uint64_t at(Code i, Code j) const { return counts_[std::size_t(i) * arities_[1] + j]; }
  std::uint64_t at(Code i, Code j, Code k) const {
    return counts_[(std::size_t(i) * arities_[1] + j) * arities_[2] + k];
  }

  /// Counts of a single axis, summing out the others.
  std::vector<std::uint64_t> marginal(std::size_t axis) const {
    if (axis >= axes()) throw InvalidArgument("marginal axis out of range");
    std::vector<std::uint64_t> out(arities_[axis], 0);
    std::size_t inner = 1;
    for (std::size_t a = axis + 1; a < axes(); ++a) inner *= arities_[a];
    for (std::size_t c = 0; c < counts_.size(); ++c) out[(c / inner) % arities_[axis]] += counts_[c];
    return out;
  }

  /// Sums out one axis of a 2- or 3-axis table.
  ContingencyTable sum_out(std::size_t axis) const {
    if (axes() < 2 || axis >= axes()) throw InvalidArgument("sum_out axis out of range");
    std::vector<Code> keep;
    for (std::size_t a = 0; a < axes(); ++a)
      if (a != axis) keep.push_back(arities_[a]);
    ContingencyTable out(keep);
    out.total_ = total_;
    std::vector<std::size_t> stride(axes(), 1);
    for (std::size_t a = axes() - 1; a > 0; --a) stride[a - 1] = stride[a] * arities_[a];
    for (std::size_t c = 0; c < counts_.size(); ++c) {
      std::size_t dst = 0;
      for (std::size_t a = 0; a < axes(); ++a) {
        if (a == axis) continue;
        dst = dst * arities_[a] + (c / stride[a]) % arities_[a];
      }
      out.counts_[dst] += counts_[c];
    }
    return out;
  }

 private:
  template <std::integral T>
  static Code check(T v, Code arity) {
    if constexpr (std::signed_integral<T>)
      if (v < 0) throw InvalidArgument("negative code " + std::to_string(v));
    if (static_cast<std::uint64_t>(v) >= arity)
      throw InvalidArgument("code " + std::to_string(v) + " exceeds arity " + std::to_string(arity));
    return static_cast<Code>(v);
  }
  static void same_length(std::size_t a, std::size_t b) {
    if (a != b)
      throw InvalidArgument("column length mismatch (" + std::to_string(a) + " vs " +
                            std::to_string(b) + ")");
  }

  std::vector<Code> arities_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

namespace info_detail {

inline long double pairwise_sum(const long double* v, std::size_t n) {
  if (n <= 8) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

// Sum of c*ln(ratio) terms divided by the sample count, in the requested unit.
inline double finish(std::vector<long double>& terms, std::uint64_t total, LogBase base) {
  std::sort(terms.begin(), terms.end());
  long double s = pairwise_sum(terms.data(), terms.size()) / static_cast<long double>(total);
  if (base == LogBase::bits) s /= std::numbers::ln2_v<long double>;
  return s > 0.0L ? static_cast<double>(s) : 0.0;
}

template <std::integral T>
Code arity_of(std::span<const T> x) {
  std::uint64_t m = 0;
  for (auto v : x) {
    if constexpr (std::signed_integral<T>)
      if (v < 0) throw InvalidArgument("negative code " + std::to_string(v));
    m = std::max<std::uint64_t>(m, static_cast<std::uint64_t>(v));
  }
  if (m >= (1u << 24)) throw InvalidArgument("codes must be dense non-negative integers");
  return static_cast<Code>(m + 1);
}

template <CodeRange R>
auto as_span(const R& r) {
  return std::span<const std::ranges::range_value_t<R>>(std::ranges::data(r), std::ranges::size(r));
}

inline void require_nonempty(std::size_t n) {
  if (n == 0) throw InvalidArgument("empty column");
}

}  // namespace info_detail

/// H(X) from a one-axis table.
inline double entropy(const ContingencyTable& t, LogBase base = LogBase::bits) {
  info_detail::require_nonempty(t.total());
  const long double n = static_cast<long double>(t.total());
  std::vector<long double> terms;
  for (auto c : t.marginal(0))
    if (c != 0) terms.push_back(static_cast<long double>(c) * std::log(n / static_cast<long double>(c)));
  return info_detail::finish(terms, t.total(), base);
}

/// I(X;Y) from a two-axis table.
inline double mutual_information(const ContingencyTable& t, LogBase base = LogBase::bits) {
  if (t.axes() != 2) throw InvalidArgument("mutual information needs a 2-axis table");
  info_detail::require_nonempty(t.total());
  const auto px = t.marginal(0), py = t.marginal(1);
  const long double n = static_cast<long double>(t.total());
  std::vector<long double> terms;
  const Code ax = t.arities()[0], ay = t.arities()[1];
  for (Code i = 0; i < ax; ++i)
    for (Code j = 0; j < ay; ++j) {
      auto c = t.at(i, j);
      if (c == 0) continue;
      long double lc = static_cast<long double>(c);
      long double ratio = (lc * n) / (static_cast<long double>(px[i]) * static_cast<long double>(py[j]));
      terms.push_back(lc * std::log(ratio));
    }
  return info_detail::finish(terms, t.total(), base);
}

/// I(X;Y|Z) from a three-axis table (axes ordered x, y, z).
inline double conditional_mutual_information(const ContingencyTable& t,
                                             LogBase base = LogBase::bits) {
  if (t.axes() != 3) throw InvalidArgument("conditional mutual information needs a 3-axis table");
  info_detail::require_nonempty(t.total());
  const auto xz = t.sum_out(1), yz = t.sum_out(0);
  const auto pz = t.marginal(2);
  const Code ax = t.arities()[0], ay = t.arities()[1], az = t.arities()[2];
  std::vector<long double> terms;
  for (Code i = 0; i < ax; ++i)
    for (Code j = 0; j < ay; ++j)
      for (Code k = 0; k < az; ++k) {
        auto c = t.at(i, j, k);
        if (c == 0) continue;
        long double lc = static_cast<long double>(c);
        long double ratio = (lc * static_cast<long double>(pz[k])) /
                            (static_cast<long double>(xz.at(i, k)) * static_cast<long double>(yz.at(j, k)));
        terms.push_back(lc * std::log(ratio));
      }
  return info_detail::finish(terms, t.total(), base);
}

// Column-level estimators with explicit arities (the hot path for selection).

template <std::integral T>
double entropy(std::span<const T> x, Code ax, LogBase base = LogBase::bits) {
  info_detail::require_nonempty(x.size());
  return entropy(ContingencyTable::tabulate(x, ax), base);
}

template <std::integral T, std::integral U>
double mutual_information(std::span<const T> x, Code ax, std::span<const U> y, Code ay,
                          LogBase base = LogBase::bits) {
  info_detail::require_nonempty(x.size());
  return mutual_information(ContingencyTable::tabulate(x, ax, y, ay), base);
}

template <std::integral T, std::integral U, std::integral V>
double conditional_mutual_information(std::span<const T> x, Code ax, std::span<const U> y, Code ay,
                                      std::span<const V> z, Code az,
                                      LogBase base = LogBase::bits) {
  info_detail::require_nonempty(x.size());
  return conditional_mutual_information(ContingencyTable::tabulate(x, ax, y, ay, z, az), base);
}

/// I((X,S);Y) with (X,S) encoded as the product variable x * arity(s) + s.
template <std::integral T, std::integral U, std::integral V>
double joint_pair_mi(std::span<const T> x, Code ax, std::span<const U> s, Code as,
                     std::span<const V> y, Code ay, LogBase base = LogBase::bits) {
  if (x.size() != s.size() || x.size() != y.size())
    throw InvalidArgument("column length mismatch in joint_pair_mi");
  info_detail::require_nonempty(x.size());
  std::vector<Code> joint(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (static_cast<std::uint64_t>(x[i]) >= ax || static_cast<std::uint64_t>(s[i]) >= as)
      throw InvalidArgument("code exceeds arity in joint_pair_mi");
    joint[i] = static_cast<Code>(x[i]) * as + static_cast<Code>(s[i]);
  }
  return mutual_information(std::span<const Code>(joint), ax * as, y, ay, base);
}

// Convenience overloads over arbitrary contiguous integer ranges; arities are
// inferred as 1 + max code.

template <CodeRange X>
double entropy(const X& x, LogBase base = LogBase::bits) {
  auto sx = info_detail::as_span(x);
  info_detail::require_nonempty(sx.size());
  return entropy(sx, info_detail::arity_of(sx), base);
}

template <CodeRange X, CodeRange Y>
double mutual_information(const X& x, const Y& y, LogBase base = LogBase::bits) {
  auto sx = info_detail::as_span(x);
  auto sy = info_detail::as_span(y);
  if (sx.size() != sy.size()) throw InvalidArgument("column length mismatch in mutual_information");
  info_detail::require_nonempty(sx.size());
  return mutual_information(sx, info_detail::arity_of(sx), sy, info_detail::arity_of(sy), base);
}

template <CodeRange X, CodeRange Y, CodeRange Z>
double conditional_mutual_information(const X& x, const Y& y, const Z& z,
                                      LogBase base = LogBase::bits) {
  auto sx = info_detail::as_span(x);
  auto sy = info_detail::as_span(y);
  auto sz = info_detail::as_span(z);
  if (sx.size() != sy.size() || sx.size() != sz.size())
    throw InvalidArgument("column length mismatch in conditional_mutual_information");
  info_detail::require_nonempty(sx.size());
  return conditional_mutual_information(sx, info_detail::arity_of(sx), sy,
                                        info_detail::arity_of(sy), sz, info_detail::arity_of(sz),
                                        base);
}

template <CodeRange X, CodeRange S, CodeRange Y>
double joint_pair_mi(const X& x, const S& s, const Y& y, LogBase base = LogBase::bits) {
  auto sx = info_detail::as_span(x);
  auto ss = info_detail::as_span(s);
  auto sy = info_detail::as_span(y);
  if (sx.size() != ss.size() || sx.size() != sy.size())
    throw InvalidArgument("column length mismatch in joint_pair_mi");
  info_detail::require_nonempty(sx.size());
  return joint_pair_mi(sx, info_detail::arity_of(sx), ss, info_detail::arity_of(ss), sy,
                       info_detail::arity_of(sy), base);
}

}  // namespace miselect
