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

// Paired Student t-test with tail probabilities from the regularized
// incomplete beta function (continued fraction, modified Lentz).

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>

#include "miselect/error.hpp"

namespace miselect {

enum class Tails { one, two };

inline std::string_view tails_name(Tails t) { return t == Tails::one ? "one" : "two"; }

inline Tails parse_tails(std::string_view s) {
  if (s == "one" || s == "1") return Tails::one;
  if (s == "two" || s == "2") return Tails::two;
  throw InvalidArgument("tails must be 'one' or 'two', got '" + std::string(s) + "'");
}

namespace stats_detail {

inline double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  return h;
}

}  // namespace stats_detail

/// I_x(a, b) for a, b > 0 and x in [0, 1].
inline double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("incomplete beta needs x in [0,1]");
  if (x == 0.0 || x == 1.0) return x;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * stats_detail::beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * stats_detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
inline double student_t_two_sided(double t, double df) {
  if (!(df > 0.0)) throw InvalidArgument("degrees of freedom must be positive");
  if (std::isinf(t)) return 0.0;
  return regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

/// P(T >= t).
inline double student_t_upper(double t, double df) {
  const double two = student_t_two_sided(t, df);
  return t >= 0.0 ? 0.5 * two : 1.0 - 0.5 * two;
}

struct TTestResult {
  double t_value = 0.0;
  double p_value = 1.0;
  std::size_t degrees_of_freedom = 0;
  bool significant = false;
  Tails tails = Tails::one;
  bool degenerate = false;
  double alpha = 0.05;
};

/// Paired t-test on d = a - b. One-tailed tests H1: mean(d) > 0.
///
/// Zero spread in d is degenerate: p = 1 when mean(d) is zero, otherwise
/// p = 0 and t = +-inf. Degenerate results are never marked significant.
inline TTestResult paired_ttest(std::span<const double> a, std::span<const double> b,
                                double alpha = 0.05, Tails tails = Tails::one) {
  if (a.size() != b.size()) throw InvalidArgument("paired_ttest: vectors differ in length");
  if (a.size() < 2) throw InvalidArgument("paired_ttest: need at least 2 pairs");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("paired_ttest: alpha must be in (0,1)");
  const std::size_t n = a.size();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dev = (a[i] - b[i]) - mean;
    ss += dev * dev;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  TTestResult r;
  r.degrees_of_freedom = n - 1;
  r.tails = tails;
  r.alpha = alpha;
  if (sd <= 1e-12 * (1.0 + std::fabs(mean))) {
    r.degenerate = true;
    if (std::fabs(mean) <= 1e-12) {
      r.t_value = 0.0;
      r.p_value = 1.0;
    } else {
      r.t_value = std::copysign(std::numeric_limits<double>::infinity(), mean);
      r.p_value = 0.0;
    }
    r.significant = false;
    return r;
  }
  r.t_value = mean / (sd / std::sqrt(static_cast<double>(n)));
  const double df = static_cast<double>(r.degrees_of_freedom);
  r.p_value = tails == Tails::one ? student_t_upper(r.t_value, df)
                                  : student_t_two_sided(r.t_value, df);
  r.significant = r.p_value < alpha;
  return r;
}

}  // namespace miselect
