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

// Brute-force reference computations used by the unit and acceptance tests.
// Nothing here calls into the library's estimators.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Column = std::vector<int>;

inline std::set<int> support(const Column& x) { return {x.begin(), x.end()}; }

inline double entropy(const Column& x) {
  const double n = static_cast<double>(x.size());
  double h = 0.0;
  for (int v : support(x)) {
    double c = 0;
    for (int u : x) c += (u == v);
    const double p = c / n;
    h -= p * std::log2(p);
  }
  return h;
}

/// Direct double sum over every (x, y) pair of the support.
inline double mi(const Column& x, const Column& y) {
  const double n = static_cast<double>(x.size());
  double total = 0.0;
  for (int a : support(x))
    for (int b : support(y)) {
      double cxy = 0, cx = 0, cy = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        cxy += (x[i] == a && y[i] == b);
        cx += (x[i] == a);
        cy += (y[i] == b);
      }
      if (cxy == 0) continue;
      const double pxy = cxy / n, px = cx / n, py = cy / n;
      total += pxy * std::log2(pxy / (px * py));
    }
  return total;
}

/// sum_z p(z) * I(X;Y | Z = z), each slice by explicit filtering.
inline double cmi(const Column& x, const Column& y, const Column& z) {
  const double n = static_cast<double>(x.size());
  double total = 0.0;
  for (int c : support(z)) {
    Column xs, ys;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i] == c) {
        xs.push_back(x[i]);
        ys.push_back(y[i]);
      }
    total += static_cast<double>(xs.size()) / n * mi(xs, ys);
  }
  return total;
}

/// H(X | Z) = sum_z p(z) H(X | Z = z).
inline double conditional_entropy(const Column& x, const Column& z) {
  const double n = static_cast<double>(x.size());
  double total = 0.0;
  for (int c : support(z)) {
    Column xs;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (z[i] == c) xs.push_back(x[i]);
    total += static_cast<double>(xs.size()) / n * entropy(xs);
  }
  return total;
}

/// Pairs two columns into one variable by enumerating distinct pairs.
inline Column pair_up(const Column& a, const Column& b) {
  std::map<std::pair<int, int>, int> ids;
  Column out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [it, _] = ids.emplace(std::make_pair(a[i], b[i]), static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  return out;
}

inline double joint_pair_mi(const Column& x, const Column& s, const Column& y) {
  return mi(pair_up(x, s), y);
}

/// I(X;Y|Z) via the chain rule H(X|Z) - H(X|Y,Z).
inline double cmi_chain_rule(const Column& x, const Column& y, const Column& z) {
  return conditional_entropy(x, z) - conditional_entropy(x, pair_up(y, z));
}

inline Column random_column(std::mt19937_64& rng, std::size_t n, int arity) {
  std::uniform_int_distribution<int> d(0, arity - 1);
  Column c(n);
  for (auto& v : c) v = d(rng);
  return c;
}

enum class Crit { emifs, mm_emifs, mm_emifs_beta, mifs, mrmr, jmi, jmim };

/// Term-by-term criterion value, recomputing every information term.
inline double score(Crit m, const std::vector<Column>& features, const Column& cls,
                    const std::vector<std::size_t>& selected, std::size_t cand,
                    double beta_fixed = 0.5) {
  const Column& x = features[cand];
  const double rel = mi(x, cls);
  if (selected.empty()) return rel;
  const double k = static_cast<double>(selected.size());
  const double nf = static_cast<double>(features.size());
  double sum_mi = 0, sum_cmi = 0;
  double min_mi = std::numeric_limits<double>::infinity();
  double min_ccmi = min_mi, min_joint = min_mi;
  for (auto s : selected) {
    const Column& sc = features[s];
    const double m = mi(x, sc);
    sum_mi += m;
    sum_cmi += cmi(x, sc, cls);
    min_mi = std::min(min_mi, m);
    min_ccmi = std::min(min_ccmi, cmi(cls, x, sc));
    min_joint = std::min(min_joint, joint_pair_mi(x, sc, cls));
  }
  switch (m) {
    case Crit::emifs: return rel - (k / nf) * sum_mi;
    case Crit::mifs: return rel - beta_fixed * sum_mi;
    case Crit::mrmr: return rel - sum_mi / k;
    case Crit::jmi: return rel - sum_mi / k + sum_cmi / k;
    case Crit::mm_emifs: return min_ccmi;
    case Crit::mm_emifs_beta: return rel - (k / nf) * min_mi;
    case Crit::jmim: return min_joint;
  }
  return 0.0;
}

/// Lowest-index candidate whose score is within `tol` of the best.
inline std::size_t argmax(const std::vector<std::pair<std::size_t, double>>& scored,
                          double tol = 1e-12) {
  double best = -std::numeric_limits<double>::infinity();
  for (auto& [_, s] : scored) best = std::max(best, s);
  for (auto& [f, s] : scored)
    if (s >= best - tol) return f;
  return scored.front().first;
}

// Student t density and tail by adaptive Simpson quadrature.

inline double t_pdf(double x, double df) {
  const double c = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) - 0.5 * std::log(df * M_PI);
  return std::exp(c - (df + 1) / 2 * std::log1p(x * x / df));
}

inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6 * (fa + 4 * fm + fb);
}

template <typename F>
double adaptive(F& f, double a, double b, double fa, double fm, double fb, double whole, double eps,
                int depth) {
  const double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm), right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15 * eps)
    return left + right + (left + right - whole) / 15;
  return adaptive(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
         adaptive(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

/// P(T >= t) = 1/2 - integral_0^t pdf (t >= 0), mirrored for t < 0.
inline double t_upper_tail(double t, double df) {
  auto f = [df](double x) { return t_pdf(x, df); };
  const double a = 0, b = std::fabs(t);
  if (b == 0) return 0.5;
  const double fa = f(a), fb = f(b), fm = f((a + b) / 2);
  const double integral = adaptive(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 1e-15, 60);
  return t >= 0 ? 0.5 - integral : 0.5 + integral;
}

/// Closed-form paired t statistic.
inline double paired_t(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double mean = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mean += a[i] - b[i];
  mean /= n;
  double var = 0;
  for (std::size_t i = 0; i < a.size(); ++i) var += std::pow(a[i] - b[i] - mean, 2);
  var /= n - 1;
  return mean / std::sqrt(var / n);
}

}  // namespace oracle
