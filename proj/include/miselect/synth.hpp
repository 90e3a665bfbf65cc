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

// Synthetic API-call trace corpus with a known informative token set.
//
// Token roles:
//   informative  present in a fixed fraction of each class's traces
//                (p_ransomware vs p_benign)
//   redundant    emitted exactly alongside a designated informative token
//                (same presence and multiplicity in every trace)
//   noise        present in the same fraction (p_noise) of both classes
//   background   filler drawn uniformly until the trace reaches its length
//
// Presence is assigned by exact count: a token with probability p is placed
// in round(p * n_class) traces of that class, chosen uniformly at random.
// Token names sort as background < informative < noise < redundant.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "miselect/dataset.hpp"
#include "miselect/error.hpp"

namespace miselect {

struct SynthConfig {
  std::size_t n_ransomware = 1000;
  std::size_t n_benign = 1000;
  std::size_t vocabulary_size = 200;
  std::size_t n_informative = 5;
  std::size_t n_redundant = 5;
  std::size_t n_noise = 10;
  double p_ransomware = 0.8;
  double p_benign = 0.1;
  double p_noise = 0.5;
  std::size_t min_length = 20;
  std::size_t max_length = 200;
  std::size_t max_repeat = 3;
};

struct SynthCorpus {
  std::vector<TraceDocument> documents;
  std::set<std::string> informative;
  std::map<std::string, std::string> redundant_of;  // twin -> informative partner
  std::set<std::string> noise;
};

namespace synth_detail {

inline std::string token(const char* prefix, std::size_t i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, i);
  return buf;
}

inline void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidArgument(std::string("synth: ") + what + " must lie in [0,1]");
}

}  // namespace synth_detail

inline SynthCorpus synth_corpus(const SynthConfig& cfg, std::uint64_t seed) {
  using synth_detail::token;
  const std::size_t special = cfg.n_informative + cfg.n_redundant + cfg.n_noise;
  if (cfg.vocabulary_size < special)
    throw InvalidArgument("synth: vocabulary size " + std::to_string(cfg.vocabulary_size) +
                          " is smaller than informative+redundant+noise = " +
                          std::to_string(special));
  if (cfg.n_redundant > 0 && cfg.n_informative == 0)
    throw InvalidArgument("synth: redundant tokens need at least one informative token");
  if (cfg.n_ransomware + cfg.n_benign == 0) throw InvalidArgument("synth: no traces requested");
  if (cfg.min_length < 1 || cfg.min_length > cfg.max_length)
    throw InvalidArgument("synth: need 1 <= min_length <= max_length");
  if (cfg.max_repeat < 1) throw InvalidArgument("synth: max_repeat must be >= 1");
  synth_detail::check_probability(cfg.p_ransomware, "p_ransomware");
  synth_detail::check_probability(cfg.p_benign, "p_benign");
  synth_detail::check_probability(cfg.p_noise, "p_noise");

  SynthCorpus out;
  std::vector<std::string> informative, redundant, noise, background;
  for (std::size_t i = 0; i < cfg.n_informative; ++i) informative.push_back(token("Inf", i, 2));
  for (std::size_t i = 0; i < cfg.n_redundant; ++i) {
    redundant.push_back(token("Red", i, 2));
    out.redundant_of[redundant.back()] = informative[i % cfg.n_informative];
  }
  for (std::size_t i = 0; i < cfg.n_noise; ++i) noise.push_back(token("Noise", i, 2));
  for (std::size_t i = 0; i < cfg.vocabulary_size - special; ++i)
    background.push_back(token("Bg", i, 3));
  out.informative.insert(informative.begin(), informative.end());
  out.noise.insert(noise.begin(), noise.end());

  std::mt19937_64 rng(seed);
  const std::size_t n_docs = cfg.n_ransomware + cfg.n_benign;
  auto class_of = [&](std::size_t d) -> Label { return d < cfg.n_ransomware ? 1 : 0; };

  // presence[t][d] for informative (t < n_inf) then noise tokens.
  auto assign = [&](double p_r, double p_b) {
    std::vector<bool> present(n_docs, false);
    auto place = [&](std::size_t first, std::size_t count, double p) {
      std::vector<std::size_t> idx(count);
      for (std::size_t i = 0; i < count; ++i) idx[i] = first + i;
      std::shuffle(idx.begin(), idx.end(), rng);
      auto take = static_cast<std::size_t>(std::llround(p * static_cast<double>(count)));
      for (std::size_t i = 0; i < take; ++i) present[idx[i]] = true;
    };
    place(0, cfg.n_ransomware, p_r);
    place(cfg.n_ransomware, cfg.n_benign, p_b);
    return present;
  };
  std::vector<std::vector<bool>> inf_present, noise_present;
  for (std::size_t i = 0; i < cfg.n_informative; ++i)
    inf_present.push_back(assign(cfg.p_ransomware, cfg.p_benign));
  for (std::size_t i = 0; i < cfg.n_noise; ++i)
    noise_present.push_back(assign(cfg.p_noise, cfg.p_noise));

  std::uniform_int_distribution<std::size_t> repeat(1, cfg.max_repeat);
  std::uniform_int_distribution<std::size_t> length(cfg.min_length, cfg.max_length);
  out.documents.reserve(n_docs);
  for (std::size_t d = 0; d < n_docs; ++d) {
    TraceDocument doc;
    doc.label = class_of(d);
    doc.sample_id = token(doc.label ? "ransom_" : "benign_",
                          doc.label ? d : d - cfg.n_ransomware, 5);
    std::vector<std::size_t> inf_count(cfg.n_informative, 0);
    for (std::size_t i = 0; i < cfg.n_informative; ++i) {
      if (!inf_present[i][d]) continue;
      inf_count[i] = repeat(rng);
      doc.calls.insert(doc.calls.end(), inf_count[i], informative[i]);
    }
    for (std::size_t r = 0; r < cfg.n_redundant; ++r)
      doc.calls.insert(doc.calls.end(), inf_count[r % cfg.n_informative], redundant[r]);
    for (std::size_t i = 0; i < cfg.n_noise; ++i)
      if (noise_present[i][d]) doc.calls.insert(doc.calls.end(), repeat(rng), noise[i]);
    const std::size_t target = length(rng);
    if (!background.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, background.size() - 1);
      while (doc.calls.size() < target) doc.calls.push_back(background[pick(rng)]);
    } else if (doc.calls.empty()) {
      doc.calls.push_back("Filler");
    }
    std::shuffle(doc.calls.begin(), doc.calls.end(), rng);
    out.documents.push_back(std::move(doc));
  }
  return out;
}

}  // namespace miselect
