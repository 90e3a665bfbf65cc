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

// Generates a small synthetic corpus, vectorizes it and compares EMIFS with
// the plain relevance ranking.

#include <cstdio>
#include <string>

#include "miselect.hpp"

int main(int argc, char** argv) {
  using namespace miselect;
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 7;

  SynthConfig cfg;
  cfg.n_ransomware = 300;
  cfg.n_benign = 300;
  auto corpus = synth_corpus(cfg, seed);
  auto ds = tfidf_vectorize(corpus.documents);
  auto discrete = discretize(ds, 5);

  SelectorConfig sel;
  sel.method = Method::emifs;
  sel.tau = 5;
  auto res = greedy_select(discrete, sel);

  auto kind = [&](const std::string& name) {
    if (corpus.informative.count(name)) return "informative";
    if (corpus.redundant_of.count(name)) return "redundant";
    if (corpus.noise.count(name)) return "noise";
    return "background";
  };

  std::printf("%zu traces, %zu features\n\nemifs:\n", ds.n_samples(), ds.n_features());
  for (std::size_t i = 0; i < res.order.size(); ++i) {
    const auto& name = ds.feature_names()[res.order[i]];
    std::printf("  %-8s %-12s J=%.4f\n", name.c_str(), kind(name), res.scores[i]);
  }
  std::printf("\nrelevance only:\n");
  for (auto f : rank_by_relevance(discrete, 5)) {
    const auto& name = ds.feature_names()[f];
    std::printf("  %-8s %s\n", name.c_str(), kind(name));
  }
  return 0;
}
