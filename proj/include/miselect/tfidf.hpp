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

// TF-IDF weighting of API-call traces.
//
//   tf(t, d)  = count(t, d) / |d|
//   idf(t)    = ln((1 + N) / (1 + df(t))) + 1
//   w(t, d)   = tf(t, d) * idf(t)
//
// Vocabulary = tokens with df >= min_df, in lexicographic order.

#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "miselect/dataset.hpp"
#include "miselect/error.hpp"

namespace miselect {

struct TfidfVocabulary {
  std::vector<std::string> tokens;
  std::vector<std::size_t> document_frequency;
  std::vector<double> idf;
  std::size_t n_documents = 0;
};

inline TfidfVocabulary fit_tfidf(const std::vector<TraceDocument>& corpus, std::size_t min_df) {
  if (corpus.empty()) throw InvalidArgument("tfidf: corpus is empty");
  if (min_df < 1) throw InvalidArgument("tfidf: min_df must be >= 1");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : corpus) {
    std::map<std::string_view, bool> seen;
    for (const auto& c : doc.calls) seen.emplace(c, true);
    for (const auto& [tok, _] : seen) ++df[std::string(tok)];
  }
  TfidfVocabulary vocab;
  vocab.n_documents = corpus.size();
  const double n = static_cast<double>(corpus.size());
  for (const auto& [tok, count] : df) {
    if (count < min_df) continue;
    vocab.tokens.push_back(tok);
    vocab.document_frequency.push_back(count);
    vocab.idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  if (vocab.tokens.empty())
    throw DataError("tfidf: vocabulary is empty after min_df=" + std::to_string(min_df) +
                    " filtering");
  return vocab;
}

inline std::vector<double> tfidf_row(const TfidfVocabulary& vocab, const TraceDocument& doc) {
  std::unordered_map<std::string_view, std::size_t> index;
  index.reserve(vocab.tokens.size());
  for (std::size_t i = 0; i < vocab.tokens.size(); ++i) index.emplace(vocab.tokens[i], i);
  std::vector<std::size_t> counts(vocab.tokens.size(), 0);
  for (const auto& c : doc.calls) {
    auto it = index.find(c);
    if (it != index.end()) ++counts[it->second];
  }
  std::vector<double> row(vocab.tokens.size(), 0.0);
  if (doc.calls.empty()) return row;
  const double len = static_cast<double>(doc.calls.size());
  for (std::size_t i = 0; i < row.size(); ++i)
    if (counts[i] != 0) row[i] = static_cast<double>(counts[i]) / len * vocab.idf[i];
  return row;
}

/// One row per document, one feature per retained token.
inline Dataset tfidf_vectorize(const std::vector<TraceDocument>& corpus, std::size_t min_df = 2) {
  auto vocab = fit_tfidf(corpus, min_df);
  std::vector<double> values;
  values.reserve(corpus.size() * vocab.tokens.size());
  std::vector<Label> labels;
  labels.reserve(corpus.size());
  for (const auto& doc : corpus) {
    auto r = tfidf_row(vocab, doc);
    values.insert(values.end(), r.begin(), r.end());
    labels.push_back(doc.label);
  }
  return Dataset(vocab.tokens, std::move(values), std::move(labels));
}

}  // namespace miselect
