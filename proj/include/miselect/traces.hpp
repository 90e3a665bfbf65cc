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

// API-call trace corpus: reading and writing trace directories.
//
// Layout on disk: one file per sample, one call token per line (blank lines
// ignored), file stem = sample id. A manifest CSV with columns
// `filename,label` lists the labeled traces.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "miselect/csv.hpp"
#include "miselect/dataset.hpp"
#include "miselect/error.hpp"

namespace miselect {

inline std::vector<std::string> read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file '" + path.filename().string() + "'");
  std::vector<std::string> calls;
  std::string line;
  while (std::getline(in, line)) {
    auto t = csv_detail::trim(line);
    if (!t.empty()) calls.emplace_back(t);
  }
  return calls;
}

/// Reads every trace listed in the manifest, in manifest order. Files present
/// in the directory but absent from the manifest are skipped and reported
/// through `warnings` when provided.
inline std::vector<TraceDocument> ingest_traces(const std::filesystem::path& trace_dir,
                                                const std::filesystem::path& manifest,
                                                std::vector<std::string>* warnings = nullptr) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(trace_dir))
    throw IoError("trace directory '" + trace_dir.string() + "' does not exist");
  std::ifstream in(manifest);
  if (!in) throw IoError("cannot open manifest '" + manifest.string() + "'");

  std::vector<TraceDocument> docs;
  std::set<std::string> listed;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = csv_detail::trim(line);
    if (t.empty()) continue;
    auto fields = csv_detail::split_fields(t);
    if (fields.size() != 2)
      throw DataError("manifest line " + std::to_string(line_no) + ": expected filename,label");
    auto name = std::string(csv_detail::trim(fields[0]));
    auto label = csv_detail::trim(fields[1]);
    if (line_no == 1 && name == "filename" && label == "label") continue;
    if (label != "0" && label != "1")
      throw DataError("manifest line " + std::to_string(line_no) + ": label '" +
                      std::string(label) + "' is not 0 or 1");
    auto path = trace_dir / name;
    if (!fs::is_regular_file(path))
      throw IoError("manifest line " + std::to_string(line_no) + ": trace file '" + name +
                    "' not found");
    TraceDocument doc;
    doc.sample_id = fs::path(name).stem().string();
    doc.calls = read_trace_file(path);
    doc.label = label == "1" ? 1 : 0;
    if (doc.calls.empty()) throw DataError("trace file '" + name + "' is empty");
    if (!ids.insert(doc.sample_id).second)
      throw DataError("duplicate sample id '" + doc.sample_id + "' in manifest");
    listed.insert(name);
    docs.push_back(std::move(doc));
  }

  std::vector<std::string> unlabeled;
  for (const auto& entry : fs::directory_iterator(trace_dir)) {
    if (!entry.is_regular_file()) continue;
    if (fs::exists(manifest) && fs::equivalent(entry.path(), manifest)) continue;
    auto name = entry.path().filename().string();
    if (!listed.contains(name)) unlabeled.push_back(name);
  }
  std::sort(unlabeled.begin(), unlabeled.end());
  if (warnings)
    for (const auto& n : unlabeled)
      warnings->push_back("unlabeled trace file '" + n + "' skipped");
  return docs;
}

/// Writes `<dir>/<sample_id>.trace` per document plus `<dir>/manifest.csv`.
inline void write_trace_corpus(const std::filesystem::path& dir,
                               const std::vector<TraceDocument>& docs) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ofstream manifest(dir / "manifest.csv");
  if (!manifest) throw IoError("cannot write manifest in '" + dir.string() + "'");
  manifest << "filename,label\n";
  for (const auto& d : docs) {
    auto name = d.sample_id + ".trace";
    std::ofstream out(dir / name);
    if (!out) throw IoError("cannot write trace '" + name + "'");
    for (const auto& c : d.calls) out << c << '\n';
    manifest << name << ',' << int(d.label) << '\n';
  }
}

}  // namespace miselect
