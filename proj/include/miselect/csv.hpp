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

// Numeric CSV ingestion and export for Dataset.

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "miselect/dataset.hpp"
#include "miselect/error.hpp"

namespace miselect {

namespace csv_detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::string location(std::size_t line, std::string_view column) {
  return "line " + std::to_string(line) + ", column '" + std::string(column) + "'";
}

}  // namespace csv_detail

/// Parses a header-first numeric CSV. The label column must hold 0/1 only;
/// it is removed from the features. Row order is preserved.
inline Dataset parse_csv(std::istream& in, std::string_view label_column) {
  using namespace csv_detail;
  std::string line;
  if (!std::getline(in, line)) throw DataError("missing header row");
  std::vector<std::string> header;
  for (auto h : split_fields(trim(line))) header.emplace_back(trim(h));
  std::vector<std::string> names;
  std::unordered_set<std::string> seen;
  std::size_t label_idx = header.size();
  for (std::size_t c = 0; c < header.size(); ++c) {
    auto h = trim(header[c]);
    if (h.empty()) throw DataError("empty header name at column " + std::to_string(c + 1));
    if (!seen.emplace(h).second) throw DataError("duplicate header name '" + std::string(h) + "'");
    if (h == label_column)
      label_idx = c;
    else
      names.emplace_back(h);
  }
  if (label_idx == header.size())
    throw DataError("label column '" + std::string(label_column) + "' not found in header");

  std::vector<double> values;
  std::vector<Label> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty()) continue;
    auto fields = split_fields(t);
    if (fields.size() != header.size())
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(header.size()) + " fields, found " +
                      std::to_string(fields.size()));
    for (std::size_t c = 0; c < fields.size(); ++c) {
      auto cell = trim(fields[c]);
      if (c == label_idx) {
        if (cell == "0")
          labels.push_back(0);
        else if (cell == "1")
          labels.push_back(1);
        else
          throw DataError(location(line_no, header[c]) + ": label '" + std::string(cell) +
                          "' is not 0 or 1");
        continue;
      }
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty())
        throw DataError(location(line_no, header[c]) + ": non-numeric cell '" +
                        std::string(cell) + "'");
      if (!std::isfinite(v))
        throw DataError(location(line_no, header[c]) + ": non-finite value");
      values.push_back(v);
    }
  }
  return Dataset(std::move(names), std::move(values), std::move(labels));
}

inline Dataset load_csv(const std::filesystem::path& path, std::string_view label_column) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    return parse_csv(in, label_column);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

/// Shortest round-trip decimal rendering of a double.
inline std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline void write_csv(std::ostream& out, const Dataset& ds, std::string_view label_column) {
  for (const auto& n : ds.feature_names()) out << n << ',';
  out << label_column << '\n';
  for (std::size_t i = 0; i < ds.n_samples(); ++i) {
    for (double v : ds.row(i)) out << format_number(v) << ',';
    out << int(ds.labels()[i]) << '\n';
  }
}

inline void save_csv(const std::filesystem::path& path, const Dataset& ds,
                     std::string_view label_column) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  write_csv(out, ds, label_column);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace miselect
