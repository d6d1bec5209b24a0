/*
 * Copyright 2026 The ttdfair Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ttdfair/csv.hpp"

#include <charconv>

#include "ttdfair/errors.hpp"

namespace ttdfair {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::vector<CsvRow> read_csv(std::istream& in,
                             const std::string& expected_header,
                             std::size_t n_fields) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("empty input, expected header '" + expected_header + "'",
                     1);
  }
  strip_cr(line);
  if (line != expected_header) {
    throw ParseError("bad header '" + line + "', expected '" +
                         expected_header + "'",
                     1);
  }

  std::vector<CsvRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;  // tolerate blank trailing lines
    CsvRow row{lineno, split_fields(line)};
    if (row.fields.size() != n_fields) {
      throw ParseError("expected " + std::to_string(n_fields) +
                           " fields, got " + std::to_string(row.fields.size()),
                       lineno);
    }
    for (const auto& f : row.fields) {
      if (f.empty()) throw ParseError("missing field", lineno);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace ttdfair
