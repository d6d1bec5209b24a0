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

#ifndef TTDFAIR_CSV_HPP
#define TTDFAIR_CSV_HPP

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace ttdfair {

// Minimal CSV support for the two fixed input schemas: comma-separated,
// UTF-8, no quoting (ids and codes must not contain commas or newlines).

struct CsvRow {
  std::size_t line;  // 1-based, header is line 1
  std::vector<std::string> fields;
};

/// Reads all data rows, enforcing the exact expected header and a fixed
/// field count per row. Tolerates CRLF line endings and a trailing newline.
/// Throws ParseError naming the offending line.
std::vector<CsvRow> read_csv(std::istream& in,
                             const std::string& expected_header,
                             std::size_t n_fields);

/// Shortest decimal form that round-trips to the same double. Used for all
/// numeric CSV output so files are byte-stable across runs.
std::string format_double(double v);

}  // namespace ttdfair

#endif  // TTDFAIR_CSV_HPP
