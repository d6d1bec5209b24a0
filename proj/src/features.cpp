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

#include "ttdfair/features.hpp"

#include <algorithm>
#include <ostream>

#include "ttdfair/errors.hpp"

namespace ttdfair {

WindowSpec WindowSpec::make(int horizon_days, int window_days) {
  if (window_days < 1) throw ArgumentError("window size must be >= 1 day");
  if (horizon_days < 1) throw ArgumentError("horizon must be >= 1 day");
  WindowSpec spec;
  spec.horizon_days = horizon_days;
  spec.window_days = window_days;
  spec.n_windows = (horizon_days + window_days - 1) / window_days;
  return spec;
}

int WindowSpec::cutoff_day(int i) const {
  if (i < 1 || i > n_windows) {
    throw ArgumentError("window index " + std::to_string(i) +
                        " out of range [1, " + std::to_string(n_windows) + "]");
  }
  return std::min(i * window_days, horizon_days);
}

CensoredFeatureMatrix CensoredFeatureMatrix::build(
    std::span<const PatientHistory> rows,
    std::span<const std::string> vocabulary, int cutoff_day,
    int window_index) {
  CensoredFeatureMatrix m;
  m.n_cols_ = vocabulary.size();
  m.window_index_ = window_index;
  m.row_ptr_.reserve(rows.size() + 1);
  for (const auto& history : rows) {
    // observations iterate in code order, so column indices come out sorted.
    for (const auto& [code, offset] : history.observations) {
      if (offset > cutoff_day) continue;
      auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), code);
      if (it == vocabulary.end() || *it != code) {
        throw ArgumentError("condition code '" + code +
                            "' missing from vocabulary");
      }
      m.col_idx_.push_back(
          static_cast<std::uint32_t>(it - vocabulary.begin()));
    }
    m.row_ptr_.push_back(m.col_idx_.size());
  }
  return m;
}

CensoredFeatureMatrix CensoredFeatureMatrix::from_rows(
    std::size_t n_cols, std::vector<std::vector<std::uint32_t>> rows) {
  CensoredFeatureMatrix m;
  m.n_cols_ = n_cols;
  for (auto& cols : rows) {
    std::sort(cols.begin(), cols.end());
    for (std::uint32_t c : cols) {
      if (c >= n_cols) throw ArgumentError("column index out of range");
      m.col_idx_.push_back(c);
    }
    m.row_ptr_.push_back(m.col_idx_.size());
  }
  return m;
}

bool CensoredFeatureMatrix::at(std::size_t r, std::size_t c) const {
  auto cols = row(r);
  return std::binary_search(cols.begin(), cols.end(),
                            static_cast<std::uint32_t>(c));
}

CensoredFeatureMatrix censored_matrix(const CohortHistories& cohort,
                                      const WindowSpec& spec, int i) {
  if (spec.horizon_days != cohort.lookback_days) {
    throw ArgumentError("window horizon does not match cohort lookback");
  }
  return CensoredFeatureMatrix::build(cohort.histories, cohort.vocabulary,
                                      spec.cutoff_day(i), i);
}

CensoredFeatureMatrix full_matrix(const CohortHistories& cohort) {
  WindowSpec spec = WindowSpec::make(cohort.lookback_days,
                                     cohort.lookback_days);
  return censored_matrix(cohort, spec, 1);
}

void dump_matrix(const CensoredFeatureMatrix& matrix, std::ostream& out) {
  out << "row,col,value\n";
  for (std::size_t r = 0; r < matrix.n_rows(); ++r) {
    for (std::uint32_t c : matrix.row(r)) {
      out << r << ',' << c << ",1\n";
    }
  }
}

}  // namespace ttdfair
