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

#ifndef TTDFAIR_FEATURES_HPP
#define TTDFAIR_FEATURES_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ttdfair/types.hpp"

namespace ttdfair {

/// Right-censoring window layout: n_windows = ceil(horizon_days / window_days),
/// so (n_windows - 1) * window_days < horizon_days <= n_windows * window_days.
struct WindowSpec {
  int horizon_days;
  int window_days;
  int n_windows;

  static WindowSpec make(int horizon_days, int window_days);

  /// Inclusive offset cutoff of window i (1-based); the last window clamps
  /// to horizon_days.
  int cutoff_day(int i) const;
};

/// Immutable binary N x C matrix in CSR form (sorted column indices, all
/// stored entries are 1). Row order matches the source cohort; column order
/// matches the vocabulary.
class CensoredFeatureMatrix {
 public:
  /// Rows in given order, columns from the sorted vocabulary; entry (p, s)
  /// is 1 iff patient p shows code s at an offset <= cutoff_day.
  static CensoredFeatureMatrix build(std::span<const PatientHistory> rows,
                                     std::span<const std::string> vocabulary,
                                     int cutoff_day, int window_index);

  /// Explicit construction from per-row sorted column lists.
  static CensoredFeatureMatrix from_rows(
      std::size_t n_cols, std::vector<std::vector<std::uint32_t>> rows);

  std::size_t n_rows() const { return row_ptr_.size() - 1; }
  std::size_t n_cols() const { return n_cols_; }
  int window_index() const { return window_index_; }
  std::size_t nnz() const { return col_idx_.size(); }

  std::span<const std::uint32_t> row(std::size_t r) const {
    return {col_idx_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }

  bool at(std::size_t r, std::size_t c) const;

  /// Structural equality: shape and entries. window_index is provenance
  /// metadata and does not participate, so the uncensored matrix compares
  /// equal to the last window of any spec.
  bool operator==(const CensoredFeatureMatrix& other) const {
    return n_cols_ == other.n_cols_ && row_ptr_ == other.row_ptr_ &&
           col_idx_ == other.col_idx_;
  }

 private:
  CensoredFeatureMatrix() = default;

  std::size_t n_cols_ = 0;
  int window_index_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::uint32_t> col_idx_;
};

/// Test window T_i, 1 <= i <= spec.n_windows. The last window equals the
/// uncensored matrix.
CensoredFeatureMatrix censored_matrix(const CohortHistories& cohort,
                                      const WindowSpec& spec, int i);

/// Uncensored one-hot matrix (equals censored_matrix at i = n_windows);
/// this is what the fully knowledgeable classifier trains on.
CensoredFeatureMatrix full_matrix(const CohortHistories& cohort);

/// Debug dump: `row,col,1` triplets, one per stored entry, in row-major
/// order. Pair with a sidecar JSON of row/column labels.
void dump_matrix(const CensoredFeatureMatrix& matrix, std::ostream& out);

}  // namespace ttdfair

#endif  // TTDFAIR_FEATURES_HPP
