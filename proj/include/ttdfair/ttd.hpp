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

#ifndef TTDFAIR_TTD_HPP
#define TTDFAIR_TTD_HPP

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ttdfair/types.hpp"

namespace ttdfair {

/// Per-condition mean time to diagnosis for each group. diff is
/// mean_ttd_b - mean_ttd_a (women minus men); positive means group B was
/// diagnosed later after the same presentation.
struct ConditionTTDRow {
  std::string condition_code;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double mean_ttd_a = 0.0;
  double mean_ttd_b = 0.0;
  double diff = 0.0;
};

struct DisparitySummary {
  std::size_t n_conditions = 0;
  double frac_b_later = 0.0;    // fraction of rows with diff > 0; ties count as not-later
  double mean_abs_diff = 0.0;   // days
  double frac_over_100d = 0.0;  // fraction with |diff| >= 100 days
};

constexpr std::size_t kDefaultMinSupport = 10;
constexpr double kLargeDiffDays = 100.0;

/// One row per condition carried by at least min_support patients of EACH
/// group. A patient-condition TTD is lookback_days - day_offset; means are
/// arithmetic. Empty result when nothing qualifies.
std::vector<ConditionTTDRow> condition_ttd_table(
    const CohortHistories& cohort, std::size_t min_support = kDefaultMinSupport);

/// Aggregates a non-empty table. Throws ValidationError on empty input.
DisparitySummary disparity_summary(std::span<const ConditionTTDRow> table);

/// Cross-phenotype aggregation, both ways the per-phenotype summaries can be
/// pooled: an unweighted mean over phenotypes and a condition-count-weighted
/// mean.
struct CrossPhenotypeSummary {
  std::size_t n_phenotypes = 0;
  std::size_t total_conditions = 0;
  DisparitySummary unweighted;
  DisparitySummary weighted;
};

CrossPhenotypeSummary cross_phenotype_summary(
    std::span<const std::pair<std::string, DisparitySummary>> per_phenotype);

}  // namespace ttdfair

#endif  // TTDFAIR_TTD_HPP
