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

#include "ttdfair/ttd.hpp"

#include <cmath>
#include <map>

#include "ttdfair/errors.hpp"

namespace ttdfair {

std::vector<ConditionTTDRow> condition_ttd_table(const CohortHistories& cohort,
                                                 std::size_t min_support) {
  if (min_support < 1) throw ArgumentError("min_support must be >= 1");

  struct Acc {
    std::size_t n_a = 0, n_b = 0;
    std::int64_t sum_a = 0, sum_b = 0;
  };
  // Ordered map keeps the output table sorted by condition code.
  std::map<std::string, Acc> acc;
  for (const auto& history : cohort.histories) {
    for (const auto& [code, offset] : history.observations) {
      int ttd = cohort.lookback_days - offset;
      Acc& a = acc[code];
      if (history.member.group == Group::A) {
        ++a.n_a;
        a.sum_a += ttd;
      } else {
        ++a.n_b;
        a.sum_b += ttd;
      }
    }
  }

  std::vector<ConditionTTDRow> table;
  for (const auto& [code, a] : acc) {
    if (a.n_a < min_support || a.n_b < min_support) continue;
    ConditionTTDRow row;
    row.condition_code = code;
    row.n_a = a.n_a;
    row.n_b = a.n_b;
    row.mean_ttd_a = static_cast<double>(a.sum_a) / static_cast<double>(a.n_a);
    row.mean_ttd_b = static_cast<double>(a.sum_b) / static_cast<double>(a.n_b);
    row.diff = row.mean_ttd_b - row.mean_ttd_a;
    table.push_back(std::move(row));
  }
  return table;
}

DisparitySummary disparity_summary(std::span<const ConditionTTDRow> table) {
  if (table.empty()) {
    throw ValidationError("disparity_summary: empty condition table");
  }
  DisparitySummary s;
  s.n_conditions = table.size();
  std::size_t n_later = 0, n_over = 0;
  double abs_sum = 0.0;
  for (const auto& row : table) {
    if (row.diff > 0.0) ++n_later;
    double a = std::fabs(row.diff);
    abs_sum += a;
    if (a >= kLargeDiffDays) ++n_over;
  }
  double n = static_cast<double>(table.size());
  s.frac_b_later = static_cast<double>(n_later) / n;
  s.mean_abs_diff = abs_sum / n;
  s.frac_over_100d = static_cast<double>(n_over) / n;
  return s;
}

CrossPhenotypeSummary cross_phenotype_summary(
    std::span<const std::pair<std::string, DisparitySummary>> per_phenotype) {
  if (per_phenotype.empty()) {
    throw ArgumentError("cross_phenotype_summary: need at least one phenotype");
  }
  CrossPhenotypeSummary out;
  out.n_phenotypes = per_phenotype.size();

  double u_later = 0.0, u_abs = 0.0, u_over = 0.0;
  double w_later = 0.0, w_abs = 0.0, w_over = 0.0;
  double total_weight = 0.0;
  for (const auto& [_, s] : per_phenotype) {
    out.total_conditions += s.n_conditions;
    u_later += s.frac_b_later;
    u_abs += s.mean_abs_diff;
    u_over += s.frac_over_100d;
    double w = static_cast<double>(s.n_conditions);
    total_weight += w;
    w_later += w * s.frac_b_later;
    w_abs += w * s.mean_abs_diff;
    w_over += w * s.frac_over_100d;
  }
  double n = static_cast<double>(per_phenotype.size());
  out.unweighted.n_conditions = out.total_conditions;
  out.unweighted.frac_b_later = u_later / n;
  out.unweighted.mean_abs_diff = u_abs / n;
  out.unweighted.frac_over_100d = u_over / n;

  out.weighted.n_conditions = out.total_conditions;
  if (total_weight > 0.0) {
    out.weighted.frac_b_later = w_later / total_weight;
    out.weighted.mean_abs_diff = w_abs / total_weight;
    out.weighted.frac_over_100d = w_over / total_weight;
  }
  return out;
}

}  // namespace ttdfair
