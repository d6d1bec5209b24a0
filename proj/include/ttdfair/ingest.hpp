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

#ifndef TTDFAIR_INGEST_HPP
#define TTDFAIR_INGEST_HPP

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "ttdfair/types.hpp"

namespace ttdfair {

/// Parses `patient_id,condition_code,occurred_on` rows (ISO-8601 dates).
/// Row order is preserved. Throws ParseError naming the line on malformed
/// dates or missing fields.
std::vector<ConditionEvent> parse_condition_events(std::istream& in);

/// Parses `patient_id,group,age_at_index,index_date` rows with group coded
/// M/F. Rejects duplicate patient ids, unknown group codes, and members
/// younger than the minimum enrollment age of 13.
std::vector<CohortMember> parse_cohort_file(std::istream& in);

constexpr int kMinEnrollmentAge = 13;
constexpr int kDefaultLookbackDays = 1095;

struct IngestOptions {
  std::string phenotype_id;
  int lookback_days = kDefaultLookbackDays;
  // Offsets equal to lookback_days are events recorded on the diagnosis day
  // itself; drop them when false.
  bool include_diagnosis_day = true;
};

/// Counts for the JSON validation report.
struct IngestStats {
  std::size_t n_members = 0;
  std::size_t n_events_total = 0;
  std::size_t n_events_kept = 0;          // surviving dedup
  std::size_t n_events_unknown_patient = 0;
  std::size_t n_events_outside_window = 0;
  std::size_t n_events_diagnosis_day_dropped = 0;
  std::size_t n_events_deduplicated = 0;  // later occurrences of a seen code
  std::size_t vocabulary_size = 0;
};

/// Aligns events to each member's diagnosis date, keeps those within the
/// lookback window, deduplicates to the earliest occurrence per condition
/// code, and assembles the cohort vocabulary. Members with no surviving
/// events are retained with empty observations. Events for patients outside
/// the cohort are skipped and tallied, not errors.
CohortHistories build_histories(std::span<const ConditionEvent> events,
                                std::span<const CohortMember> members,
                                const IngestOptions& options,
                                IngestStats* stats = nullptr);

}  // namespace ttdfair

#endif  // TTDFAIR_INGEST_HPP
