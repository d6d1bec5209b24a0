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

#ifndef TTDFAIR_TYPES_HPP
#define TTDFAIR_TYPES_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ttdfair/dates.hpp"

namespace ttdfair {

/// Binary group label. A maps to "M" (men) and B to "F" (women) in the
/// input files; all outputs report the A-minus-B (men-minus-women) sign
/// convention explicitly.
enum class Group : std::uint8_t { A, B };

inline const char* group_code(Group g) { return g == Group::A ? "M" : "F"; }
inline Group other(Group g) { return g == Group::A ? Group::B : Group::A; }

/// One raw (patient, condition, first-occurrence date) record.
struct ConditionEvent {
  std::string patient_id;
  std::string condition_code;
  Date occurred_on;
};

/// Cohort membership: group label, age, and the phenotype diagnosis date
/// that anchors the day-offset timeline.
struct CohortMember {
  std::string patient_id;
  Group group;
  int age_at_index;
  Date index_date;
};

/// Per-patient condition timeline. Offsets live on [0, lookback_days]:
/// 0 is the start of the lookback window, lookback_days is the diagnosis
/// day. Time to diagnosis for a code is lookback_days - offset.
struct PatientHistory {
  CohortMember member;
  std::map<std::string, int> observations;  // condition code -> day offset
};

/// One phenotype cohort with deduplicated histories and the deterministic
/// (lexicographic) code vocabulary shared by all derived feature matrices.
struct CohortHistories {
  std::string phenotype_id;
  int lookback_days = 0;
  std::vector<PatientHistory> histories;
  std::vector<std::string> vocabulary;  // sorted; index = column id
};

}  // namespace ttdfair

#endif  // TTDFAIR_TYPES_HPP
