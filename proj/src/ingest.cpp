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

#include "ttdfair/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>
#include <unordered_set>

#include "ttdfair/csv.hpp"
#include "ttdfair/errors.hpp"

namespace ttdfair {

namespace {

int parse_int_field(const std::string& s, std::size_t line,
                    const char* what) {
  int value = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ParseError(std::string("invalid ") + what + " '" + s + "'", line);
  }
  return value;
}

Date parse_date_field(const std::string& s, std::size_t line,
                      const char* what) {
  auto d = parse_date(s);
  if (!d) {
    throw ParseError(std::string("invalid ") + what + " '" + s +
                         "', expected YYYY-MM-DD",
                     line);
  }
  return *d;
}

}  // namespace

std::vector<ConditionEvent> parse_condition_events(std::istream& in) {
  auto rows = read_csv(in, "patient_id,condition_code,occurred_on", 3);
  std::vector<ConditionEvent> events;
  events.reserve(rows.size());
  for (const auto& row : rows) {
    events.push_back({row.fields[0], row.fields[1],
                      parse_date_field(row.fields[2], row.line, "date")});
  }
  return events;
}

std::vector<CohortMember> parse_cohort_file(std::istream& in) {
  auto rows = read_csv(in, "patient_id,group,age_at_index,index_date", 4);
  std::vector<CohortMember> members;
  members.reserve(rows.size());
  std::unordered_set<std::string> seen;
  for (const auto& row : rows) {
    const std::string& id = row.fields[0];
    if (!seen.insert(id).second) {
      throw ValidationError("duplicate patient_id '" + id + "' at line " +
                            std::to_string(row.line));
    }
    Group group;
    if (row.fields[1] == "M") {
      group = Group::A;
    } else if (row.fields[1] == "F") {
      group = Group::B;
    } else {
      throw ValidationError("unknown group code '" + row.fields[1] +
                            "' at line " + std::to_string(row.line) +
                            ", expected M or F");
    }
    int age = parse_int_field(row.fields[2], row.line, "age");
    if (age < kMinEnrollmentAge) {
      throw ValidationError(
          "patient '" + id + "' at line " + std::to_string(row.line) +
          " is " + std::to_string(age) + " years old; members must be at least " +
          std::to_string(kMinEnrollmentAge));
    }
    Date index = parse_date_field(row.fields[3], row.line, "index_date");
    members.push_back({id, group, age, index});
  }
  return members;
}

CohortHistories build_histories(std::span<const ConditionEvent> events,
                                std::span<const CohortMember> members,
                                const IngestOptions& options,
                                IngestStats* stats) {
  if (options.lookback_days < 1) {
    throw ArgumentError("lookback_days must be >= 1");
  }

  CohortHistories cohort;
  cohort.phenotype_id = options.phenotype_id;
  cohort.lookback_days = options.lookback_days;
  cohort.histories.reserve(members.size());

  std::unordered_map<std::string, std::size_t> index_of;
  index_of.reserve(members.size());
  for (const auto& m : members) {
    index_of.emplace(m.patient_id, cohort.histories.size());
    cohort.histories.push_back({m, {}});
  }

  IngestStats local;
  local.n_members = members.size();
  local.n_events_total = events.size();

  for (const auto& ev : events) {
    auto it = index_of.find(ev.patient_id);
    if (it == index_of.end()) {
      ++local.n_events_unknown_patient;
      continue;
    }
    PatientHistory& history = cohort.histories[it->second];
    int delta = history.member.index_date - ev.occurred_on;
    if (delta < 0 || delta > options.lookback_days) {
      ++local.n_events_outside_window;
      continue;
    }
    if (delta == 0 && !options.include_diagnosis_day) {
      ++local.n_events_diagnosis_day_dropped;
      continue;
    }
    int offset = options.lookback_days - delta;
    auto [pos, inserted] = history.observations.emplace(ev.condition_code,
                                                        offset);
    if (!inserted) {
      // First occurrence wins: the earliest event has the smallest offset.
      if (offset < pos->second) {
        pos->second = offset;
      }
      ++local.n_events_deduplicated;
    }
  }

  std::vector<std::string> vocab;
  for (const auto& history : cohort.histories) {
    local.n_events_kept += history.observations.size();
    for (const auto& [code, _] : history.observations) vocab.push_back(code);
  }
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  cohort.vocabulary = std::move(vocab);
  local.vocabulary_size = cohort.vocabulary.size();

  if (stats) *stats = local;
  return cohort;
}

}  // namespace ttdfair
