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

#include "ttdfair/dates.hpp"

#include <chrono>
#include <cstdio>

namespace ttdfair {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return {};
  std::string_view ys = text.substr(0, 4);
  std::string_view ms = text.substr(5, 2);
  std::string_view ds = text.substr(8, 2);
  if (!all_digits(ys) || !all_digits(ms) || !all_digits(ds)) return {};
  std::chrono::year_month_day ymd{
      std::chrono::year{to_int(ys)},
      std::chrono::month{static_cast<unsigned>(to_int(ms))},
      std::chrono::day{static_cast<unsigned>(to_int(ds))}};
  if (!ymd.ok()) return {};
  return static_cast<Date>(
      std::chrono::sys_days{ymd}.time_since_epoch().count());
}

std::string format_date(Date d) {
  std::chrono::year_month_day ymd{
      std::chrono::sys_days{std::chrono::days{d}}};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buf;
}

}  // namespace ttdfair
