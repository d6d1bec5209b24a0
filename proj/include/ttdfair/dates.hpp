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

#ifndef TTDFAIR_DATES_HPP
#define TTDFAIR_DATES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ttdfair {

/// Calendar date at day precision, stored as days since 1970-01-01.
using Date = std::int32_t;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). Rejects impossible
/// dates such as 2015-02-30.
std::optional<Date> parse_date(std::string_view text);

std::string format_date(Date d);

}  // namespace ttdfair

#endif  // TTDFAIR_DATES_HPP
