// Copyright 2026 The MoPS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
////////////////////////////////////////////////////////////////////////////////
#ifndef MOPS_TIME_H_
#define MOPS_TIME_H_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mops {

// Seconds since 1970-01-01T00:00:00Z on a simulated clock.
struct TimeInstant {
  std::int64_t seconds = 0;

  auto operator<=>(const TimeInstant&) const = default;
};

inline constexpr std::int64_t kSecondsPerDay = 86400;

TimeInstant FromDate(int year, unsigned month, unsigned day);
TimeInstant AddDays(TimeInstant t, std::int64_t days);
// Calendar arithmetic; Feb 29 clamps to Feb 28 in non-leap target years.
TimeInstant AddYears(TimeInstant t, int years);
int YearOf(TimeInstant t);
std::int64_t DaysBetween(TimeInstant from, TimeInstant to);

// YYYY-MM-DDTHH:MM:SSZ
std::string FormatTime(TimeInstant t);
// Accepts the format above or a bare YYYY-MM-DD. Throws Error(kParse).
TimeInstant ParseTime(std::string_view text);

}  // namespace mops

#endif  // MOPS_TIME_H_
