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
#include "mops/time.h"

#include <chrono>
#include <cstdio>

#include "mops/error.h"

namespace mops {

namespace {

using std::chrono::day;
using std::chrono::month;
using std::chrono::sys_days;
using std::chrono::year;
using std::chrono::year_month_day;

std::int64_t FloorDiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

year_month_day DateOf(TimeInstant t) {
  return year_month_day(
      sys_days(std::chrono::days(FloorDiv(t.seconds, kSecondsPerDay))));
}

std::int64_t SecondOfDay(TimeInstant t) {
  return t.seconds - FloorDiv(t.seconds, kSecondsPerDay) * kSecondsPerDay;
}

}  // namespace

TimeInstant FromDate(int y, unsigned m, unsigned d) {
  year_month_day ymd{year(y), month(m), day(d)};
  if (!ymd.ok()) throw Error(Errc::kParse, "invalid calendar date");
  return {sys_days(ymd).time_since_epoch().count() * kSecondsPerDay};
}

TimeInstant AddDays(TimeInstant t, std::int64_t days) {
  return {t.seconds + days * kSecondsPerDay};
}

TimeInstant AddYears(TimeInstant t, int years) {
  year_month_day ymd = DateOf(t);
  year_month_day shifted = ymd + std::chrono::years(years);
  if (!shifted.ok()) {
    shifted = year_month_day(shifted.year(), shifted.month(), day(28));
  }
  return {sys_days(shifted).time_since_epoch().count() * kSecondsPerDay +
          SecondOfDay(t)};
}

int YearOf(TimeInstant t) { return static_cast<int>(DateOf(t).year()); }

std::int64_t DaysBetween(TimeInstant from, TimeInstant to) {
  return FloorDiv(to.seconds - from.seconds, kSecondsPerDay);
}

std::string FormatTime(TimeInstant t) {
  year_month_day ymd = DateOf(t);
  std::int64_t s = SecondOfDay(t);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<int>(s / 3600),
                static_cast<int>(s / 60 % 60), static_cast<int>(s % 60));
  return buf;
}

TimeInstant ParseTime(std::string_view text) {
  int y = 0, hh = 0, mm = 0, ss = 0;
  unsigned mo = 0, d = 0;
  char tail = 0;
  std::string s(text);
  int n = 0;
  if (s.size() == 10 &&
      std::sscanf(s.c_str(), "%4d-%2u-%2u%n", &y, &mo, &d, &n) == 3 &&
      n == 10) {
    return FromDate(y, mo, d);
  }
  if (s.size() == 20 &&
      std::sscanf(s.c_str(), "%4d-%2u-%2uT%2d:%2d:%2d%c", &y, &mo, &d, &hh, &mm,
                  &ss, &tail) == 7 &&
      tail == 'Z' && s[4] == '-' && s[7] == '-' && s[13] == ':' &&
      s[16] == ':' && hh < 24 && mm < 60 && ss < 60 && hh >= 0 && mm >= 0 &&
      ss >= 0) {
    TimeInstant t = FromDate(y, mo, d);
    t.seconds += hh * 3600 + mm * 60 + ss;
    return t;
  }
  throw Error(Errc::kParse, "bad timestamp '" + s + "'");
}

}  // namespace mops
