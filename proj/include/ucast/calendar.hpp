#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace ucast {

// Calendar month, the native resolution of every series in the toolkit.
struct YearMonth {
  int year = 0;
  int month = 1;  // 1..12

  auto operator<=>(const YearMonth&) const = default;

  // Months since year 0, for gap-free arithmetic.
  int index() const { return year * 12 + (month - 1); }
  static YearMonth from_index(int idx);
  YearMonth plus(int months) const { return from_index(index() + months); }
  std::string str() const;  // "2020-03"
};

// b - a in whole months.
int months_between(YearMonth a, YearMonth b);

// Minute-resolution civil timestamp. Field order makes the defaulted
// comparison chronological.
struct DateTime {
  int year = 0;
  int month = 1;
  int day = 1;
  int hour = 0;
  int minute = 0;

  auto operator<=>(const DateTime&) const = default;

  YearMonth year_month() const { return {year, month}; }
  std::string str() const;  // ISO-8601, date only when midnight
};

int days_in_month(int year, int month);
std::int64_t days_from_civil(int year, int month, int day);
// 0 = Monday .. 6 = Sunday.
int weekday(int year, int month, int day);

// Accepts "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM[:SS]" (space also allowed before
// the time part). Throws std::invalid_argument on anything else.
DateTime parse_timestamp(const std::string& text);

}  // namespace ucast
