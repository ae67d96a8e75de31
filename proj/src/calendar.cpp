#include "ucast/calendar.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace ucast {

YearMonth YearMonth::from_index(int idx) {
  int year = idx / 12;
  int month = idx % 12;
  if (month < 0) {
    month += 12;
    --year;
  }
  return {year, month + 1};
}

std::string YearMonth::str() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
  return buf;
}

int months_between(YearMonth a, YearMonth b) { return b.index() - a.index(); }

std::string DateTime::str() const {
  char buf[24];
  if (hour == 0 && minute == 0) {
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  } else {
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d", year, month, day, hour, minute);
  }
  return buf;
}

int days_in_month(int year, int month) {
  static const int table[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month < 1 || month > 12) throw std::invalid_argument("month out of range");
  if (month == 2) {
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return table[month - 1];
}

// Days since 1970-01-01 (Howard Hinnant's civil-days algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

int weekday(int year, int month, int day) {
  // 1970-01-01 was a Thursday (index 3 with Monday = 0).
  const std::int64_t days = days_from_civil(year, month, day);
  return static_cast<int>(((days + 3) % 7 + 7) % 7);
}

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t count) {
  if (from + count > s.size()) return false;
  for (std::size_t i = from; i < from + count; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

int to_int(const std::string& s, std::size_t from, std::size_t count) {
  int v = 0;
  for (std::size_t i = from; i < from + count; ++i) v = v * 10 + (s[i] - '0');
  return v;
}

}  // namespace

DateTime parse_timestamp(const std::string& text) {
  const auto fail = [&]() -> DateTime {
    throw std::invalid_argument("invalid timestamp '" + text + "'");
  };
  if (text.size() < 10 || !all_digits(text, 0, 4) || text[4] != '-' || !all_digits(text, 5, 2) ||
      text[7] != '-' || !all_digits(text, 8, 2)) {
    return fail();
  }
  DateTime dt;
  dt.year = to_int(text, 0, 4);
  dt.month = to_int(text, 5, 2);
  dt.day = to_int(text, 8, 2);
  if (text.size() > 10) {
    if ((text[10] != 'T' && text[10] != ' ') || text.size() < 16 || !all_digits(text, 11, 2) ||
        text[13] != ':' || !all_digits(text, 14, 2)) {
      return fail();
    }
    dt.hour = to_int(text, 11, 2);
    dt.minute = to_int(text, 14, 2);
    // Optional ":SS" suffix is accepted and truncated to minute precision.
    if (text.size() > 16 && (text[16] != ':' || !all_digits(text, 17, 2) || text.size() > 19)) {
      return fail();
    }
  }
  if (dt.month < 1 || dt.month > 12 || dt.day < 1 || dt.day > days_in_month(dt.year, dt.month) ||
      dt.hour > 23 || dt.minute > 59) {
    return fail();
  }
  return dt;
}

}  // namespace ucast
