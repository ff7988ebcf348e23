#include "ocix/dates.hpp"

#include <algorithm>

#include "ocix/error.hpp"

namespace ocix {
namespace {

[[noreturn]] void invalid(std::string_view text, const char* why) {
  throw Error(ErrorCode::InvalidDate, std::string(why) + ": \"" + std::string(text) + "\"");
}

bool digits(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

void check_year(int year) {
  if (year < kMinYear || year > kMaxYear) throw Error(ErrorCode::InvalidDate, "year out of range: " + std::to_string(year));
}

void check_month(int month) {
  if (month < 1 || month > 12) throw Error(ErrorCode::InvalidDate, "month out of range: " + std::to_string(month));
}

void append_padded(std::string& out, int v, int width) {
  auto s = std::to_string(v);
  if (static_cast<int>(s.size()) < width) out.append(width - s.size(), '0');
  out += s;
}

}  // namespace

bool is_leap_year(int year) noexcept {
  return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) noexcept {
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return month == 2 && is_leap_year(year) ? 29 : kDays[month - 1];
}

PartialDate PartialDate::year_only(int year) {
  check_year(year);
  return PartialDate(static_cast<std::int16_t>(year), 0, 0);
}

PartialDate PartialDate::year_month(int year, int month) {
  check_year(year);
  check_month(month);
  return PartialDate(static_cast<std::int16_t>(year), static_cast<std::uint8_t>(month), 0);
}

PartialDate PartialDate::ymd(int year, int month, int day) {
  check_year(year);
  check_month(month);
  if (day < 1 || day > days_in_month(year, month))
    throw Error(ErrorCode::InvalidDate, "no such day: " + std::to_string(year) + "-" + std::to_string(month) + "-" +
                                            std::to_string(day));
  return PartialDate(static_cast<std::int16_t>(year), static_cast<std::uint8_t>(month), static_cast<std::uint8_t>(day));
}

PartialDate PartialDate::truncated(Precision p) const noexcept {
  switch (p) {
    case Precision::year: return PartialDate(year_, 0, 0);
    case Precision::month: return PartialDate(year_, month_, 0);
    case Precision::day: return *this;
  }
  return *this;
}

std::string PartialDate::str() const {
  std::string out;
  append_padded(out, year_, 4);
  if (month_) {
    out += '-';
    append_padded(out, month_, 2);
  }
  if (day_) {
    out += '-';
    append_padded(out, day_, 2);
  }
  return out;
}

PartialDate parse_partial_date(std::string_view text) {
  if (text.size() != 4 && text.size() != 7 && text.size() != 10) invalid(text, "expected YYYY, YYYY-MM or YYYY-MM-DD");
  if (!digits(text.substr(0, 4))) invalid(text, "year must be four digits");
  int year = to_int(text.substr(0, 4));
  if (text.size() == 4) return PartialDate::year_only(year);
  if (text[4] != '-' || !digits(text.substr(5, 2))) invalid(text, "month must be two digits after '-'");
  int month = to_int(text.substr(5, 2));
  if (text.size() == 7) return PartialDate::year_month(year, month);
  if (text[7] != '-' || !digits(text.substr(8, 2))) invalid(text, "day must be two digits after '-'");
  return PartialDate::ymd(year, month, to_int(text.substr(8, 2)));
}

bool TimeSpan::is_zero() const noexcept {
  return years == 0 && (precision < Precision::month || months == 0) && (precision < Precision::day || days == 0);
}

TimeSpan TimeSpan::negated() const noexcept {
  TimeSpan t = *this;
  t.negative = is_zero() ? false : !negative;
  return t;
}

std::string TimeSpan::str() const {
  std::string out;
  if (negative) out += '-';
  out += 'P';
  out += std::to_string(years);
  out += 'Y';
  if (precision >= Precision::month) {
    out += std::to_string(months);
    out += 'M';
  }
  if (precision == Precision::day) {
    out += std::to_string(days);
    out += 'D';
  }
  return out;
}

TimeSpan compute_timespan(const PartialDate& citing, const PartialDate& cited) {
  auto p = std::min(citing.precision(), cited.precision());
  auto a = citing.truncated(p);
  auto b = cited.truncated(p);
  bool negative = a < b;
  const auto& later = negative ? b : a;
  const auto& earlier = negative ? a : b;

  TimeSpan span;
  span.precision = p;
  span.negative = negative;
  span.years = later.year() - earlier.year();
  if (p == Precision::year) return span;

  span.months = *later.month() - *earlier.month();
  if (p == Precision::day) {
    span.days = *later.day() - *earlier.day();
    // Borrow whole months, starting with the one before the later date's
    // month, until the day component is non-negative. A second borrow is
    // only needed when the earlier day exceeds the length of that month
    // plus the later day (e.g. Jan 31 -> Mar 1).
    int by = later.year();
    int bm = *later.month();
    while (span.days < 0) {
      if (--bm == 0) {
        bm = 12;
        --by;
      }
      span.days += days_in_month(by, bm);
      --span.months;
    }
  }
  while (span.months < 0) {
    span.months += 12;
    --span.years;
  }
  return span;
}

}  // namespace ocix
