#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ocix {

enum class Precision : std::uint8_t { year = 0, month = 1, day = 2 };

// Calendar date known to year, month or day precision. Packed into four
// bytes; month/day are zero when absent.
class PartialDate {
 public:
  static PartialDate year_only(int year);
  static PartialDate year_month(int year, int month);
  static PartialDate ymd(int year, int month, int day);

  int year() const noexcept { return year_; }
  std::optional<int> month() const noexcept { return month_ ? std::optional<int>(month_) : std::nullopt; }
  std::optional<int> day() const noexcept { return day_ ? std::optional<int>(day_) : std::nullopt; }
  Precision precision() const noexcept {
    return day_ ? Precision::day : month_ ? Precision::month : Precision::year;
  }

  // Drops components finer than `p`; coarser dates are returned unchanged.
  PartialDate truncated(Precision p) const noexcept;

  // "YYYY", "YYYY-MM" or "YYYY-MM-DD".
  std::string str() const;

  // Component-wise order; only meaningful between dates of equal precision.
  friend auto operator<=>(const PartialDate&, const PartialDate&) = default;

 private:
  PartialDate(std::int16_t y, std::uint8_t m, std::uint8_t d) : year_(y), month_(m), day_(d) {}
  std::int16_t year_;
  std::uint8_t month_;
  std::uint8_t day_;
};

inline constexpr int kMinYear = 1000;
inline constexpr int kMaxYear = 2999;

bool is_leap_year(int year) noexcept;
int days_in_month(int year, int month) noexcept;

// Accepts exactly YYYY, YYYY-MM or YYYY-MM-DD; throws InvalidDate.
PartialDate parse_partial_date(std::string_view text);

// Signed calendar interval at year, month or day precision.
struct TimeSpan {
  bool negative = false;
  int years = 0;
  int months = 0;  // meaningful when precision >= month
  int days = 0;    // meaningful when precision == day
  Precision precision = Precision::year;

  bool is_zero() const noexcept;
  TimeSpan negated() const noexcept;
  // Canonical rendering: "P2Y", "-P1Y3M", "P2Y0M5D". Also a valid xsd:duration.
  std::string str() const;

  friend bool operator==(const TimeSpan&, const TimeSpan&) = default;
};

// Interval from cited to citing at the coarser of the two precisions.
// Negative when the citing date precedes the cited date.
TimeSpan compute_timespan(const PartialDate& citing, const PartialDate& cited);

}  // namespace ocix
