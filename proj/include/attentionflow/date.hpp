#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace attnflow {

/// A calendar day, stored as a signed day offset from 1970-01-01.
///
/// Daily resolution is the only resolution in the system: there are no hours,
/// no time zones, and arithmetic on days is exact.
class DateIndex {
 public:
  constexpr DateIndex() = default;
  constexpr explicit DateIndex(std::int32_t days_since_epoch) : days_(days_since_epoch) {}

  static DateIndex from_ymd(int year, unsigned month, unsigned day);

  /// Strict "YYYY-MM-DD" parse. Anything else (including a time part) throws
  /// std::invalid_argument.
  static DateIndex parse(std::string_view iso);

  [[nodiscard]] constexpr std::int32_t days() const { return days_; }
  [[nodiscard]] int year() const;
  [[nodiscard]] std::string iso() const;

  constexpr auto operator<=>(const DateIndex&) const = default;

  constexpr DateIndex operator+(std::int32_t n) const { return DateIndex(days_ + n); }
  constexpr DateIndex operator-(std::int32_t n) const { return DateIndex(days_ - n); }
  constexpr std::int32_t operator-(DateIndex other) const { return days_ - other.days_; }
  constexpr DateIndex& operator+=(std::int32_t n) {
    days_ += n;
    return *this;
  }
  constexpr DateIndex& operator++() {
    ++days_;
    return *this;
  }

 private:
  std::int32_t days_ = 0;
};

DateIndex first_day_of_year(int year);
DateIndex last_day_of_year(int year);

}  // namespace attnflow
