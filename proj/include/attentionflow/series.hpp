#pragma once

#include <cstdint>
#include <vector>

#include "attentionflow/date.hpp"

namespace attnflow {

/// Inclusive [start, end] range of days.
struct ObservationWindow {
  DateIndex start;
  DateIndex end;

  /// Throws std::invalid_argument when start > end.
  static ObservationWindow make(DateIndex start, DateIndex end);

  [[nodiscard]] std::int32_t length_days() const { return end - start + 1; }
  [[nodiscard]] bool contains(DateIndex d) const { return start <= d && d <= end; }

  bool operator==(const ObservationWindow&) const = default;
};

/// Daily non-negative attention counts anchored at a start date.
///
/// Two storage forms share one interface: a dense per-day vector, and a
/// constant run (used for scalar edge weights, which would otherwise be
/// expanded over the lifetime of both endpoints). Days outside the support
/// read as 0.
class AttentionSeries {
 public:
  /// One zero-valued day at the epoch.
  AttentionSeries();

  /// Throws std::invalid_argument on empty input or negative/non-finite values.
  AttentionSeries(DateIndex start, std::vector<double> values);

  static AttentionSeries constant(DateIndex start, std::int32_t length, double value);

  [[nodiscard]] DateIndex start() const { return start_; }
  [[nodiscard]] DateIndex last() const { return start_ + (length_ - 1); }
  [[nodiscard]] std::int32_t length() const { return length_; }
  [[nodiscard]] ObservationWindow support() const { return {start_, last()}; }

  [[nodiscard]] bool is_constant() const { return values_.empty(); }
  [[nodiscard]] double constant_value() const { return constant_; }

  /// Value on day `d`, 0 outside the support.
  [[nodiscard]] double at(DateIndex d) const {
    const std::int32_t i = d - start_;
    if (i < 0 || i >= length_) return 0.0;
    return values_.empty() ? constant_ : values_[static_cast<std::size_t>(i)];
  }

  /// Value at offset `i` from start(); caller guarantees 0 <= i < length().
  [[nodiscard]] double at_offset(std::int32_t i) const {
    return values_.empty() ? constant_ : values_[static_cast<std::size_t>(i)];
  }

  [[nodiscard]] bool overlaps(const ObservationWindow& w) const {
    return start_ <= w.end && w.start <= last();
  }

  [[nodiscard]] std::vector<double> to_dense() const;

  /// Compares the day-by-day values, independent of storage form.
  bool operator==(const AttentionSeries& other) const;

 private:
  DateIndex start_;
  std::int32_t length_ = 1;
  double constant_ = 0.0;
  std::vector<double> values_;
};

struct YearSum {
  int year;
  double sum;
  bool operator==(const YearSum&) const = default;
};

/// Sum of the values on days in window ∩ support, accumulated in day order.
double window_sum(const AttentionSeries& series, const ObservationWindow& window);

/// One entry per calendar year intersecting the support, chronological.
std::vector<YearSum> year_partition(const AttentionSeries& series);

/// Dense vector of length window.length_days(); element i is the value on
/// window.start + i.
std::vector<double> align_daily(const AttentionSeries& series, const ObservationWindow& window);

}  // namespace attnflow
