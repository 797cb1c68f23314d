#include "attentionflow/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace attnflow {

ObservationWindow ObservationWindow::make(DateIndex start, DateIndex end) {
  if (end < start) {
    throw std::invalid_argument("observation window start " + start.iso() + " is after end " +
                                end.iso());
  }
  return {start, end};
}

namespace {

void check_value(double v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument("attention values must be finite and non-negative, got " +
                                std::to_string(v));
  }
}

}  // namespace

AttentionSeries::AttentionSeries() = default;

AttentionSeries::AttentionSeries(DateIndex start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("attention series must be non-empty");
  for (double v : values_) check_value(v);
  length_ = static_cast<std::int32_t>(values_.size());
}

AttentionSeries AttentionSeries::constant(DateIndex start, std::int32_t length, double value) {
  if (length < 1) throw std::invalid_argument("constant series length must be >= 1");
  check_value(value);
  AttentionSeries s;
  s.start_ = start;
  s.length_ = length;
  s.constant_ = value;
  return s;
}

std::vector<double> AttentionSeries::to_dense() const {
  if (!values_.empty()) return values_;
  return std::vector<double>(static_cast<std::size_t>(length_), constant_);
}

bool AttentionSeries::operator==(const AttentionSeries& other) const {
  if (start_ != other.start_ || length_ != other.length_) return false;
  for (std::int32_t i = 0; i < length_; ++i) {
    if (at_offset(i) != other.at_offset(i)) return false;
  }
  return true;
}

double window_sum(const AttentionSeries& series, const ObservationWindow& window) {
  const DateIndex lo = std::max(series.start(), window.start);
  const DateIndex hi = std::min(series.last(), window.end);
  double sum = 0.0;
  for (std::int32_t i = lo - series.start(), stop = hi - series.start(); i <= stop; ++i) {
    sum += series.at_offset(i);
  }
  return sum;
}

std::vector<YearSum> year_partition(const AttentionSeries& series) {
  std::vector<YearSum> out;
  const int first = series.start().year();
  const int last = series.last().year();
  out.reserve(static_cast<std::size_t>(last - first + 1));
  for (int y = first; y <= last; ++y) {
    out.push_back({y, window_sum(series, {first_day_of_year(y), last_day_of_year(y)})});
  }
  return out;
}

std::vector<double> align_daily(const AttentionSeries& series, const ObservationWindow& window) {
  std::vector<double> out(static_cast<std::size_t>(window.length_days()), 0.0);
  const DateIndex lo = std::max(series.start(), window.start);
  const DateIndex hi = std::min(series.last(), window.end);
  for (DateIndex d = lo; d <= hi; ++d) {
    out[static_cast<std::size_t>(d - window.start)] = series.at_offset(d - series.start());
  }
  return out;
}

}  // namespace attnflow
