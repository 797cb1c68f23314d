#include "attentionflow/date.hpp"

#include <charconv>
#include <chrono>
#include <stdexcept>

namespace attnflow {

namespace chr = std::chrono;

DateIndex DateIndex::from_ymd(int year, unsigned month, unsigned day) {
  const chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
  if (!ymd.ok()) {
    throw std::invalid_argument("invalid calendar date " + std::to_string(year) + "-" +
                                std::to_string(month) + "-" + std::to_string(day));
  }
  return DateIndex(static_cast<std::int32_t>(chr::sys_days{ymd}.time_since_epoch().count()));
}

namespace {

template <typename T>
bool parse_digits(std::string_view s, T& out) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

DateIndex DateIndex::parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
    throw std::invalid_argument("expected YYYY-MM-DD date, got '" + std::string(iso) + "'");
  }
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  if (!parse_digits(iso.substr(0, 4), y) || !parse_digits(iso.substr(5, 2), m) ||
      !parse_digits(iso.substr(8, 2), d)) {
    throw std::invalid_argument("expected YYYY-MM-DD date, got '" + std::string(iso) + "'");
  }
  return from_ymd(y, m, d);
}

int DateIndex::year() const {
  const chr::year_month_day ymd{chr::sys_days{chr::days{days_}}};
  return static_cast<int>(ymd.year());
}

std::string DateIndex::iso() const {
  const chr::year_month_day ymd{chr::sys_days{chr::days{days_}}};
  const int y = static_cast<int>(ymd.year());
  const unsigned m = static_cast<unsigned>(ymd.month());
  const unsigned d = static_cast<unsigned>(ymd.day());
  std::string out(10, '0');
  out[0] = static_cast<char>('0' + (y / 1000) % 10);
  out[1] = static_cast<char>('0' + (y / 100) % 10);
  out[2] = static_cast<char>('0' + (y / 10) % 10);
  out[3] = static_cast<char>('0' + y % 10);
  out[4] = '-';
  out[5] = static_cast<char>('0' + m / 10);
  out[6] = static_cast<char>('0' + m % 10);
  out[7] = '-';
  out[8] = static_cast<char>('0' + d / 10);
  out[9] = static_cast<char>('0' + d % 10);
  return out;
}

DateIndex first_day_of_year(int year) { return DateIndex::from_ymd(year, 1, 1); }
DateIndex last_day_of_year(int year) { return DateIndex::from_ymd(year, 12, 31); }

}  // namespace attnflow
