#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace stocksent {

// Calendar date backed by a day count since 1970-01-01.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}
  Date(int year, unsigned month, unsigned day);

  // Strict `YYYY-MM-DD`. Throws FormatError.
  static Date Parse(std::string_view text);

  std::chrono::sys_days days() const { return days_; }
  long serial() const { return days_.time_since_epoch().count(); }
  std::string ToString() const;

  Date operator+(int n) const { return Date(days_ + std::chrono::days(n)); }
  Date operator-(int n) const { return Date(days_ - std::chrono::days(n)); }
  long operator-(const Date& other) const { return serial() - other.serial(); }

  friend auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

using Timestamp = std::chrono::sys_seconds;

// ISO-8601 date-time: `YYYY-MM-DDTHH:MM[:SS[.fff]]` followed by `Z`, an
// offset `+hh:mm` / `-hh:mm`, or nothing (taken as UTC). A space may
// replace the `T`. Result is normalized to UTC. Throws FormatError.
Timestamp ParseTimestamp(std::string_view text);
std::string FormatTimestamp(Timestamp ts);

// UTC calendar date of a timestamp.
Date DateOf(Timestamp ts);

}  // namespace stocksent
