#include "stocksent/date.h"

#include <charconv>
#include <cstdio>

#include "stocksent/error.h"

namespace stocksent {
namespace {

using namespace std::chrono;

bool ParseDigits(std::string_view text, std::size_t pos, std::size_t count, int& out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    char c = text[i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

bool ParseDatePart(std::string_view text, year_month_day& out) {
  int y = 0, m = 0, d = 0;
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return false;
  if (!ParseDigits(text, 0, 4, y) || !ParseDigits(text, 5, 2, m) ||
      !ParseDigits(text, 8, 2, d)) {
    return false;
  }
  out = year_month_day{year{y}, month{static_cast<unsigned>(m)},
                       day{static_cast<unsigned>(d)}};
  return out.ok();
}

}  // namespace

Date::Date(int y, unsigned m, unsigned d) {
  year_month_day ymd{year{y}, month{m}, day{d}};
  if (!ymd.ok()) throw ArgumentError("invalid calendar date");
  days_ = sys_days{ymd};
}

Date Date::Parse(std::string_view text) {
  year_month_day ymd;
  if (text.size() != 10 || !ParseDatePart(text, ymd)) {
    throw FormatError("invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)");
  }
  return Date(sys_days{ymd});
}

std::string Date::ToString() const {
  year_month_day ymd{days_};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Timestamp ParseTimestamp(std::string_view text) {
  auto fail = [&] {
    return FormatError("invalid timestamp '" + std::string(text) + "'");
  };
  year_month_day ymd;
  if (!ParseDatePart(text, ymd)) throw fail();
  int hh = 0, mm = 0, ss = 0;
  if (text.size() < 16 || (text[10] != 'T' && text[10] != ' ') || text[13] != ':' ||
      !ParseDigits(text, 11, 2, hh) || !ParseDigits(text, 14, 2, mm)) {
    throw fail();
  }
  std::size_t pos = 16;
  if (pos < text.size() && text[pos] == ':') {
    if (!ParseDigits(text, pos + 1, 2, ss)) throw fail();
    pos += 3;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      std::size_t digits = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos, ++digits;
      if (digits == 0) throw fail();
    }
  }
  if (hh > 23 || mm > 59 || ss > 60) throw fail();
  long offset = 0;
  if (pos < text.size()) {
    char c = text[pos];
    if (c == 'Z' && pos + 1 == text.size()) {
      // UTC
    } else if ((c == '+' || c == '-') && text.size() == pos + 6 && text[pos + 3] == ':') {
      int oh = 0, om = 0;
      if (!ParseDigits(text, pos + 1, 2, oh) || !ParseDigits(text, pos + 4, 2, om) ||
          oh > 23 || om > 59) {
        throw fail();
      }
      offset = (oh * 3600L + om * 60L) * (c == '+' ? 1 : -1);
    } else {
      throw fail();
    }
  }
  return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss} - seconds{offset};
}

std::string FormatTimestamp(Timestamp ts) {
  auto day_start = floor<days>(ts);
  year_month_day ymd{day_start};
  hh_mm_ss<seconds> hms{ts - day_start};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02lldZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<long>(hms.hours().count()),
                static_cast<long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()));
  return buf;
}

Date DateOf(Timestamp ts) { return Date(floor<days>(ts)); }

}  // namespace stocksent
