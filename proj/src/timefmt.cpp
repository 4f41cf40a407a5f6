#include "pripel/timefmt.hpp"

#include <chrono>
#include <cstdio>

namespace pripel {

namespace {

bool take_digits(std::string_view& s, std::size_t count, int& out) {
  if (s.size() < count) return false;
  int value = 0;
  for (std::size_t i = 0; i < count; ++i) {
    char c = s[i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  s.remove_prefix(count);
  return true;
}

bool take_char(std::string_view& s, char c) {
  if (s.empty() || s.front() != c) return false;
  s.remove_prefix(1);
  return true;
}

}  // namespace

std::optional<TimestampMs> parse_timestamp(std::string_view s) {
  using namespace std::chrono;
  int y, mo, d, h, mi, sec;
  if (!take_digits(s, 4, y) || !take_char(s, '-') || !take_digits(s, 2, mo) || !take_char(s, '-') ||
      !take_digits(s, 2, d)) {
    return std::nullopt;
  }
  h = mi = sec = 0;
  if (take_char(s, 'T') || take_char(s, ' ')) {
    if (!take_digits(s, 2, h) || !take_char(s, ':') || !take_digits(s, 2, mi) || !take_char(s, ':') ||
        !take_digits(s, 2, sec)) {
      return std::nullopt;
    }
  }
  int millis = 0;
  if (take_char(s, '.')) {
    int digits = 0;
    while (!s.empty() && s.front() >= '0' && s.front() <= '9') {
      if (digits < 3) millis = millis * 10 + (s.front() - '0');
      ++digits;
      s.remove_prefix(1);
    }
    if (digits == 0) return std::nullopt;
    for (int i = digits; i < 3; ++i) millis *= 10;
  }
  int offset_minutes = 0;
  if (!s.empty()) {
    if (take_char(s, 'Z')) {
    } else if (s.front() == '+' || s.front() == '-') {
      int sign = s.front() == '-' ? -1 : 1;
      s.remove_prefix(1);
      int oh, om;
      if (!take_digits(s, 2, oh)) return std::nullopt;
      take_char(s, ':');
      if (!take_digits(s, 2, om)) return std::nullopt;
      offset_minutes = sign * (oh * 60 + om);
    } else {
      return std::nullopt;
    }
  }
  if (!s.empty()) return std::nullopt;

  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) return std::nullopt;
  auto tp = sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec} + milliseconds{millis} -
            minutes{offset_minutes};
  return duration_cast<milliseconds>(tp.time_since_epoch()).count();
}

std::string format_timestamp(TimestampMs ts) {
  using namespace std::chrono;
  sys_time<milliseconds> tp{milliseconds{ts}};
  auto day_point = floor<days>(tp);
  year_month_day ymd{day_point};
  hh_mm_ss<milliseconds> tod{tp - day_point};
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03d+00:00", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()), static_cast<int>(tod.subseconds().count()));
  return buf;
}

}  // namespace pripel
