#include "pc4pm/core/timestamp.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>

namespace pc4pm {

namespace {

using std::chrono::days;
using std::chrono::duration_cast;
using std::chrono::milliseconds;
using std::chrono::sys_days;

constexpr std::int64_t kMillisPerMinute = 60'000;
constexpr std::int64_t kMillisPerHour = 3'600'000;
constexpr std::int64_t kMillisPerDay = 86'400'000;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Reads exactly `width` digits at `pos`; advances pos on success.
bool read_digits(std::string_view text, std::size_t& pos, int width, int& out) {
  if (pos + width > text.size()) return false;
  int value = 0;
  for (int i = 0; i < width; ++i) {
    char c = text[pos + i];
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  pos += width;
  return true;
}

bool expect(std::string_view text, std::size_t& pos, char c) {
  if (pos < text.size() && text[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

}  // namespace

Timestamp Timestamp::now() {
  auto since = std::chrono::system_clock::now().time_since_epoch();
  return Timestamp{duration_cast<milliseconds>(since).count()};
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  std::size_t pos = 0;
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  std::int64_t millis = 0;
  if (!read_digits(text, pos, 4, year) || !expect(text, pos, '-') ||
      !read_digits(text, pos, 2, month) || !expect(text, pos, '-') ||
      !read_digits(text, pos, 2, day)) {
    return std::nullopt;
  }
  std::chrono::year_month_day ymd{std::chrono::year{year},
                                  std::chrono::month{static_cast<unsigned>(month)},
                                  std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;

  std::int64_t offset_minutes = 0;
  if (pos < text.size() && (text[pos] == 'T' || text[pos] == ' ')) {
    ++pos;
    if (!read_digits(text, pos, 2, hour) || !expect(text, pos, ':') ||
        !read_digits(text, pos, 2, minute)) {
      return std::nullopt;
    }
    if (expect(text, pos, ':')) {
      if (!read_digits(text, pos, 2, second)) return std::nullopt;
      if (expect(text, pos, '.') || expect(text, pos, ',')) {
        int digits = 0;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos]))) {
          if (digits < 3) millis = millis * 10 + (text[pos] - '0');
          ++digits;
          ++pos;
        }
        if (digits == 0) return std::nullopt;
        for (int i = digits; i < 3; ++i) millis *= 10;
      }
    }
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
    if (pos < text.size()) {
      char sign = text[pos];
      if (sign == 'Z' || sign == 'z') {
        ++pos;
      } else if (sign == '+' || sign == '-') {
        ++pos;
        int off_h = 0, off_m = 0;
        if (!read_digits(text, pos, 2, off_h)) return std::nullopt;
        expect(text, pos, ':');
        if (pos < text.size() && !read_digits(text, pos, 2, off_m)) {
          return std::nullopt;
        }
        offset_minutes = off_h * 60 + off_m;
        if (sign == '-') offset_minutes = -offset_minutes;
      }
    }
  }
  if (pos != text.size()) return std::nullopt;

  std::int64_t day_count = sys_days{ymd}.time_since_epoch().count();
  std::int64_t total = day_count * kMillisPerDay + hour * kMillisPerHour +
                       minute * kMillisPerMinute + second * 1000LL + millis -
                       offset_minutes * kMillisPerMinute;
  return Timestamp{total};
}

std::string format_timestamp(Timestamp ts) {
  std::int64_t day_count = floor_div(ts.millis, kMillisPerDay);
  std::int64_t rem = ts.millis - day_count * kMillisPerDay;
  std::chrono::year_month_day ymd{sys_days{days{day_count}}};
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<long long>(rem / kMillisPerHour),
                static_cast<long long>((rem / kMillisPerMinute) % 60),
                static_cast<long long>((rem / 1000) % 60),
                static_cast<long long>(rem % 1000));
  return buf;
}

Timestamp truncate(Timestamp ts, Granularity granularity) {
  switch (granularity) {
    case Granularity::kMinute:
      return {floor_div(ts.millis, kMillisPerMinute) * kMillisPerMinute};
    case Granularity::kHour:
      return {floor_div(ts.millis, kMillisPerHour) * kMillisPerHour};
    case Granularity::kDay:
      return {floor_div(ts.millis, kMillisPerDay) * kMillisPerDay};
    case Granularity::kMonth:
    case Granularity::kYear: {
      std::int64_t day_count = floor_div(ts.millis, kMillisPerDay);
      std::chrono::year_month_day ymd{sys_days{days{day_count}}};
      auto month = granularity == Granularity::kYear ? std::chrono::January
                                                     : ymd.month();
      std::chrono::year_month_day first{ymd.year(), month, std::chrono::day{1}};
      return {sys_days{first}.time_since_epoch().count() * kMillisPerDay};
    }
  }
  return ts;
}

std::optional<Granularity> parse_granularity(std::string_view name) {
  if (name == "year") return Granularity::kYear;
  if (name == "month") return Granularity::kMonth;
  if (name == "day") return Granularity::kDay;
  if (name == "hour") return Granularity::kHour;
  if (name == "minute") return Granularity::kMinute;
  return std::nullopt;
}

std::string_view granularity_name(Granularity granularity) {
  switch (granularity) {
    case Granularity::kYear: return "year";
    case Granularity::kMonth: return "month";
    case Granularity::kDay: return "day";
    case Granularity::kHour: return "hour";
    case Granularity::kMinute: return "minute";
  }
  return "";
}

}  // namespace pc4pm
