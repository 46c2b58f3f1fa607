#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pc4pm {

// UTC instant with millisecond precision.
struct Timestamp {
  std::int64_t millis = 0;  // since 1970-01-01T00:00:00Z

  auto operator<=>(const Timestamp&) const = default;

  static Timestamp now();
};

enum class Granularity { kYear, kMonth, kDay, kHour, kMinute };

// Accepts YYYY-MM-DD[Thh:mm[:ss[.fff...]]][Z|+hh:mm|-hh:mm|+hhmm]. A missing
// offset means UTC. Fractions beyond milliseconds are truncated.
std::optional<Timestamp> parse_timestamp(std::string_view text);

// Always "YYYY-MM-DDThh:mm:ss.fffZ".
std::string format_timestamp(Timestamp ts);

Timestamp truncate(Timestamp ts, Granularity granularity);

std::optional<Granularity> parse_granularity(std::string_view name);
std::string_view granularity_name(Granularity granularity);

}  // namespace pc4pm
