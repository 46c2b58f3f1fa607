#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pc4pm/core/log.hpp"
#include "pc4pm/error.hpp"
#include "pc4pm/util/random.hpp"

namespace pc4pm::testing {

// FIX1: c1:<a,b,c>, c2:<a,b,c>, c3:<a,d>; a by r1, b and c by r2, d by r3;
// hourly timestamps from 2021-06-10T10:00:00Z within each trace.
EventLog fix1();

// FIX1 with every d-event removed (c3 = <a>).
EventLog fix1_without_d();

Timestamp ts(const char* iso);

// Builds a log from activity sequences; case ids c1..cn, events one minute
// apart starting at 2021-01-01T00:00:00Z, resource "r-<activity>".
EventLog log_of(const std::vector<std::vector<std::string>>& sequences);

struct RandomLogShape {
  std::size_t max_traces = 8;
  std::size_t max_activities = 6;
  std::size_t max_length = 6;
  bool allow_empty_traces = false;
  // Word-like labels avoid accidental overlap with hex tokens.
  bool word_labels = false;
};

EventLog random_log(Rng& rng, const RandomLogShape& shape);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "pc4pm");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Code of the pc4pm::Error raised by fn, or nullopt when it returns normally.
template <typename Fn>
std::optional<ErrorCode> error_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace pc4pm::testing
