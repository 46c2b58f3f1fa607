#include "fixtures.hpp"

#include <atomic>
#include <stdexcept>
#include <unistd.h>

namespace pc4pm::testing {

namespace {

constexpr std::int64_t kHour = 3'600'000;
constexpr std::int64_t kMinute = 60'000;

const char* const kWords[] = {"register", "triage", "surgery", "review",  "invoice",
                              "pharmacy", "xray",   "consult", "discharge", "lab_work",
                              "nursing",  "transfer"};

}  // namespace

TempDir::TempDir(const std::string& prefix) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          (prefix + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

Timestamp ts(const char* iso) {
  auto parsed = parse_timestamp(iso);
  if (!parsed) throw std::invalid_argument(iso);
  return *parsed;
}

EventLog fix1() {
  const Timestamp start = ts("2021-06-10T10:00:00Z");
  auto resource_of = [](const std::string& activity) -> std::string {
    if (activity == "a") return "r1";
    if (activity == "d") return "r3";
    return "r2";
  };
  EventLog log;
  log.attributes.set("concept:name", TypedValue::string("FIX1"));
  log.extensions.push_back({"Concept", "concept", "http://www.xes-standard.org/concept.xesext"});
  log.extensions.push_back({"Time", "time", "http://www.xes-standard.org/time.xesext"});
  log.extensions.push_back({"Organizational", "org", "http://www.xes-standard.org/org.xesext"});
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"c1", {"a", "b", "c"}}, {"c2", {"a", "b", "c"}}, {"c3", {"a", "d"}}};
  for (const auto& [id, activities] : cases) {
    Trace trace = Trace::make(id);
    for (std::size_t i = 0; i < activities.size(); ++i) {
      trace.events.push_back(Event::make(activities[i],
                                         Timestamp{start.millis + static_cast<std::int64_t>(i) * kHour},
                                         resource_of(activities[i])));
    }
    log.traces.push_back(std::move(trace));
  }
  return log;
}

EventLog fix1_without_d() {
  EventLog log = fix1();
  auto& events = log.traces[2].events;
  events.pop_back();
  return log;
}

EventLog log_of(const std::vector<std::vector<std::string>>& sequences) {
  const Timestamp start = ts("2021-01-01T00:00:00Z");
  EventLog log;
  for (std::size_t t = 0; t < sequences.size(); ++t) {
    Trace trace = Trace::make("c" + std::to_string(t + 1));
    for (std::size_t i = 0; i < sequences[t].size(); ++i) {
      const auto& activity = sequences[t][i];
      trace.events.push_back(Event::make(
          activity, Timestamp{start.millis + static_cast<std::int64_t>(i) * kMinute},
          "r-" + activity));
    }
    log.traces.push_back(std::move(trace));
  }
  return log;
}

EventLog random_log(Rng& rng, const RandomLogShape& shape) {
  std::size_t activity_count = 1 + rng.below(shape.max_activities);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < activity_count; ++i) {
    if (shape.word_labels) {
      labels.push_back(kWords[i % std::size(kWords)] +
                       (i >= std::size(kWords) ? std::to_string(i) : std::string{}));
    } else {
      labels.push_back(std::string(1, static_cast<char>('a' + i)));
    }
  }
  std::size_t trace_count = 1 + rng.below(shape.max_traces);
  std::vector<std::vector<std::string>> sequences;
  for (std::size_t t = 0; t < trace_count; ++t) {
    std::size_t min_length = shape.allow_empty_traces ? 0 : 1;
    std::size_t length = min_length + rng.below(shape.max_length - min_length + 1);
    std::vector<std::string> sequence;
    for (std::size_t i = 0; i < length; ++i) sequence.push_back(labels[rng.below(activity_count)]);
    sequences.push_back(std::move(sequence));
  }
  EventLog log = log_of(sequences);
  // Spread trace starts and vary inter-event gaps so timing-based checks see
  // real spread.
  for (std::size_t t = 0; t < log.traces.size(); ++t) {
    std::int64_t clock = static_cast<std::int64_t>(rng.below(1000)) * kMinute;
    for (auto& event : log.traces[t].events) {
      clock += static_cast<std::int64_t>(rng.below(180)) * kMinute;
      event.set_timestamp(Timestamp{event.timestamp().millis + clock});
    }
  }
  return log;
}

}  // namespace pc4pm::testing
