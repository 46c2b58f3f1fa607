#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pc4pm/core/metadata.hpp"
#include "pc4pm/core/timestamp.hpp"
#include "pc4pm/core/value.hpp"

namespace pc4pm {

inline constexpr std::string_view kConceptName = "concept:name";
inline constexpr std::string_view kTimeTimestamp = "time:timestamp";
inline constexpr std::string_view kOrgResource = "org:resource";

// An event is its attribute payload; activity, timestamp and resource are views
// onto the standard keys so the two can never disagree.
struct Event {
  AttributeMap attributes;

  static Event make(std::string activity, Timestamp timestamp,
                    std::optional<std::string> resource = std::nullopt);

  const std::string& activity() const;
  Timestamp timestamp() const;
  std::optional<std::string> resource() const;

  void set_activity(std::string activity);
  void set_timestamp(Timestamp timestamp);

  friend bool operator==(const Event&, const Event&) = default;
};

struct Trace {
  AttributeMap attributes;
  std::vector<Event> events;

  static Trace make(std::string case_id, std::vector<Event> events = {});

  const std::string& case_id() const;
  std::vector<std::string> activities() const;

  friend bool operator==(const Trace&, const Trace&) = default;
};

struct Extension {
  std::string name;
  std::string prefix;
  std::string uri;

  friend bool operator==(const Extension&, const Extension&) = default;
};

struct Classifier {
  std::string name;
  std::string keys;

  friend bool operator==(const Classifier&, const Classifier&) = default;
};

struct EventLog {
  AttributeMap attributes;
  std::vector<Extension> extensions;
  std::vector<Classifier> classifiers;
  AttributeMap trace_globals;
  AttributeMap event_globals;
  std::vector<Trace> traces;
  PrivacyMetadata privacy_metadata;

  std::size_t event_count() const;
  std::set<std::string> alphabet() const;
  const Trace* find_trace(std::string_view case_id) const;

  friend bool operator==(const EventLog&, const EventLog&) = default;
};

// Which part of a log an attribute-level operation addresses.
enum class AttributeLevel { kEvent, kTrace };

// Whether `key` is declared as a global or carried by any event (or trace).
bool log_has_attribute(const EventLog& log, AttributeLevel level, std::string_view key);

// Copies declared global defaults into every event/trace missing them.
void fill_global_defaults(EventLog& log);

// Throws Error(kSchemaViolation) describing the first broken invariant.
void check_invariants(const EventLog& log);

// Returns a copy with one more record appended (seq = previous length + 1)
// and the privacy extension declared.
EventLog attach_operation_record(const EventLog& log, const RecordFields& fields);
void append_operation_record(EventLog& log, const RecordFields& fields);

}  // namespace pc4pm
