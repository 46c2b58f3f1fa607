#include "pc4pm/core/log.hpp"

#include <algorithm>
#include <unordered_set>

#include "pc4pm/error.hpp"

namespace pc4pm {

namespace {

const std::string kEmpty;

constexpr std::string_view kPrivacyExtensionName = "Privacy";
constexpr std::string_view kPrivacyPrefix = "privacy";
constexpr std::string_view kPrivacyUri = "http://www.xes-standard.org/privacy.xesext";

void violation(const std::string& message) {
  throw Error(ErrorCode::kSchemaViolation, message);
}

}  // namespace

Event Event::make(std::string activity, Timestamp timestamp,
                  std::optional<std::string> resource) {
  Event event;
  event.attributes.set(std::string(kConceptName), TypedValue::string(std::move(activity)));
  event.attributes.set(std::string(kTimeTimestamp), TypedValue::datetime(timestamp));
  if (resource) {
    event.attributes.set(std::string(kOrgResource), TypedValue::string(std::move(*resource)));
  }
  return event;
}

const std::string& Event::activity() const {
  const TypedValue* v = attributes.get(kConceptName);
  if (v == nullptr || !v->is_textual()) return kEmpty;
  return v->as_string();
}

Timestamp Event::timestamp() const {
  const TypedValue* v = attributes.get(kTimeTimestamp);
  if (v == nullptr || v->kind() != ValueKind::kDatetime) return Timestamp{};
  return v->as_datetime();
}

std::optional<std::string> Event::resource() const {
  const TypedValue* v = attributes.get(kOrgResource);
  if (v == nullptr) return std::nullopt;
  return v->to_text();
}

void Event::set_activity(std::string activity) {
  attributes.set(std::string(kConceptName), TypedValue::string(std::move(activity)));
}

void Event::set_timestamp(Timestamp timestamp) {
  attributes.set(std::string(kTimeTimestamp), TypedValue::datetime(timestamp));
}

Trace Trace::make(std::string case_id, std::vector<Event> events) {
  Trace trace;
  trace.attributes.set(std::string(kConceptName), TypedValue::string(std::move(case_id)));
  trace.events = std::move(events);
  return trace;
}

const std::string& Trace::case_id() const {
  const TypedValue* v = attributes.get(kConceptName);
  if (v == nullptr || !v->is_textual()) return kEmpty;
  return v->as_string();
}

std::vector<std::string> Trace::activities() const {
  std::vector<std::string> out;
  out.reserve(events.size());
  for (const auto& event : events) out.push_back(event.activity());
  return out;
}

std::size_t EventLog::event_count() const {
  std::size_t n = 0;
  for (const auto& trace : traces) n += trace.events.size();
  return n;
}

std::set<std::string> EventLog::alphabet() const {
  std::set<std::string> out;
  for (const auto& trace : traces) {
    for (const auto& event : trace.events) out.insert(event.activity());
  }
  return out;
}

const Trace* EventLog::find_trace(std::string_view case_id) const {
  for (const auto& trace : traces) {
    if (trace.case_id() == case_id) return &trace;
  }
  return nullptr;
}

bool log_has_attribute(const EventLog& log, AttributeLevel level, std::string_view key) {
  if (level == AttributeLevel::kEvent) {
    if (log.event_globals.contains(key)) return true;
    for (const auto& trace : log.traces) {
      for (const auto& event : trace.events) {
        if (event.attributes.contains(key)) return true;
      }
    }
    return false;
  }
  if (log.trace_globals.contains(key)) return true;
  for (const auto& trace : log.traces) {
    if (trace.attributes.contains(key)) return true;
  }
  return false;
}

void fill_global_defaults(EventLog& log) {
  for (auto& trace : log.traces) {
    for (const auto& global : log.trace_globals) {
      if (!trace.attributes.contains(global.key)) trace.attributes.set(global);
    }
    for (auto& event : trace.events) {
      for (const auto& global : log.event_globals) {
        if (!event.attributes.contains(global.key)) event.attributes.set(global);
      }
    }
  }
}

void check_invariants(const EventLog& log) {
  std::unordered_set<std::string> case_ids;
  for (const auto& trace : log.traces) {
    const std::string& id = trace.case_id();
    if (id.empty()) violation("trace without case id");
    if (!case_ids.insert(id).second) violation("duplicate case id '" + id + "'");
    for (const auto& global : log.trace_globals) {
      if (!trace.attributes.contains(global.key)) {
        violation("trace '" + id + "' lacks global attribute '" + global.key + "'");
      }
    }
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      const Event& event = trace.events[i];
      const TypedValue* name = event.attributes.get(kConceptName);
      if (name == nullptr || !name->is_textual() || name->as_string().empty()) {
        violation("event without activity in trace '" + id + "'");
      }
      const TypedValue* time = event.attributes.get(kTimeTimestamp);
      if (time == nullptr || time->kind() != ValueKind::kDatetime) {
        violation("event without timestamp in trace '" + id + "'");
      }
      if (i > 0 && event.timestamp() < trace.events[i - 1].timestamp()) {
        violation("events out of timestamp order in trace '" + id + "'");
      }
      for (const auto& global : log.event_globals) {
        if (!event.attributes.contains(global.key)) {
          violation("event in trace '" + id + "' lacks global attribute '" +
                    global.key + "'");
        }
      }
    }
  }
  if (!log.privacy_metadata.contiguous()) violation("privacy metadata seq not contiguous");
}

void append_operation_record(EventLog& log, const RecordFields& fields) {
  bool declared = std::any_of(log.extensions.begin(), log.extensions.end(),
                              [](const Extension& e) { return e.prefix == kPrivacyPrefix; });
  if (!declared) {
    log.extensions.push_back(Extension{std::string(kPrivacyExtensionName),
                                       std::string(kPrivacyPrefix),
                                       std::string(kPrivacyUri)});
  }
  log.privacy_metadata.append(fields);
}

EventLog attach_operation_record(const EventLog& log, const RecordFields& fields) {
  EventLog out = log;
  append_operation_record(out, fields);
  return out;
}

}  // namespace pc4pm
