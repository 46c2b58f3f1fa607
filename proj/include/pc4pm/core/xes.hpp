#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pc4pm/core/log.hpp"

namespace pc4pm {

inline constexpr std::string_view kPrivacyMetadataKey = "privacy:metadata";

// Reads an XES document. Events are stably ordered by timestamp, global
// defaults are filled in, and the "privacy:metadata" log container is decoded
// into EventLog::privacy_metadata.
//
// Throws ParseError with code kMalformedXml when the input is not XML, and
// kSchemaViolation when the XES structure is broken (bad nesting, missing or
// unparseable mandatory attributes, duplicate case ids).
EventLog parse_xes(std::string_view raw);

// Canonical serialization: attribute maps in key order, timestamps in UTC with
// milliseconds, reals in shortest round-trip form.
std::string write_xes(const EventLog& log);

EventLog read_xes_file(const std::filesystem::path& path);
void write_xes_file(const EventLog& log, const std::filesystem::path& path);

// Content identifier of a log: 16 hex chars of SHA-256 over write_xes(log).
std::string log_id(const EventLog& log);

}  // namespace pc4pm
