#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pc4pm/core/metadata.hpp"
#include "pc4pm/core/value.hpp"

namespace pc4pm {

struct AbstractionHeader {
  std::string abstraction_kind;
  std::string origin_log_id;
  std::string technique;
  PrivacyMetadata privacy_metadata;

  friend bool operator==(const AbstractionHeader&, const AbstractionHeader&) = default;
};

struct Column {
  std::string name;
  ValueKind kind = ValueKind::kString;

  friend bool operator==(const Column&, const Column&) = default;
};

using Row = std::vector<TypedValue>;

// A non-XES artifact derived from a log: a header plus a typed table. Every
// cell's kind equals its column's kind.
struct EventLogAbstraction {
  AbstractionHeader header;
  std::vector<Column> columns;
  std::vector<Row> rows;

  std::size_t column_index(std::string_view name) const;  // npos if absent

  friend bool operator==(const EventLogAbstraction&, const EventLogAbstraction&) = default;
};

// Throws Error(kMalformedAbstraction) on broken invariants.
void validate(const EventLogAbstraction& ela);

// The .ela encoding is a JSON document:
//   {"header": {"abstraction_kind", "origin_log_id", "technique",
//               "privacy_metadata": [records]},
//    "columns": [{"name", "type"}], "rows": [[cell, ...], ...]}
// Cells are plain JSON values interpreted through the column type.
EventLogAbstraction parse_ela(std::string_view raw);
std::string write_ela(const EventLogAbstraction& ela);

EventLogAbstraction read_ela_file(const std::filesystem::path& path);
void write_ela_file(const EventLogAbstraction& ela, const std::filesystem::path& path);

}  // namespace pc4pm
