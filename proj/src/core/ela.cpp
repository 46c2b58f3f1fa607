#include "pc4pm/core/ela.hpp"

#include "pc4pm/core/json_codec.hpp"
#include "pc4pm/error.hpp"
#include "pc4pm/util/io.hpp"

namespace pc4pm {

namespace {

[[noreturn]] void malformed(const std::string& message) {
  throw Error(ErrorCode::kMalformedAbstraction, message);
}

const Json& require(const Json& object, const char* key, const char* where) {
  if (!object.is_object() || !object.contains(key)) {
    malformed(std::string("missing '") + key + "' in " + where);
  }
  return object.at(key);
}

std::string require_string(const Json& object, const char* key, const char* where) {
  const Json& value = require(object, key, where);
  if (!value.is_string()) malformed(std::string("'") + key + "' must be a string");
  return value.get<std::string>();
}

}  // namespace

std::size_t EventLogAbstraction::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  return std::string_view::npos;
}

void validate(const EventLogAbstraction& ela) {
  if (ela.header.abstraction_kind.empty()) malformed("empty abstraction_kind");
  if (!ela.header.privacy_metadata.contiguous()) malformed("privacy metadata seq not contiguous");
  for (const auto& column : ela.columns) {
    if (column.kind == ValueKind::kList || column.kind == ValueKind::kContainer) {
      malformed("column '" + column.name + "' must have a scalar type");
    }
  }
  for (std::size_t r = 0; r < ela.rows.size(); ++r) {
    const Row& row = ela.rows[r];
    if (row.size() != ela.columns.size()) {
      malformed("row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                " cells, expected " + std::to_string(ela.columns.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c].kind() != ela.columns[c].kind) {
        malformed("row " + std::to_string(r) + " cell '" + ela.columns[c].name +
                  "' does not match its column type");
      }
    }
  }
}

EventLogAbstraction parse_ela(std::string_view raw) {
  Json doc;
  try {
    doc = Json::parse(raw);
  } catch (const Json::parse_error& e) {
    malformed(std::string("not a JSON document: ") + e.what());
  }
  EventLogAbstraction ela;
  const Json& header = require(doc, "header", "document");
  ela.header.abstraction_kind = require_string(header, "abstraction_kind", "header");
  ela.header.origin_log_id = require_string(header, "origin_log_id", "header");
  ela.header.technique = require_string(header, "technique", "header");
  try {
    ela.header.privacy_metadata =
        metadata_from_json(require(header, "privacy_metadata", "header"));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    malformed(std::string("invalid privacy_metadata: ") + e.what());
  }

  const Json& columns = require(doc, "columns", "document");
  if (!columns.is_array()) malformed("'columns' must be an array");
  for (const auto& column : columns) {
    auto kind = parse_value_kind(require_string(column, "type", "column"));
    if (!kind) malformed("unknown column type");
    ela.columns.push_back(Column{require_string(column, "name", "column"), *kind});
  }

  const Json& rows = require(doc, "rows", "document");
  if (!rows.is_array()) malformed("'rows' must be an array");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Json& cells = rows[r];
    if (!cells.is_array() || cells.size() != ela.columns.size()) {
      malformed("row " + std::to_string(r) + " arity does not match columns");
    }
    Row row;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto value = value_from_json(ela.columns[c].kind, cells[c]);
      if (!value) {
        malformed("row " + std::to_string(r) + " cell '" + ela.columns[c].name +
                  "' does not match its column type");
      }
      row.push_back(std::move(*value));
    }
    ela.rows.push_back(std::move(row));
  }
  validate(ela);
  return ela;
}

std::string write_ela(const EventLogAbstraction& ela) {
  validate(ela);
  Json doc;
  doc["header"]["abstraction_kind"] = ela.header.abstraction_kind;
  doc["header"]["origin_log_id"] = ela.header.origin_log_id;
  doc["header"]["technique"] = ela.header.technique;
  doc["header"]["privacy_metadata"] = metadata_to_json(ela.header.privacy_metadata);
  doc["columns"] = Json::array();
  for (const auto& column : ela.columns) {
    doc["columns"].push_back({{"name", column.name}, {"type", value_kind_name(column.kind)}});
  }
  doc["rows"] = Json::array();
  for (const auto& row : ela.rows) {
    Json cells = Json::array();
    for (const auto& cell : row) cells.push_back(value_to_json(cell));
    doc["rows"].push_back(std::move(cells));
  }
  return doc.dump(2) + "\n";
}

EventLogAbstraction read_ela_file(const std::filesystem::path& path) {
  return parse_ela(read_file(path));
}

void write_ela_file(const EventLogAbstraction& ela, const std::filesystem::path& path) {
  write_file(path, write_ela(ela));
}

}  // namespace pc4pm
