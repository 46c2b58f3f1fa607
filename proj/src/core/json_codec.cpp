#include "pc4pm/core/json_codec.hpp"

#include <cmath>
#include <stdexcept>

namespace pc4pm {

Json record_to_json(const OperationRecord& record) {
  Json json;
  json["seq"] = record.seq;
  json["operation_kind"] = operation_kind_name(record.kind);
  json["level"] = operation_level_name(record.level);
  json["target_attributes"] = Json::array();
  for (const auto& target : record.target_attributes) json["target_attributes"].push_back(target);
  json["parameter_digest"] = record.parameter_digest;
  json["applied_at"] = format_timestamp(record.applied_at);
  return json;
}

OperationRecord record_from_json(const Json& json) {
  OperationRecord record;
  record.seq = json.at("seq").get<std::uint32_t>();
  auto kind = parse_operation_kind(json.at("operation_kind").get<std::string>());
  auto level = parse_operation_level(json.at("level").get<std::string>());
  auto applied = parse_timestamp(json.at("applied_at").get<std::string>());
  if (!kind || !level || !applied) throw std::invalid_argument("invalid operation record");
  record.kind = *kind;
  record.level = *level;
  record.applied_at = *applied;
  record.parameter_digest = json.at("parameter_digest").get<std::string>();
  for (const auto& target : json.at("target_attributes")) {
    record.target_attributes.insert(target.get<std::string>());
  }
  return record;
}

Json metadata_to_json(const PrivacyMetadata& metadata) {
  Json out = Json::array();
  for (const auto& record : metadata.records) out.push_back(record_to_json(record));
  return out;
}

PrivacyMetadata metadata_from_json(const Json& json) {
  PrivacyMetadata metadata;
  for (const auto& item : json) metadata.records.push_back(record_from_json(item));
  if (!metadata.contiguous()) throw std::invalid_argument("metadata seq not contiguous");
  return metadata;
}

Json value_to_json(const TypedValue& value) {
  switch (value.kind()) {
    case ValueKind::kString:
    case ValueKind::kId:
      return value.as_string();
    case ValueKind::kInteger:
      return value.as_integer();
    case ValueKind::kReal:
      if (!std::isfinite(value.as_real())) return value.to_text();
      return value.as_real();
    case ValueKind::kBoolean:
      return value.as_boolean();
    case ValueKind::kDatetime:
      return format_timestamp(value.as_datetime());
    case ValueKind::kList:
    case ValueKind::kContainer:
      return nullptr;
  }
  return nullptr;
}

std::optional<TypedValue> value_from_json(ValueKind kind, const Json& json) {
  switch (kind) {
    case ValueKind::kString:
    case ValueKind::kId:
      if (!json.is_string()) return std::nullopt;
      return TypedValue::parse(kind, json.get<std::string>());
    case ValueKind::kInteger:
      if (json.is_number_integer()) return TypedValue::integer(json.get<std::int64_t>());
      if (json.is_string()) return TypedValue::parse(kind, json.get<std::string>());
      return std::nullopt;
    case ValueKind::kReal:
      if (json.is_number()) return TypedValue::real(json.get<double>());
      if (json.is_string()) return TypedValue::parse(kind, json.get<std::string>());
      return std::nullopt;
    case ValueKind::kBoolean:
      if (json.is_boolean()) return TypedValue::boolean(json.get<bool>());
      if (json.is_string()) return TypedValue::parse(kind, json.get<std::string>());
      return std::nullopt;
    case ValueKind::kDatetime:
      if (!json.is_string()) return std::nullopt;
      return TypedValue::parse(kind, json.get<std::string>());
    case ValueKind::kList:
    case ValueKind::kContainer:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace pc4pm
