#include "pc4pm/core/metadata.hpp"

#include "pc4pm/util/crypto.hpp"

namespace pc4pm {

std::string_view operation_kind_name(OperationKind kind) {
  switch (kind) {
    case OperationKind::kSuppression: return "suppression";
    case OperationKind::kAddition: return "addition";
    case OperationKind::kSubstitution: return "substitution";
    case OperationKind::kCondensation: return "condensation";
    case OperationKind::kSwapping: return "swapping";
    case OperationKind::kGeneralization: return "generalization";
    case OperationKind::kCryptography: return "cryptography";
  }
  return "";
}

std::optional<OperationKind> parse_operation_kind(std::string_view name) {
  for (auto kind : {OperationKind::kSuppression, OperationKind::kAddition,
                    OperationKind::kSubstitution, OperationKind::kCondensation,
                    OperationKind::kSwapping, OperationKind::kGeneralization,
                    OperationKind::kCryptography}) {
    if (operation_kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view operation_level_name(OperationLevel level) {
  switch (level) {
    case OperationLevel::kEvent: return "event";
    case OperationLevel::kTrace: return "trace";
    case OperationLevel::kAttribute: return "attribute";
    case OperationLevel::kLog: return "log";
  }
  return "";
}

std::optional<OperationLevel> parse_operation_level(std::string_view name) {
  for (auto level : {OperationLevel::kEvent, OperationLevel::kTrace,
                     OperationLevel::kAttribute, OperationLevel::kLog}) {
    if (operation_level_name(level) == name) return level;
  }
  return std::nullopt;
}

void PrivacyMetadata::append(const RecordFields& fields) {
  OperationRecord record;
  record.seq = static_cast<std::uint32_t>(records.size() + 1);
  record.kind = fields.kind;
  record.level = fields.level;
  record.target_attributes = fields.target_attributes;
  record.parameter_digest = fields.parameter_digest;
  record.applied_at = fields.applied_at;
  records.push_back(std::move(record));
}

bool PrivacyMetadata::contiguous() const {
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].seq != i + 1) return false;
  }
  return true;
}

std::string parameter_digest(std::string_view canonical_parameters) {
  return sha256_hex(canonical_parameters).substr(0, 16);
}

}  // namespace pc4pm
