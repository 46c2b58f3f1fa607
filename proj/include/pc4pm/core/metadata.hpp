#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pc4pm/core/timestamp.hpp"

namespace pc4pm {

enum class OperationKind {
  kSuppression,
  kAddition,
  kSubstitution,
  kCondensation,
  kSwapping,
  kGeneralization,
  kCryptography,
};

enum class OperationLevel { kEvent, kTrace, kAttribute, kLog };

std::string_view operation_kind_name(OperationKind kind);
std::optional<OperationKind> parse_operation_kind(std::string_view name);
std::string_view operation_level_name(OperationLevel level);
std::optional<OperationLevel> parse_operation_level(std::string_view name);

// What a caller supplies when stamping a transformation; seq is assigned on
// append.
struct RecordFields {
  OperationKind kind = OperationKind::kSuppression;
  OperationLevel level = OperationLevel::kEvent;
  std::set<std::string> target_attributes;
  std::string parameter_digest;
  Timestamp applied_at;
};

struct OperationRecord {
  std::uint32_t seq = 0;
  OperationKind kind = OperationKind::kSuppression;
  OperationLevel level = OperationLevel::kEvent;
  std::set<std::string> target_attributes;
  std::string parameter_digest;
  Timestamp applied_at;

  friend bool operator==(const OperationRecord&, const OperationRecord&) = default;
};

// Append-only, ordered by application.
struct PrivacyMetadata {
  std::vector<OperationRecord> records;

  void append(const RecordFields& fields);
  bool contiguous() const;

  friend bool operator==(const PrivacyMetadata&, const PrivacyMetadata&) = default;
};

// 16 hex chars of SHA-256 over the canonical parameter text. Callers must
// leave secrets out of the text.
std::string parameter_digest(std::string_view canonical_parameters);

}  // namespace pc4pm
