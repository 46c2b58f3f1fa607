#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pc4pm/core/timestamp.hpp"

namespace pc4pm {

// The six scalar XES kinds plus the two nesting kinds (list, container) the
// standard uses for structured attributes.
enum class ValueKind {
  kString,
  kInteger,
  kReal,
  kBoolean,
  kDatetime,
  kId,
  kList,
  kContainer,
};

std::string_view value_kind_name(ValueKind kind);
std::optional<ValueKind> parse_value_kind(std::string_view name);

// A scalar attribute value whose payload always agrees with its kind. List and
// container values carry no payload; their members live in Attribute::children.
class TypedValue {
 public:
  TypedValue() : TypedValue(ValueKind::kString, std::string{}) {}

  static TypedValue string(std::string v) { return {ValueKind::kString, std::move(v)}; }
  static TypedValue id(std::string v) { return {ValueKind::kId, std::move(v)}; }
  static TypedValue integer(std::int64_t v) { return {ValueKind::kInteger, v}; }
  static TypedValue real(double v) { return {ValueKind::kReal, v}; }
  static TypedValue boolean(bool v) { return {ValueKind::kBoolean, v}; }
  static TypedValue datetime(Timestamp v) { return {ValueKind::kDatetime, v}; }
  static TypedValue list() { return {ValueKind::kList, std::monostate{}}; }
  static TypedValue container() { return {ValueKind::kContainer, std::monostate{}}; }

  // Parses the textual form used in XES value="..." attributes.
  static std::optional<TypedValue> parse(ValueKind kind, std::string_view text);

  ValueKind kind() const noexcept { return kind_; }
  bool is_numeric() const noexcept {
    return kind_ == ValueKind::kInteger || kind_ == ValueKind::kReal;
  }
  bool is_textual() const noexcept {
    return kind_ == ValueKind::kString || kind_ == ValueKind::kId;
  }

  // Preconditions: the kind matches the accessor.
  const std::string& as_string() const { return std::get<std::string>(payload_); }
  std::int64_t as_integer() const { return std::get<std::int64_t>(payload_); }
  double as_real() const { return std::get<double>(payload_); }
  bool as_boolean() const { return std::get<bool>(payload_); }
  Timestamp as_datetime() const { return std::get<Timestamp>(payload_); }

  // Integer or real as double.
  double as_number() const;

  // Canonical text: shortest round-trip decimal for reals, ISO-8601 for
  // datetimes, "true"/"false" for booleans, empty for list/container.
  std::string to_text() const;

  friend bool operator==(const TypedValue&, const TypedValue&) = default;
  // Total order: kind first, then payload.
  friend bool operator<(const TypedValue& a, const TypedValue& b);

 private:
  using Payload =
      std::variant<std::monostate, std::string, std::int64_t, double, bool, Timestamp>;

  TypedValue(ValueKind kind, Payload payload)
      : kind_(kind), payload_(std::move(payload)) {}

  ValueKind kind_;
  Payload payload_;
};

class AttributeMap;

// One XES attribute. Non-list attributes keep `children` sorted by key with
// unique keys (nested meta-attributes or container members); list attributes
// keep their items in document order and may repeat keys.
struct Attribute {
  std::string key;
  TypedValue value;
  std::vector<Attribute> children;

  // Restores the child ordering invariant recursively.
  void normalize();

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

// Attribute collection keyed by attribute key, kept in key order so the
// serialized form is canonical.
class AttributeMap {
 public:
  using const_iterator = std::vector<Attribute>::const_iterator;

  AttributeMap() = default;

  const Attribute* find(std::string_view key) const;
  Attribute* find(std::string_view key);
  const TypedValue* get(std::string_view key) const;
  bool contains(std::string_view key) const { return find(key) != nullptr; }

  // Inserts or replaces the attribute with the same key.
  void set(Attribute attribute);
  void set(std::string key, TypedValue value);
  bool erase(std::string_view key);

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const_iterator begin() const noexcept { return items_.begin(); }
  const_iterator end() const noexcept { return items_.end(); }

  friend bool operator==(const AttributeMap&, const AttributeMap&) = default;

 private:
  std::vector<Attribute> items_;
};

}  // namespace pc4pm
