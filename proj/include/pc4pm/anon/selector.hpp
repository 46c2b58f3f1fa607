#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pc4pm/core/log.hpp"

namespace pc4pm {

enum class Comparator { kEq, kNe, kLt, kLe, kGt, kGe, kIn };

std::optional<Comparator> parse_comparator(std::string_view symbol);
std::string_view comparator_symbol(Comparator op);

struct Atom {
  std::string key;
  Comparator op = Comparator::kEq;
  // One value, or the candidate set for kIn.
  std::vector<TypedValue> values;
};

// Conjunction of atoms over event payloads or trace attributes. An atom on an
// attribute the element does not carry is false. No atoms matches everything.
struct Selector {
  AttributeLevel level = AttributeLevel::kEvent;
  std::vector<Atom> atoms;

  static Selector where(AttributeLevel level, std::string key, Comparator op, TypedValue value);

  bool matches(const AttributeMap& attributes) const;

  // Throws UnknownAttribute for keys absent from the log at this level and
  // InvalidParameter for comparators that do not type-check.
  void check_against(const EventLog& log) const;
};

// Kind of the first occurrence of `key` at `level` (globals first).
std::optional<ValueKind> attribute_kind(const EventLog& log, AttributeLevel level,
                                        std::string_view key);

}  // namespace pc4pm
