#include "pc4pm/anon/selector.hpp"

#include <algorithm>

#include "pc4pm/error.hpp"

namespace pc4pm {

std::optional<Comparator> parse_comparator(std::string_view symbol) {
  if (symbol == "=" || symbol == "==") return Comparator::kEq;
  if (symbol == "!=" || symbol == "<>") return Comparator::kNe;
  if (symbol == "<") return Comparator::kLt;
  if (symbol == "<=") return Comparator::kLe;
  if (symbol == ">") return Comparator::kGt;
  if (symbol == ">=") return Comparator::kGe;
  if (symbol == "in") return Comparator::kIn;
  return std::nullopt;
}

std::string_view comparator_symbol(Comparator op) {
  switch (op) {
    case Comparator::kEq: return "=";
    case Comparator::kNe: return "!=";
    case Comparator::kLt: return "<";
    case Comparator::kLe: return "<=";
    case Comparator::kGt: return ">";
    case Comparator::kGe: return ">=";
    case Comparator::kIn: return "in";
  }
  return "";
}

Selector Selector::where(AttributeLevel level, std::string key, Comparator op, TypedValue value) {
  return Selector{level, {Atom{std::move(key), op, {std::move(value)}}}};
}

namespace {

// -1, 0, 1; numeric kinds compare by value across int/real.
int compare(const TypedValue& a, const TypedValue& b) {
  if (a.is_numeric() && b.is_numeric()) {
    double x = a.as_number();
    double y = b.as_number();
    return x < y ? -1 : (y < x ? 1 : 0);
  }
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

bool evaluate(const Atom& atom, const TypedValue& actual) {
  switch (atom.op) {
    case Comparator::kEq: return compare(actual, atom.values.front()) == 0;
    case Comparator::kNe: return compare(actual, atom.values.front()) != 0;
    case Comparator::kLt: return compare(actual, atom.values.front()) < 0;
    case Comparator::kLe: return compare(actual, atom.values.front()) <= 0;
    case Comparator::kGt: return compare(actual, atom.values.front()) > 0;
    case Comparator::kGe: return compare(actual, atom.values.front()) >= 0;
    case Comparator::kIn:
      return std::any_of(atom.values.begin(), atom.values.end(),
                         [&](const TypedValue& v) { return compare(actual, v) == 0; });
  }
  return false;
}

bool compatible(ValueKind a, ValueKind b) {
  auto numeric = [](ValueKind k) { return k == ValueKind::kInteger || k == ValueKind::kReal; };
  auto textual = [](ValueKind k) { return k == ValueKind::kString || k == ValueKind::kId; };
  return a == b || (numeric(a) && numeric(b)) || (textual(a) && textual(b));
}

}  // namespace

bool Selector::matches(const AttributeMap& attributes) const {
  for (const auto& atom : atoms) {
    const TypedValue* actual = attributes.get(atom.key);
    if (actual == nullptr || !evaluate(atom, *actual)) return false;
  }
  return true;
}

std::optional<ValueKind> attribute_kind(const EventLog& log, AttributeLevel level,
                                        std::string_view key) {
  const AttributeMap& globals =
      level == AttributeLevel::kEvent ? log.event_globals : log.trace_globals;
  if (const TypedValue* v = globals.get(key)) return v->kind();
  for (const auto& trace : log.traces) {
    if (level == AttributeLevel::kTrace) {
      if (const TypedValue* v = trace.attributes.get(key)) return v->kind();
      continue;
    }
    for (const auto& event : trace.events) {
      if (const TypedValue* v = event.attributes.get(key)) return v->kind();
    }
  }
  return std::nullopt;
}

void Selector::check_against(const EventLog& log) const {
  for (const auto& atom : atoms) {
    auto kind = attribute_kind(log, level, atom.key);
    if (!kind) {
      throw Error(ErrorCode::kUnknownAttribute, "unknown attribute '" + atom.key + "'");
    }
    if (atom.values.empty() || (atom.op != Comparator::kIn && atom.values.size() != 1)) {
      throw Error(ErrorCode::kInvalidParameter,
                  "comparator " + std::string(comparator_symbol(atom.op)) + " on '" + atom.key +
                      "' needs " + (atom.op == Comparator::kIn ? "at least one value" : "one value"));
    }
    bool ordered = atom.op == Comparator::kLt || atom.op == Comparator::kLe ||
                   atom.op == Comparator::kGt || atom.op == Comparator::kGe;
    if (ordered && (*kind == ValueKind::kBoolean || *kind == ValueKind::kList ||
                    *kind == ValueKind::kContainer)) {
      throw Error(ErrorCode::kInvalidParameter,
                  "attribute '" + atom.key + "' of kind " + std::string(value_kind_name(*kind)) +
                      " is not ordered");
    }
    for (const auto& value : atom.values) {
      if (!compatible(*kind, value.kind())) {
        throw Error(ErrorCode::kInvalidParameter,
                    "attribute '" + atom.key + "' is " + std::string(value_kind_name(*kind)) +
                        " but the selector compares it with a " +
                        std::string(value_kind_name(value.kind())));
      }
    }
  }
}

}  // namespace pc4pm
