#include "pc4pm/core/value.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace pc4pm {

std::string_view value_kind_name(ValueKind kind) {
  switch (kind) {
    case ValueKind::kString: return "string";
    case ValueKind::kInteger: return "int";
    case ValueKind::kReal: return "float";
    case ValueKind::kBoolean: return "boolean";
    case ValueKind::kDatetime: return "date";
    case ValueKind::kId: return "id";
    case ValueKind::kList: return "list";
    case ValueKind::kContainer: return "container";
  }
  return "";
}

std::optional<ValueKind> parse_value_kind(std::string_view name) {
  if (name == "string") return ValueKind::kString;
  if (name == "int") return ValueKind::kInteger;
  if (name == "float") return ValueKind::kReal;
  if (name == "boolean") return ValueKind::kBoolean;
  if (name == "date") return ValueKind::kDatetime;
  if (name == "id") return ValueKind::kId;
  if (name == "list") return ValueKind::kList;
  if (name == "container") return ValueKind::kContainer;
  return std::nullopt;
}

std::optional<TypedValue> TypedValue::parse(ValueKind kind, std::string_view text) {
  switch (kind) {
    case ValueKind::kString:
      return TypedValue::string(std::string(text));
    case ValueKind::kId:
      return TypedValue::id(std::string(text));
    case ValueKind::kInteger: {
      std::int64_t v = 0;
      std::string_view body = text;
      if (!body.empty() && body.front() == '+') body.remove_prefix(1);
      auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
      if (ec != std::errc{} || ptr != body.data() + body.size() || body.empty()) {
        return std::nullopt;
      }
      return TypedValue::integer(v);
    }
    case ValueKind::kReal: {
      // strtod accepts the exponent/inf/nan spellings found in real logs.
      std::string buf(text);
      if (buf.empty()) return std::nullopt;
      char* end = nullptr;
      double v = std::strtod(buf.c_str(), &end);
      if (end != buf.c_str() + buf.size()) return std::nullopt;
      return TypedValue::real(v);
    }
    case ValueKind::kBoolean: {
      std::string lower(text);
      std::transform(lower.begin(), lower.end(), lower.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (lower == "true" || lower == "1") return TypedValue::boolean(true);
      if (lower == "false" || lower == "0") return TypedValue::boolean(false);
      return std::nullopt;
    }
    case ValueKind::kDatetime: {
      auto ts = parse_timestamp(text);
      if (!ts) return std::nullopt;
      return TypedValue::datetime(*ts);
    }
    case ValueKind::kList:
      return TypedValue::list();
    case ValueKind::kContainer:
      return TypedValue::container();
  }
  return std::nullopt;
}

double TypedValue::as_number() const {
  if (kind_ == ValueKind::kInteger) return static_cast<double>(as_integer());
  return as_real();
}

std::string TypedValue::to_text() const {
  switch (kind_) {
    case ValueKind::kString:
    case ValueKind::kId:
      return as_string();
    case ValueKind::kInteger:
      return std::to_string(as_integer());
    case ValueKind::kReal: {
      double v = as_real();
      if (std::isnan(v)) return "NaN";
      if (std::isinf(v)) return v > 0 ? "INF" : "-INF";
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      return std::string(buf, ptr);
    }
    case ValueKind::kBoolean:
      return as_boolean() ? "true" : "false";
    case ValueKind::kDatetime:
      return format_timestamp(as_datetime());
    case ValueKind::kList:
    case ValueKind::kContainer:
      return {};
  }
  return {};
}

bool operator<(const TypedValue& a, const TypedValue& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  return a.payload_ < b.payload_;
}

void Attribute::normalize() {
  for (auto& child : children) child.normalize();
  if (value.kind() == ValueKind::kList) return;
  std::stable_sort(children.begin(), children.end(),
                   [](const Attribute& a, const Attribute& b) { return a.key < b.key; });
  // Later duplicates win, matching AttributeMap::set semantics.
  std::vector<Attribute> unique;
  for (auto& child : children) {
    if (!unique.empty() && unique.back().key == child.key) {
      unique.back() = std::move(child);
    } else {
      unique.push_back(std::move(child));
    }
  }
  children = std::move(unique);
}

namespace {

auto key_less = [](const Attribute& a, std::string_view key) { return a.key < key; };

}  // namespace

const Attribute* AttributeMap::find(std::string_view key) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), key, key_less);
  if (it == items_.end() || it->key != key) return nullptr;
  return &*it;
}

Attribute* AttributeMap::find(std::string_view key) {
  auto it = std::lower_bound(items_.begin(), items_.end(), key, key_less);
  if (it == items_.end() || it->key != key) return nullptr;
  return &*it;
}

const TypedValue* AttributeMap::get(std::string_view key) const {
  const Attribute* attribute = find(key);
  return attribute ? &attribute->value : nullptr;
}

void AttributeMap::set(Attribute attribute) {
  attribute.normalize();
  auto it = std::lower_bound(items_.begin(), items_.end(),
                             std::string_view(attribute.key), key_less);
  if (it != items_.end() && it->key == attribute.key) {
    *it = std::move(attribute);
  } else {
    items_.insert(it, std::move(attribute));
  }
}

void AttributeMap::set(std::string key, TypedValue value) {
  set(Attribute{std::move(key), std::move(value), {}});
}

bool AttributeMap::erase(std::string_view key) {
  auto it = std::lower_bound(items_.begin(), items_.end(), key, key_less);
  if (it == items_.end() || it->key != key) return false;
  items_.erase(it);
  return true;
}

}  // namespace pc4pm
