#include "pc4pm/core/xes.hpp"

#include <expat.h>

#include <algorithm>
#include <charconv>
#include <memory>
#include <unordered_set>

#include "pc4pm/error.hpp"
#include "pc4pm/util/crypto.hpp"
#include "pc4pm/util/io.hpp"

namespace pc4pm {

namespace {

// Minimal element tree; XES carries no meaningful text content.
struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlElement> children;
  std::size_t line = 0;
  std::size_t column = 0;

  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

struct TreeBuilder {
  XML_Parser parser = nullptr;
  XmlElement root;
  bool has_root = false;
  std::vector<XmlElement*> stack;
};

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
  auto* builder = static_cast<TreeBuilder*>(data);
  XmlElement element;
  element.name = name;
  element.line = XML_GetCurrentLineNumber(builder->parser);
  element.column = XML_GetCurrentColumnNumber(builder->parser) + 1;
  for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
    element.attributes.emplace_back(attrs[i], attrs[i + 1]);
  }
  if (builder->stack.empty()) {
    builder->root = std::move(element);
    builder->has_root = true;
    builder->stack.push_back(&builder->root);
  } else {
    auto& children = builder->stack.back()->children;
    children.push_back(std::move(element));
    builder->stack.push_back(&children.back());
  }
}

void XMLCALL on_end(void* data, const XML_Char*) {
  static_cast<TreeBuilder*>(data)->stack.pop_back();
}

XmlElement parse_tree(std::string_view raw) {
  TreeBuilder builder;
  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate(nullptr), &XML_ParserFree);
  builder.parser = parser.get();
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  if (XML_Parse(parser.get(), raw.data(), static_cast<int>(raw.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    throw ParseError(ErrorCode::kMalformedXml,
                     std::string("malformed XML: ") +
                         XML_ErrorString(XML_GetErrorCode(parser.get())),
                     XML_GetCurrentLineNumber(parser.get()),
                     XML_GetCurrentColumnNumber(parser.get()) + 1);
  }
  return std::move(builder.root);
}

[[noreturn]] void schema_error(const XmlElement& at, const std::string& message) {
  throw ParseError(ErrorCode::kSchemaViolation, message, at.line, at.column);
}

bool is_attribute_element(std::string_view name) {
  return parse_value_kind(name).has_value();
}

Attribute read_attribute(const XmlElement& element) {
  auto kind = parse_value_kind(element.name);
  if (!kind) schema_error(element, "unexpected element <" + element.name + ">");
  const std::string* key = element.attribute("key");
  if (key == nullptr) schema_error(element, "<" + element.name + "> without key");

  Attribute attribute;
  attribute.key = *key;
  if (*kind == ValueKind::kList || *kind == ValueKind::kContainer) {
    attribute.value = *TypedValue::parse(*kind, "");
  } else {
    const std::string* text = element.attribute("value");
    if (text == nullptr) schema_error(element, "attribute '" + *key + "' without value");
    auto value = TypedValue::parse(*kind, *text);
    if (!value) {
      schema_error(element, "cannot parse " + element.name + " value '" + *text +
                                "' of attribute '" + *key + "'");
    }
    attribute.value = std::move(*value);
  }

  for (const auto& child : element.children) {
    if (child.name == "values" && *kind == ValueKind::kList) {
      for (const auto& item : child.children) {
        attribute.children.push_back(read_attribute(item));
      }
    } else {
      attribute.children.push_back(read_attribute(child));
    }
  }
  attribute.normalize();
  return attribute;
}

void read_attributes_into(const XmlElement& element, AttributeMap& target) {
  Attribute attribute = read_attribute(element);
  if (target.contains(attribute.key)) {
    schema_error(element, "duplicate attribute key '" + attribute.key + "'");
  }
  target.set(std::move(attribute));
}

const Attribute* child_named(const Attribute& parent, std::string_view key) {
  for (const auto& child : parent.children) {
    if (child.key == key) return &child;
  }
  return nullptr;
}

PrivacyMetadata decode_metadata(const Attribute& container, const XmlElement& at) {
  if (container.value.kind() != ValueKind::kContainer) {
    schema_error(at, "privacy:metadata must be a container");
  }
  std::vector<OperationRecord> records;
  for (const auto& item : container.children) {
    if (item.value.kind() != ValueKind::kContainer) {
      schema_error(at, "privacy:metadata record '" + item.key + "' is not a container");
    }
    OperationRecord record;
    auto [ptr, ec] = std::from_chars(item.key.data(), item.key.data() + item.key.size(),
                                     record.seq);
    if (ec != std::errc{} || ptr != item.key.data() + item.key.size()) {
      schema_error(at, "privacy:metadata record key '" + item.key + "' is not a sequence number");
    }
    auto text_of = [&](std::string_view key) -> std::string {
      const Attribute* field = child_named(item, key);
      if (field == nullptr || !field->value.is_textual()) {
        schema_error(at, "privacy:metadata record " + item.key + " lacks '" +
                             std::string(key) + "'");
      }
      return field->value.as_string();
    };
    auto kind = parse_operation_kind(text_of("operation_kind"));
    auto level = parse_operation_level(text_of("level"));
    auto applied = parse_timestamp(text_of("applied_at"));
    if (!kind || !level || !applied) {
      schema_error(at, "privacy:metadata record " + item.key + " has invalid fields");
    }
    record.kind = *kind;
    record.level = *level;
    record.applied_at = *applied;
    record.parameter_digest = text_of("parameter_digest");
    if (const Attribute* targets = child_named(item, "target_attributes")) {
      for (const auto& target : targets->children) {
        record.target_attributes.insert(target.value.to_text());
      }
    }
    records.push_back(std::move(record));
  }
  std::sort(records.begin(), records.end(),
            [](const OperationRecord& a, const OperationRecord& b) { return a.seq < b.seq; });
  PrivacyMetadata metadata{std::move(records)};
  if (!metadata.contiguous()) schema_error(at, "privacy:metadata seq values not contiguous");
  return metadata;
}

void check_event(const Event& event, const XmlElement& at) {
  const TypedValue* name = event.attributes.get(kConceptName);
  if (name == nullptr || !name->is_textual() || name->as_string().empty()) {
    schema_error(at, "event without concept:name");
  }
  const TypedValue* time = event.attributes.get(kTimeTimestamp);
  if (time == nullptr || time->kind() != ValueKind::kDatetime) {
    schema_error(at, "event without date time:timestamp");
  }
}

EventLog interpret(const XmlElement& root) {
  if (root.name != "log") schema_error(root, "root element must be <log>, got <" + root.name + ">");
  EventLog log;
  std::vector<const XmlElement*> trace_elements;
  const XmlElement* metadata_element = nullptr;

  for (const auto& child : root.children) {
    if (child.name == "extension") {
      auto get = [&](std::string_view k) {
        const std::string* v = child.attribute(k);
        return v ? *v : std::string{};
      };
      log.extensions.push_back(Extension{get("name"), get("prefix"), get("uri")});
    } else if (child.name == "classifier") {
      const std::string* name = child.attribute("name");
      const std::string* keys = child.attribute("keys");
      if (name == nullptr || keys == nullptr) schema_error(child, "classifier needs name and keys");
      log.classifiers.push_back(Classifier{*name, *keys});
    } else if (child.name == "global") {
      const std::string* scope = child.attribute("scope");
      AttributeMap* target = nullptr;
      if (scope == nullptr || *scope == "event") {
        target = &log.event_globals;
      } else if (*scope == "trace") {
        target = &log.trace_globals;
      } else {
        schema_error(child, "unknown global scope '" + *scope + "'");
      }
      for (const auto& attr : child.children) read_attributes_into(attr, *target);
    } else if (child.name == "trace") {
      trace_elements.push_back(&child);
    } else if (is_attribute_element(child.name)) {
      const std::string* key = child.attribute("key");
      if (key != nullptr && *key == kPrivacyMetadataKey) metadata_element = &child;
      read_attributes_into(child, log.attributes);
    } else {
      schema_error(child, "unexpected element <" + child.name + "> inside <log>");
    }
  }

  if (metadata_element != nullptr) {
    log.privacy_metadata =
        decode_metadata(*log.attributes.find(kPrivacyMetadataKey), *metadata_element);
    log.attributes.erase(kPrivacyMetadataKey);
  }

  std::vector<std::pair<const XmlElement*, std::vector<const XmlElement*>>> positions;
  for (const XmlElement* trace_element : trace_elements) {
    Trace trace;
    std::vector<const XmlElement*> event_elements;
    for (const auto& child : trace_element->children) {
      if (child.name == "event") {
        Event event;
        for (const auto& attr : child.children) {
          if (!is_attribute_element(attr.name)) {
            schema_error(attr, "unexpected element <" + attr.name + "> inside <event>");
          }
          read_attributes_into(attr, event.attributes);
        }
        trace.events.push_back(std::move(event));
        event_elements.push_back(&child);
      } else if (is_attribute_element(child.name)) {
        read_attributes_into(child, trace.attributes);
      } else {
        schema_error(child, "unexpected element <" + child.name + "> inside <trace>");
      }
    }
    log.traces.push_back(std::move(trace));
    positions.emplace_back(trace_element, std::move(event_elements));
  }

  fill_global_defaults(log);

  std::unordered_set<std::string> case_ids;
  for (std::size_t t = 0; t < log.traces.size(); ++t) {
    Trace& trace = log.traces[t];
    const XmlElement& trace_element = *positions[t].first;
    const TypedValue* case_id = trace.attributes.get(kConceptName);
    if (case_id == nullptr || !case_id->is_textual() || case_id->as_string().empty()) {
      schema_error(trace_element, "trace without concept:name");
    }
    if (!case_ids.insert(case_id->as_string()).second) {
      schema_error(trace_element, "duplicate case id '" + case_id->as_string() + "'");
    }
    for (std::size_t e = 0; e < trace.events.size(); ++e) {
      check_event(trace.events[e], *positions[t].second[e]);
    }
    std::stable_sort(trace.events.begin(), trace.events.end(),
                     [](const Event& a, const Event& b) { return a.timestamp() < b.timestamp(); });
  }
  return log;
}

// ---------------------------------------------------------------------------
// Writer

void escape_into(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
}

void write_attribute(std::string& out, const Attribute& attribute, int depth) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += '<';
  out += value_kind_name(attribute.value.kind());
  out += " key=\"";
  escape_into(out, attribute.key);
  out += '"';
  ValueKind kind = attribute.value.kind();
  if (kind != ValueKind::kList && kind != ValueKind::kContainer) {
    out += " value=\"";
    escape_into(out, attribute.value.to_text());
    out += '"';
  }
  if (attribute.children.empty()) {
    out += "/>\n";
    return;
  }
  out += ">\n";
  for (const auto& child : attribute.children) write_attribute(out, child, depth + 1);
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  out += "</";
  out += value_kind_name(kind);
  out += ">\n";
}

void write_map(std::string& out, const AttributeMap& map, int depth) {
  for (const auto& attribute : map) write_attribute(out, attribute, depth);
}

Attribute encode_metadata(const PrivacyMetadata& metadata) {
  Attribute root{std::string(kPrivacyMetadataKey), TypedValue::container(), {}};
  for (const auto& record : metadata.records) {
    Attribute item{std::to_string(record.seq), TypedValue::container(), {}};
    item.children.push_back(
        {"applied_at", TypedValue::string(format_timestamp(record.applied_at)), {}});
    item.children.push_back(
        {"level", TypedValue::string(std::string(operation_level_name(record.level))), {}});
    item.children.push_back(
        {"operation_kind", TypedValue::string(std::string(operation_kind_name(record.kind))), {}});
    item.children.push_back(
        {"parameter_digest", TypedValue::string(record.parameter_digest), {}});
    Attribute targets{"target_attributes", TypedValue::list(), {}};
    for (const auto& target : record.target_attributes) {
      targets.children.push_back({"attribute", TypedValue::string(target), {}});
    }
    item.children.push_back(std::move(targets));
    // Children above are already in key order; record containers stay in seq
    // order rather than string order.
    root.children.push_back(std::move(item));
  }
  return root;
}

}  // namespace

EventLog parse_xes(std::string_view raw) { return interpret(parse_tree(raw)); }

std::string write_xes(const EventLog& log) {
  std::string out;
  out.reserve(256 + log.event_count() * 160);
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<log xes.version=\"1849-2016\" xes.features=\"nested-attributes\" "
         "xmlns=\"http://www.xes-standard.org/\">\n";
  for (const auto& ext : log.extensions) {
    out += "  <extension name=\"";
    escape_into(out, ext.name);
    out += "\" prefix=\"";
    escape_into(out, ext.prefix);
    out += "\" uri=\"";
    escape_into(out, ext.uri);
    out += "\"/>\n";
  }
  auto write_globals = [&](const AttributeMap& globals, std::string_view scope) {
    if (globals.empty()) return;
    out += "  <global scope=\"";
    out += scope;
    out += "\">\n";
    write_map(out, globals, 2);
    out += "  </global>\n";
  };
  write_globals(log.trace_globals, "trace");
  write_globals(log.event_globals, "event");
  for (const auto& classifier : log.classifiers) {
    out += "  <classifier name=\"";
    escape_into(out, classifier.name);
    out += "\" keys=\"";
    escape_into(out, classifier.keys);
    out += "\"/>\n";
  }
  write_map(out, log.attributes, 1);
  if (!log.privacy_metadata.records.empty()) {
    write_attribute(out, encode_metadata(log.privacy_metadata), 1);
  }
  for (const auto& trace : log.traces) {
    out += "  <trace>\n";
    write_map(out, trace.attributes, 2);
    for (const auto& event : trace.events) {
      out += "    <event>\n";
      write_map(out, event.attributes, 3);
      out += "    </event>\n";
    }
    out += "  </trace>\n";
  }
  out += "</log>\n";
  return out;
}

EventLog read_xes_file(const std::filesystem::path& path) { return parse_xes(read_file(path)); }

void write_xes_file(const EventLog& log, const std::filesystem::path& path) {
  write_file(path, write_xes(log));
}

std::string log_id(const EventLog& log) { return sha256_hex(write_xes(log)).substr(0, 16); }

}  // namespace pc4pm
