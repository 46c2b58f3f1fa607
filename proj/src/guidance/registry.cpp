#include "pc4pm/guidance/registry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "pc4pm/anon/selector.hpp"
#include "pc4pm/error.hpp"
#include "pc4pm/registry_data.hpp"
#include "pc4pm/util/io.hpp"

namespace pc4pm {

namespace {

constexpr const char* kDimensionNames[] = {"pmps", "pmac", "prps", "prac"};

[[noreturn]] void bad_registry(const std::string& message) {
  throw Error(ErrorCode::kInvalidParameter, "registry: " + message);
}

std::optional<ParameterType> parse_type(std::string_view name) {
  if (name == "string") return ParameterType::kString;
  if (name == "integer") return ParameterType::kInteger;
  if (name == "number") return ParameterType::kNumber;
  if (name == "boolean") return ParameterType::kBoolean;
  if (name == "enum") return ParameterType::kEnum;
  if (name == "string-list") return ParameterType::kStringList;
  if (name == "mapping") return ParameterType::kMapping;
  if (name == "selector") return ParameterType::kSelector;
  return std::nullopt;
}

std::set<std::string> string_set(const Json& json, const std::string& where) {
  if (!json.is_array() || json.empty()) bad_registry(where + " must be a non-empty array");
  std::set<std::string> out;
  for (const auto& v : json) {
    if (!v.is_string()) bad_registry(where + " must hold strings");
    out.insert(v.get<std::string>());
  }
  return out;
}

std::optional<double> number_field(const Json& spec, const char* key) {
  if (!spec.contains(key)) return std::nullopt;
  if (!spec[key].is_number()) bad_registry(std::string(key) + " must be a number");
  return spec[key].get<double>();
}

std::string bound_text(double x) {
  if (x == std::floor(x) && std::abs(x) < 1e15) return std::to_string(static_cast<long long>(x));
  return Json(x).dump();
}

// Empty string when the value fits the schema, otherwise a message for the
// parameter's tooltip.
std::string check_value(const ParameterSpec& spec, const Json& value) {
  switch (spec.type) {
    case ParameterType::kString:
      if (!value.is_string()) return "must be a string";
      break;
    case ParameterType::kInteger:
      if (!value.is_number_integer()) return "must be an integer";
      break;
    case ParameterType::kNumber:
      if (!value.is_number() || !std::isfinite(value.get<double>())) return "must be a number";
      break;
    case ParameterType::kBoolean:
      if (!value.is_boolean()) return "must be true or false";
      break;
    case ParameterType::kEnum: {
      std::string choices;
      for (const auto& v : spec.values) choices += (choices.empty() ? "" : ", ") + v;
      if (!value.is_string()) return "must be one of " + choices;
      bool known = false;
      for (const auto& v : spec.values) known = known || v == value.get<std::string>();
      if (!known) return "must be one of " + choices;
      break;
    }
    case ParameterType::kStringList:
      if (!value.is_array()) return "must be a list of strings";
      for (const auto& v : value) {
        if (!v.is_string()) return "must be a list of strings";
      }
      break;
    case ParameterType::kMapping:
      if (!value.is_object()) return "must be an object from old to new value";
      break;
    case ParameterType::kSelector:
      if (!value.is_array()) return "must be a list of conditions";
      for (const auto& atom : value) {
        if (!atom.is_object() || !atom.contains("key") || !atom["key"].is_string()) {
          return "every condition needs a string 'key'";
        }
        std::string op = atom.value("op", std::string("="));
        auto cmp = parse_comparator(op);
        if (!cmp) return "unknown comparator '" + op + "'";
        if (*cmp == Comparator::kIn) {
          if (!atom.contains("values") || !atom["values"].is_array() || atom["values"].empty()) {
            return "'in' conditions need a non-empty 'values' list";
          }
        } else if (!atom.contains("value")) {
          return "condition on '" + atom["key"].get<std::string>() + "' needs a 'value'";
        }
      }
      break;
  }
  if (value.is_number()) {
    double x = value.get<double>();
    if (spec.minimum && x < *spec.minimum) return "must be at least " + bound_text(*spec.minimum);
    if (spec.maximum && x > *spec.maximum) return "must be at most " + bound_text(*spec.maximum);
    if (spec.exclusive_minimum && x <= *spec.exclusive_minimum) {
      return "must be greater than " + bound_text(*spec.exclusive_minimum);
    }
  }
  return {};
}

}  // namespace

const ParameterSpec* OperationSchema::find(std::string_view name) const {
  for (const auto& p : parameters) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

Registry Registry::parse(std::string_view json_text) {
  Json doc = Json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) bad_registry("not a JSON object");
  Registry r;
  r.source_ = doc;

  if (!doc.contains("dimensions") || !doc["dimensions"].is_object()) bad_registry("no dimensions");
  for (const char* d : kDimensionNames) {
    if (!doc["dimensions"].contains(d)) bad_registry(std::string("dimension ") + d + " missing");
    string_set(doc["dimensions"][d], d);
    r.dimensions_[d] = doc["dimensions"][d].get<std::vector<std::string>>();
  }

  if (!doc.contains("operations") || !doc["operations"].is_object()) bad_registry("no operations");
  for (const auto& [id, op] : doc["operations"].items()) {
    OperationSchema schema;
    schema.operation_id = id;
    if (!op.contains("inputs") || !op["inputs"].is_array() || op["inputs"].empty()) {
      bad_registry("operation " + id + " needs inputs");
    }
    for (const auto& in : op["inputs"]) {
      if (in != "xes" && in != "ela") bad_registry("operation " + id + " has an unknown input kind");
      schema.inputs.push_back(in.get<std::string>());
    }
    const Json parameters = op.value("parameters", Json::object());
    for (const auto& [name, spec] : parameters.items()) {
      ParameterSpec p;
      p.name = name;
      auto type = parse_type(spec.value("type", std::string{}));
      if (!type) bad_registry(id + "." + name + " has an unknown type");
      p.type = *type;
      p.required = spec.value("required", false);
      if (spec.contains("default")) p.default_value = spec["default"];
      if (p.type == ParameterType::kEnum) {
        string_set(spec.value("values", Json()), id + "." + name + ".values");
        p.values = spec["values"].get<std::vector<std::string>>();
      }
      p.minimum = number_field(spec, "minimum");
      p.maximum = number_field(spec, "maximum");
      p.exclusive_minimum = number_field(spec, "exclusive_minimum");
      p.help = spec.value("help", std::string{});
      if (p.default_value && !check_value(p, *p.default_value).empty()) {
        bad_registry(id + "." + name + " has an invalid default");
      }
      schema.parameters.push_back(std::move(p));
    }
    r.operations_.push_back(std::move(schema));
  }

  if (!doc.contains("techniques") || !doc["techniques"].is_array()) bad_registry("no techniques");
  for (const auto& t : doc["techniques"]) {
    TechniqueSignature sig;
    sig.technique_id = t.value("id", std::string{});
    if (sig.technique_id.empty()) bad_registry("technique without id");
    sig.title = t.value("title", sig.technique_id);
    std::set<std::string>* dims[] = {&sig.pmps, &sig.pmac, &sig.prps, &sig.prac};
    for (std::size_t d = 0; d < 4; ++d) {
      std::string where = sig.technique_id + "." + kDimensionNames[d];
      *dims[d] = string_set(t.value(kDimensionNames[d], Json()), where);
      const auto& vocab = r.dimensions_.at(kDimensionNames[d]);
      for (const auto& v : *dims[d]) {
        if (std::find(vocab.begin(), vocab.end(), v) == vocab.end()) {
          bad_registry(where + " uses unknown value '" + v + "'");
        }
      }
    }
    const Json operations = t.value("operations", Json::array());
    for (const auto& op : operations) {
      std::string id = op.get<std::string>();
      auto schema = std::find_if(r.operations_.begin(), r.operations_.end(),
                                 [&](const OperationSchema& o) { return o.operation_id == id; });
      if (schema == r.operations_.end()) {
        bad_registry(sig.technique_id + " lists unknown operation " + id);
      }
      schema->technique_id = sig.technique_id;
      sig.operations.push_back(id);
    }
    r.techniques_.push_back(std::move(sig));
  }
  for (const auto& op : r.operations_) {
    if (op.technique_id.empty()) bad_registry("operation " + op.operation_id + " has no technique");
  }
  return r;
}

const Registry& Registry::builtin() {
  static const Registry registry = [] {
    if (const char* path = std::getenv("PC4PM_REGISTRY"); path != nullptr && *path != '\0') {
      return parse(read_file(path));
    }
    return parse(detail::kBuiltinRegistryJson);
  }();
  return registry;
}

const OperationSchema* Registry::find_operation(std::string_view id) const {
  for (const auto& op : operations_) {
    if (op.operation_id == id) return &op;
  }
  return nullptr;
}

std::vector<std::string> Registry::filter(const GuideQuery& query) const {
  const std::optional<std::string>* choices[] = {&query.pmps, &query.pmac, &query.prps,
                                                 &query.prac};
  for (std::size_t d = 0; d < 4; ++d) {
    if (!*choices[d]) continue;
    const auto& vocab = dimensions_.at(kDimensionNames[d]);
    if (std::find(vocab.begin(), vocab.end(), **choices[d]) == vocab.end()) {
      throw Error(ErrorCode::kInvalidParameter, std::string(kDimensionNames[d]) + " has no value '" +
                                                    **choices[d] + "'");
    }
  }
  std::vector<std::string> out;
  for (const auto& sig : techniques_) {
    const std::set<std::string>* dims[] = {&sig.pmps, &sig.pmac, &sig.prps, &sig.prac};
    bool keep = true;
    for (std::size_t d = 0; d < 4 && keep; ++d) {
      if (*choices[d]) keep = dims[d]->contains(**choices[d]);
    }
    if (keep) out.push_back(sig.technique_id);
  }
  return out;
}

Json Registry::validate(std::string_view operation_id, const Json& parameters) const {
  const OperationSchema* schema = find_operation(operation_id);
  if (schema == nullptr) {
    throw Error(ErrorCode::kUnknownTechnique, "unknown technique '" + std::string(operation_id) + "'");
  }
  std::map<std::string, std::string> messages;
  if (!parameters.is_null() && !parameters.is_object()) {
    throw ParameterValidationError(
        std::map<std::string, std::string>{{"parameters", "must be an object"}});
  }
  Json out = Json::object();
  if (parameters.is_object()) {
    for (const auto& [name, value] : parameters.items()) {
      if (schema->find(name) == nullptr) messages[name] = "unknown parameter";
    }
  }
  for (const auto& spec : schema->parameters) {
    if (parameters.is_object() && parameters.contains(spec.name)) {
      std::string problem = check_value(spec, parameters[spec.name]);
      if (!problem.empty()) messages[spec.name] = problem;
      out[spec.name] = parameters[spec.name];
    } else if (spec.required) {
      messages[spec.name] = "is required";
    } else if (spec.default_value) {
      out[spec.name] = *spec.default_value;
    }
  }
  if (!messages.empty()) throw ParameterValidationError(std::move(messages));
  return out;
}

Json Registry::to_json() const { return source_; }

Json guide_query_to_json(const GuideQuery& query) {
  Json out = Json::object();
  if (query.pmps) out["pmps"] = *query.pmps;
  if (query.pmac) out["pmac"] = *query.pmac;
  if (query.prps) out["prps"] = *query.prps;
  if (query.prac) out["prac"] = *query.prac;
  return out;
}

GuideQuery guide_query_from_json(const Json& json) {
  if (json.is_null()) return {};
  if (!json.is_object()) throw Error(ErrorCode::kInvalidParameter, "guide query must be an object");
  GuideQuery q;
  std::optional<std::string>* slots[] = {&q.pmps, &q.pmac, &q.prps, &q.prac};
  for (const auto& [key, value] : json.items()) {
    std::size_t d = 0;
    while (d < 4 && key != kDimensionNames[d]) ++d;
    if (d == 4) throw Error(ErrorCode::kInvalidParameter, "unknown guide dimension '" + key + "'");
    if (value.is_null()) continue;
    if (!value.is_string()) {
      throw Error(ErrorCode::kInvalidParameter, "guide dimension '" + key + "' must be a string");
    }
    *slots[d] = value.get<std::string>();
  }
  return q;
}

}  // namespace pc4pm
