#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pc4pm/core/json_codec.hpp"

namespace pc4pm {

// Four-dimension descriptor of a technique: process mining perspective,
// process mining activity, privacy perspective, privacy activity.
struct TechniqueSignature {
  std::string technique_id;
  std::string title;
  std::set<std::string> pmps;
  std::set<std::string> pmac;
  std::set<std::string> prps;
  std::set<std::string> prac;
  std::vector<std::string> operations;  // job operation ids

  friend bool operator==(const TechniqueSignature&, const TechniqueSignature&) = default;
};

// One optional choice per dimension; unset means any.
struct GuideQuery {
  std::optional<std::string> pmps;
  std::optional<std::string> pmac;
  std::optional<std::string> prps;
  std::optional<std::string> prac;
};

enum class ParameterType { kString, kInteger, kNumber, kBoolean, kEnum, kStringList, kMapping,
                           kSelector };

struct ParameterSpec {
  std::string name;
  ParameterType type = ParameterType::kString;
  bool required = false;
  std::optional<Json> default_value;
  std::vector<std::string> values;  // enum choices
  std::optional<double> minimum;
  std::optional<double> maximum;
  std::optional<double> exclusive_minimum;
  std::string help;
};

// A runnable job operation: the kinds of its inputs and its parameters.
struct OperationSchema {
  std::string operation_id;
  std::string technique_id;
  std::vector<std::string> inputs;  // "xes" or "ela", one per input
  std::vector<ParameterSpec> parameters;

  const ParameterSpec* find(std::string_view name) const;
};

class Registry {
 public:
  // Throws InvalidParameter when the document is not a valid registry.
  static Registry parse(std::string_view json_text);

  // Compiled-in registry, or the file named by PC4PM_REGISTRY when set.
  static const Registry& builtin();

  const std::vector<TechniqueSignature>& techniques() const { return techniques_; }
  const std::map<std::string, std::vector<std::string>>& dimensions() const { return dimensions_; }
  const OperationSchema* find_operation(std::string_view id) const;
  const std::vector<OperationSchema>& operations() const { return operations_; }

  // Techniques whose signature contains every chosen value, in registry
  // order. Throws InvalidParameter for values outside a dimension's
  // vocabulary.
  std::vector<std::string> filter(const GuideQuery& query) const;

  // Checks a parameter document against the operation's schema and returns
  // it with defaults filled in. Throws UnknownTechnique for an unknown
  // operation and ParameterValidationError with one message per bad field.
  Json validate(std::string_view operation_id, const Json& parameters) const;

  // Signatures, dimensions and schemas (with help texts) for the service.
  Json to_json() const;

 private:
  std::map<std::string, std::vector<std::string>> dimensions_;
  std::vector<TechniqueSignature> techniques_;
  std::vector<OperationSchema> operations_;
  Json source_;
};

Json guide_query_to_json(const GuideQuery& query);
// Throws InvalidParameter for unknown keys or non-string values.
GuideQuery guide_query_from_json(const Json& json);

}  // namespace pc4pm
