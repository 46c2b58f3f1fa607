#include "pc4pm/repo/techniques.hpp"

#include <cstdlib>
#include <set>

#include "pc4pm/anon/keys.hpp"
#include "pc4pm/anon/operations.hpp"
#include "pc4pm/connector/connector.hpp"
#include "pc4pm/core/xes.hpp"
#include "pc4pm/dp/dp.hpp"
#include "pc4pm/error.hpp"
#include "pc4pm/group/tlkc.hpp"
#include "pc4pm/roles/roles.hpp"

namespace pc4pm {
namespace {

using Messages = std::map<std::string, std::string>;

AttributeLevel level_of(const Json& p) {
  return p.value("level", std::string("event")) == "trace" ? AttributeLevel::kTrace
                                                           : AttributeLevel::kEvent;
}

KnowledgeKind knowledge_of(const Json& p) {
  return *parse_knowledge_kind(p.value("knowledge_kind", std::string("set")));
}

std::set<std::string> string_set(const Json& list) {
  return list.get<std::set<std::string>>();
}

// JSON value read as `kind`; numbers and booleans are accepted for textual
// kinds through their JSON spelling.
TypedValue value_as(ValueKind kind, const Json& json, const std::string& context) {
  if (auto v = value_from_json(kind, json)) return *v;
  if (json.is_number() || json.is_boolean()) {
    if (auto v = TypedValue::parse(kind, json.dump())) return *v;
  }
  throw Error(ErrorCode::kInvalidParameter,
              context + ": " + json.dump() + " is not a " + std::string(value_kind_name(kind)));
}

// Atoms on attributes the log lacks keep a string value so that
// Selector::check_against reports the missing key.
Selector selector_of(const EventLog& log, AttributeLevel level, const Json& where) {
  Selector s;
  s.level = level;
  for (const auto& item : where) {
    Atom atom;
    atom.key = item.at("key").get<std::string>();
    atom.op = *parse_comparator(item.value("op", std::string("=")));
    const ValueKind kind = attribute_kind(log, level, atom.key).value_or(ValueKind::kString);
    if (atom.op == Comparator::kIn) {
      for (const auto& v : item.at("values")) {
        atom.values.push_back(value_as(kind, v, "where." + atom.key));
      }
    } else {
      atom.values.push_back(value_as(kind, item.at("value"), "where." + atom.key));
    }
    s.atoms.push_back(std::move(atom));
  }
  return s;
}

ValueMapping mapping_of(const EventLog& log, AttributeLevel level, const std::string& attribute,
                        const Json& mapping) {
  const ValueKind kind = attribute_kind(log, level, attribute).value_or(ValueKind::kString);
  ValueMapping out;
  for (auto it = mapping.begin(); it != mapping.end(); ++it) {
    out.emplace(value_as(kind, Json(it.key()), "mapping key"), value_as(kind, it.value(), "mapping"));
  }
  return out;
}

KeyMode key_mode_of(const Json& p) {
  return p.value("mode", std::string("pseudonymize-deterministic")) == "encrypt-recoverable"
             ? KeyMode::kEncryptRecoverable
             : KeyMode::kPseudonymizeDeterministic;
}

KeySpec key_of(const Json& p, KeyMode mode) {
  KeySpec key = KeySpec::from_environment(p.at("key").get<std::string>(), mode);
  key.check();
  return key;
}

void check_key(const Json& p, Messages& messages) {
  try {
    key_of(p, key_mode_of(p));
  } catch (const Error& e) {
    messages["key"] = e.what();
  }
}

const EventLog& log_input(const std::vector<Artifact>& inputs, std::size_t i) {
  return std::get<EventLog>(inputs.at(i));
}

NamedArtifact out(Artifact artifact, std::string suffix = "") {
  return {std::move(suffix), std::move(artifact)};
}

}  // namespace

Json prepare_parameters(const Registry& registry, std::string_view operation_id,
                        const Json& parameters) {
  Json p = registry.validate(operation_id, parameters);
  Messages messages;
  if (operation_id == "generalize") {
    const bool by_time = p.contains("granularity");
    const bool by_taxonomy = p.contains("taxonomy");
    if (by_time == by_taxonomy) {
      messages["granularity"] = "exactly one of granularity or taxonomy is required";
      messages["taxonomy"] = "exactly one of granularity or taxonomy is required";
    } else if (by_taxonomy) {
      try {
        Taxonomy::parse_edge_list(p["taxonomy"].get<std::string>());
      } catch (const Error& e) {
        messages["taxonomy"] = e.what();
      }
    }
  } else if (operation_id == "pseudonymize" || operation_id == "connector_encode" ||
             operation_id == "connector_decode") {
    if (operation_id == "pseudonymize" && p["attributes"].empty()) {
      messages["attributes"] = "must name at least one attribute";
    }
    check_key(p, messages);
  } else if (operation_id == "de_pseudonymize") {
    try {
      key_of(p, KeyMode::kEncryptRecoverable);
    } catch (const Error& e) {
      messages["key"] = e.what();
    }
  } else if (operation_id == "tlkc") {
    const double c = p["c"].get<double>();
    if (c < 1.0 && !p.contains("sensitive_attribute")) {
      messages["sensitive_attribute"] = "is required when c is below 1";
    }
  }
  if (!messages.empty()) throw ParameterValidationError(messages);
  return p;
}

std::vector<NamedArtifact> execute_operation(const OperationSchema& schema,
                                             const Json& p,
                                             const std::vector<Artifact>& inputs,
                                             std::uint64_t seed, const RunContext& ctx) {
  const std::string& op = schema.operation_id;
  if (inputs.size() != schema.inputs.size()) {
    throw Error(ErrorCode::kInvalidParameter, op + " takes " + std::to_string(schema.inputs.size()) +
                                                  " input(s)");
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const bool is_log = std::holds_alternative<EventLog>(inputs[i]);
    if (is_log != (schema.inputs[i] == "xes")) {
      throw Error(ErrorCode::kInvalidParameter,
                  op + " input " + std::to_string(i + 1) + " must be " + schema.inputs[i]);
    }
  }

  if (op == "suppress") {
    const EventLog& log = log_input(inputs, 0);
    const AttributeLevel level = level_of(p);
    return {out(suppress(log, selector_of(log, level, p["where"]), string_set(p["attributes"]), ctx))};
  }
  if (op == "add_noise") {
    const auto generator = p["generator"] == "random-walk" ? NoiseGenerator::kRandomWalk
                                                           : NoiseGenerator::kReplayVariant;
    return {out(add_noise(log_input(inputs, 0), p["count"].get<std::size_t>(), generator, seed, ctx))};
  }
  if (op == "substitute") {
    const EventLog& log = log_input(inputs, 0);
    const AttributeLevel level = level_of(p);
    const std::string attribute = p["attribute"].get<std::string>();
    const auto on_missing = p["on_missing"] == "error" ? OnMissing::kError : OnMissing::kKeep;
    return {out(substitute(log, level, attribute, mapping_of(log, level, attribute, p["mapping"]),
                           on_missing, ctx))};
  }
  if (op == "condense") {
    return {out(condense(log_input(inputs, 0), level_of(p), p["attribute"].get<std::string>(), ctx))};
  }
  if (op == "swap") {
    const auto scope = p["scope"] == "within-variant" ? SwapScope::kWithinVariant : SwapScope::kGlobal;
    return {out(swap(log_input(inputs, 0), level_of(p), p["attribute"].get<std::string>(), scope,
                     seed, ctx))};
  }
  if (op == "generalize") {
    GeneralizationScheme scheme =
        p.contains("granularity")
            ? GeneralizationScheme(*parse_granularity(p["granularity"].get<std::string>()))
            : GeneralizationScheme(Taxonomy::parse_edge_list(p["taxonomy"].get<std::string>()));
    return {out(generalize(log_input(inputs, 0), level_of(p), p["attribute"].get<std::string>(),
                           scheme, ctx))};
  }
  if (op == "pseudonymize") {
    return {out(pseudonymize(log_input(inputs, 0), level_of(p), string_set(p["attributes"]),
                             key_of(p, key_mode_of(p)), ctx))};
  }
  if (op == "de_pseudonymize") {
    return {out(de_pseudonymize(log_input(inputs, 0), key_of(p, KeyMode::kEncryptRecoverable),
                                ctx.workers))};
  }
  if (op == "tlkc") {
    TlkcParams params;
    if (p["t"] != "none") params.t = parse_granularity(p["t"].get<std::string>());
    params.l = p["l"].get<std::size_t>();
    params.k = p["k"].get<std::size_t>();
    params.c = p["c"].get<double>();
    if (p.contains("sensitive_attribute")) {
      params.sensitive_attribute = p["sensitive_attribute"].get<std::string>();
    }
    return {out(enforce(log_input(inputs, 0), params, knowledge_of(p), seed, ctx))};
  }
  if (op == "dp_publish") {
    DpParams params;
    params.epsilon = p["epsilon"].get<double>();
    params.prune_threshold = p["prune_threshold"].get<double>();
    params.max_variant_length = p["max_variant_length"].get<std::size_t>();
    params.secure_random = p["secure_random"].get<bool>();
    params.seed = seed;
    return {out(dp_publish(log_input(inputs, 0), params, ctx))};
  }
  if (op == "connector_encode") {
    return {out(connector_encode(log_input(inputs, 0),
                                 key_of(p, KeyMode::kPseudonymizeDeterministic), ctx))};
  }
  if (op == "connector_decode") {
    const auto& ela = std::get<EventLogAbstraction>(inputs[0]);
    DirectlyFollowsGraph dfg = connector_decode(
        ela, key_of(p, KeyMode::kPseudonymizeDeterministic), string_set(p["dictionary"]));
    return {out(dfg_to_ela(dfg, ela.header))};
  }
  if (op == "role_mining") {
    const EventLog& log = log_input(inputs, 0);
    RoleMiningResult result = privacy_aware_roles(log, p["noise_bound"].get<std::int64_t>(),
                                                  p["threshold"].get<double>(), seed, ctx);
    EventLogAbstraction roles = roles_to_ela(result.roles);
    roles.header.origin_log_id = result.matrix.header.origin_log_id;
    roles.header.privacy_metadata = result.matrix.header.privacy_metadata;
    return {out(std::move(result.matrix), "matrix"), out(std::move(roles), "roles")};
  }
  if (op == "risk") {
    const EventLog& log = log_input(inputs, 0);
    RiskReport report = disclosure_risk(log, knowledge_of(p), p["l"].get<std::size_t>(), ctx.workers);
    return {out(risk_to_ela(report, log_id(log)))};
  }
  if (op == "utility") {
    const EventLog& original = log_input(inputs, 0);
    UtilityReport report = data_utility(original, log_input(inputs, 1), ctx.workers);
    return {out(utility_to_ela(report, log_id(log_input(inputs, 1))))};
  }
  throw Error(ErrorCode::kUnknownTechnique, "no executor for operation " + op);
}

EventLogAbstraction risk_to_ela(const RiskReport& report, const std::string& origin_log_id) {
  EventLogAbstraction ela;
  ela.header.abstraction_kind = "risk-report";
  ela.header.origin_log_id = origin_log_id;
  ela.header.technique = "privacy-analysis";
  ela.columns = {{"metric", ValueKind::kString},
                 {"subject", ValueKind::kString},
                 {"value", ValueKind::kReal}};
  auto row = [&](std::string metric, std::string subject, double value) {
    ela.rows.push_back({TypedValue::string(std::move(metric)), TypedValue::string(std::move(subject)),
                        TypedValue::real(value)});
  };
  row("knowledge", std::string(knowledge_kind_name(report.knowledge_kind)),
      static_cast<double>(report.l));
  row("uniqueness_rate", "", report.uniqueness_rate);
  row("avg_reid_probability", "", report.avg_reid_probability);
  for (const auto& [case_id, g] : report.per_case_min_group) {
    row("min_group", case_id, static_cast<double>(g));
  }
  return ela;
}

EventLogAbstraction utility_to_ela(const UtilityReport& report, const std::string& origin_log_id) {
  EventLogAbstraction ela;
  ela.header.abstraction_kind = "utility-report";
  ela.header.origin_log_id = origin_log_id;
  ela.header.technique = "privacy-analysis";
  ela.columns = {{"metric", ValueKind::kString}, {"value", ValueKind::kReal}};
  ela.rows = {{TypedValue::string("variant_preservation"), TypedValue::real(report.variant_preservation)},
              {TypedValue::string("df_distance"), TypedValue::real(report.df_distance)},
              {TypedValue::string("event_count_ratio"), TypedValue::real(report.event_count_ratio)}};
  return ela;
}

EventLogAbstraction dfg_to_ela(const DirectlyFollowsGraph& dfg, const AbstractionHeader& origin) {
  EventLogAbstraction ela;
  ela.header.abstraction_kind = "dfg";
  ela.header.origin_log_id = origin.origin_log_id;
  ela.header.technique = origin.technique;
  ela.header.privacy_metadata = origin.privacy_metadata;
  ela.columns = {{"source", ValueKind::kString},
                 {"target", ValueKind::kString},
                 {"count", ValueKind::kInteger}};
  auto row = [&](std::string_view source, std::string_view target, std::size_t count) {
    ela.rows.push_back({TypedValue::string(std::string(source)), TypedValue::string(std::string(target)),
                        TypedValue::integer(static_cast<std::int64_t>(count))});
  };
  for (const auto& [a, n] : dfg.start_counts) row(kStartMarker, a, n);
  for (const auto& [pair, n] : dfg.pair_counts) row(pair.first, pair.second, n);
  for (const auto& [a, n] : dfg.end_counts) row(a, kEndMarker, n);
  return ela;
}

}  // namespace pc4pm
