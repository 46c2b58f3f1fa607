#pragma once

// Bridge between validated parameter documents and the library: turns a job
// operation plus its inputs into output artifacts.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pc4pm/analysis/analysis.hpp"
#include "pc4pm/core/ela.hpp"
#include "pc4pm/core/json_codec.hpp"
#include "pc4pm/core/log.hpp"
#include "pc4pm/core/run_context.hpp"
#include "pc4pm/guidance/registry.hpp"

namespace pc4pm {

using Artifact = std::variant<EventLog, EventLogAbstraction>;

struct NamedArtifact {
  std::string suffix;  // appended to the output name, e.g. "matrix"
  Artifact artifact;
};

// Checks a parameter document for `operation_id` beyond the registry schema
// (cross-field rules, key references resolvable in the environment) and
// returns it with defaults filled in. Throws UnknownTechnique or
// ParameterValidationError.
Json prepare_parameters(const Registry& registry, std::string_view operation_id,
                        const Json& parameters);

// Runs a prepared operation. Inputs must match the schema's input kinds.
std::vector<NamedArtifact> execute_operation(const OperationSchema& schema,
                                             const Json& parameters,
                                             const std::vector<Artifact>& inputs,
                                             std::uint64_t seed, const RunContext& ctx);

// Report abstractions produced by the analysis operations.
// risk-report rows: (metric, subject, value). "knowledge" names the kind as
// subject with l as value; "uniqueness_rate" and "avg_reid_probability"
// have no subject; one "min_group" row per case id.
EventLogAbstraction risk_to_ela(const RiskReport& report, const std::string& origin_log_id);
// utility-report rows: (metric, value).
EventLogAbstraction utility_to_ela(const UtilityReport& report, const std::string& origin_log_id);
// Decoded connector output, kind "dfg": (source, target, count) with the
// start and end markers standing in for the artificial nodes.
EventLogAbstraction dfg_to_ela(const DirectlyFollowsGraph& dfg, const AbstractionHeader& origin);

}  // namespace pc4pm
