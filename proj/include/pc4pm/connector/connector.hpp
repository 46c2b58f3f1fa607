#pragma once

#include <set>
#include <string>
#include <string_view>

#include "pc4pm/anon/keys.hpp"
#include "pc4pm/core/ela.hpp"
#include "pc4pm/core/log.hpp"
#include "pc4pm/core/run_context.hpp"
#include "pc4pm/core/stats.hpp"

namespace pc4pm {

inline constexpr std::string_view kStartMarker = "▷";
inline constexpr std::string_view kEndMarker = "□";
inline constexpr std::string_view kConnectorKind = "connector-dfg";

// One row per distinct activity pair plus start rows (▷, token) flagged
// "source-is-start" and end rows (token, □) flagged "target-is-end". Tokens are
// keyed pseudonyms; counts are totals over the log, so the rows depend only on
// the log's DFG. Rows are sorted.
// Columns: enc_source, enc_target (string), count (int), flags (string).
EventLogAbstraction connector_encode(const EventLog& log, const KeySpec& key,
                                     const RunContext& ctx = {});

// Recovers the labeled DFG by matching tokens against the candidate labels.
// Throws UnresolvedToken for a token no candidate produces.
DirectlyFollowsGraph connector_decode(const EventLogAbstraction& ela, const KeySpec& key,
                                      const std::set<std::string>& dictionary);

}  // namespace pc4pm
