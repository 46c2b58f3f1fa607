#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "pc4pm/core/log.hpp"
#include "pc4pm/core/run_context.hpp"
#include "pc4pm/core/timestamp.hpp"
#include "pc4pm/group/knowledge.hpp"

namespace pc4pm {

struct TlkcParams {
  // Timestamp granularity applied before suppression; nullopt means none.
  std::optional<Granularity> t;
  std::size_t l = 1;
  std::size_t k = 1;
  double c = 1.0;
  // Trace attribute whose values must not be inferable with confidence > c.
  std::optional<std::string> sensitive_attribute;

  // Throws InvalidParameter for l or k below 1 or c outside (0, 1].
  void check() const;
};

// Knowledge instances of size <= l occurring in the log whose group has fewer
// than k cases, or whose most frequent sensitive value exceeds confidence c.
// Confidence is the share of the group's traces carrying that value.
std::set<BackgroundKnowledge> find_violations(const EventLog& log, const TlkcParams& params,
                                              KnowledgeKind kind, unsigned workers = 1);

// Generalizes timestamps to t, then suppresses all instances of one activity
// per round until no violation remains. Each round removes the activity whose
// removal leaves the fewest violations (ties: smallest label). Throws
// EmptyResult if every event ends up suppressed. The seed is accepted for
// interface uniformity; the procedure is deterministic.
EventLog enforce(const EventLog& log, const TlkcParams& params, KnowledgeKind kind,
                 std::uint64_t seed, const RunContext& ctx = {});

}  // namespace pc4pm
