#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "pc4pm/core/json_codec.hpp"
#include "pc4pm/core/log.hpp"
#include "pc4pm/core/stats.hpp"
#include "pc4pm/group/knowledge.hpp"

namespace pc4pm {

struct RiskReport {
  KnowledgeKind knowledge_kind = KnowledgeKind::kSet;
  std::size_t l = 1;
  double uniqueness_rate = 0;
  double avg_reid_probability = 0;
  std::map<std::string, std::size_t> per_case_min_group;

  friend bool operator==(const RiskReport&, const RiskReport&) = default;
};

struct UtilityReport {
  double variant_preservation = 1;
  double df_distance = 0;
  double event_count_ratio = 1;

  friend bool operator==(const UtilityReport&, const UtilityReport&) = default;
};

// Prosecutor model: a case's min group is the smallest number of cases
// matching any knowledge of size <= l taken from its own trace. A case with no
// events has min group |log|. An empty log gives zero rates.
RiskReport disclosure_risk(const EventLog& log, KnowledgeKind kind, std::size_t l,
                           unsigned workers = 1);

// Half the L1 distance between the pair-count distributions. Two graphs
// without pairs are at distance 0; exactly one without pairs is at distance 1.
double df_distance(const DirectlyFollowsGraph& a, const DirectlyFollowsGraph& b);

// An original without events yields (1, 0, 1).
UtilityReport data_utility(const EventLog& original, const EventLog& anonymized,
                           unsigned workers = 1);

Json risk_to_json(const RiskReport& report);
Json utility_to_json(const UtilityReport& report);

}  // namespace pc4pm
