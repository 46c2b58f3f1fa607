#include "pc4pm/analysis/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "pc4pm/error.hpp"
#include "pc4pm/util/parallel.hpp"

namespace pc4pm {

RiskReport disclosure_risk(const EventLog& log, KnowledgeKind kind, std::size_t l,
                           unsigned workers) {
  if (l < 1) throw Error(ErrorCode::kInvalidParameter, "l must be at least 1");
  RiskReport report;
  report.knowledge_kind = kind;
  report.l = l;
  const std::size_t n = log.traces.size();
  if (n == 0) return report;

  // A trace matches a knowledge instance exactly when it can derive it, so
  // group sizes are derivation counts.
  std::vector<std::set<BackgroundKnowledge>> derived(n);
  parallel_for(n, workers, [&](std::size_t t) {
    derived[t] = derivable_knowledge(log.traces[t].activities(), kind, l);
  });
  std::map<BackgroundKnowledge, std::size_t> group;
  for (const auto& own : derived) {
    for (const auto& knowledge : own) ++group[knowledge];
  }

  std::size_t unique = 0;
  double reid = 0;
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t best = n;
    for (const auto& knowledge : derived[t]) best = std::min(best, group.at(knowledge));
    report.per_case_min_group[log.traces[t].case_id()] = best;
    if (best == 1) ++unique;
    reid += 1.0 / static_cast<double>(best);
  }
  report.uniqueness_rate = static_cast<double>(unique) / static_cast<double>(n);
  report.avg_reid_probability = reid / static_cast<double>(n);
  return report;
}

double df_distance(const DirectlyFollowsGraph& a, const DirectlyFollowsGraph& b) {
  if (a.pair_counts.empty() && b.pair_counts.empty()) return 0;
  if (a.pair_counts.empty() || b.pair_counts.empty()) return 1;
  auto total = [](const DirectlyFollowsGraph& g) {
    double sum = 0;
    for (const auto& [pair, n] : g.pair_counts) sum += static_cast<double>(n);
    return sum;
  };
  const double ta = total(a);
  const double tb = total(b);
  double l1 = 0;
  auto ia = a.pair_counts.begin();
  auto ib = b.pair_counts.begin();
  while (ia != a.pair_counts.end() || ib != b.pair_counts.end()) {
    if (ib == b.pair_counts.end() || (ia != a.pair_counts.end() && ia->first < ib->first)) {
      l1 += static_cast<double>(ia->second) / ta;
      ++ia;
    } else if (ia == a.pair_counts.end() || ib->first < ia->first) {
      l1 += static_cast<double>(ib->second) / tb;
      ++ib;
    } else {
      l1 += std::abs(static_cast<double>(ia->second) / ta - static_cast<double>(ib->second) / tb);
      ++ia;
      ++ib;
    }
  }
  return std::min(1.0, 0.5 * l1);
}

UtilityReport data_utility(const EventLog& original, const EventLog& anonymized,
                           unsigned workers) {
  UtilityReport report;
  const std::size_t events = original.event_count();
  if (events == 0) return report;

  VariantCounts before = variants(original, workers);
  VariantCounts after = variants(anonymized, workers);
  std::size_t kept = 0;
  for (const auto& [variant, count] : before) {
    if (after.contains(variant)) ++kept;
  }
  report.variant_preservation = static_cast<double>(kept) / static_cast<double>(before.size());
  report.df_distance = df_distance(df_graph(original, workers), df_graph(anonymized, workers));
  report.event_count_ratio =
      static_cast<double>(anonymized.event_count()) / static_cast<double>(events);
  return report;
}

Json risk_to_json(const RiskReport& report) {
  Json groups = Json::object();
  for (const auto& [case_id, size] : report.per_case_min_group) groups[case_id] = size;
  return Json{{"knowledge_kind", knowledge_kind_name(report.knowledge_kind)},
              {"l", report.l},
              {"uniqueness_rate", report.uniqueness_rate},
              {"avg_reid_probability", report.avg_reid_probability},
              {"per_case_min_group", groups}};
}

Json utility_to_json(const UtilityReport& report) {
  return Json{{"variant_preservation", report.variant_preservation},
              {"df_distance", report.df_distance},
              {"event_count_ratio", report.event_count_ratio}};
}

}  // namespace pc4pm
