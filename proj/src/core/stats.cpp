#include "pc4pm/core/stats.hpp"

#include "pc4pm/util/parallel.hpp"

namespace pc4pm {

VariantCounts variants(const EventLog& log, unsigned workers) {
  return parallel_map_reduce<VariantCounts>(
      log.traces.size(), workers,
      [&](std::size_t begin, std::size_t end) {
        VariantCounts part;
        for (std::size_t i = begin; i < end; ++i) ++part[log.traces[i].activities()];
        return part;
      },
      [](VariantCounts& into, VariantCounts&& part) {
        for (auto& [variant, count] : part) into[variant] += count;
      });
}

DirectlyFollowsGraph df_graph(const EventLog& log, unsigned workers) {
  return parallel_map_reduce<DirectlyFollowsGraph>(
      log.traces.size(), workers,
      [&](std::size_t begin, std::size_t end) {
        DirectlyFollowsGraph part;
        for (std::size_t i = begin; i < end; ++i) {
          const auto& events = log.traces[i].events;
          if (events.empty()) continue;
          ++part.start_counts[events.front().activity()];
          ++part.end_counts[events.back().activity()];
          for (std::size_t e = 1; e < events.size(); ++e) {
            ++part.pair_counts[{events[e - 1].activity(), events[e].activity()}];
          }
        }
        return part;
      },
      [](DirectlyFollowsGraph& into, DirectlyFollowsGraph&& part) {
        for (auto& [k, v] : part.pair_counts) into.pair_counts[k] += v;
        for (auto& [k, v] : part.start_counts) into.start_counts[k] += v;
        for (auto& [k, v] : part.end_counts) into.end_counts[k] += v;
      });
}

}  // namespace pc4pm
