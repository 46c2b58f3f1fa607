#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pc4pm/core/log.hpp"

namespace pc4pm {

using Variant = std::vector<std::string>;
using VariantCounts = std::map<Variant, std::size_t>;

struct DirectlyFollowsGraph {
  std::map<std::pair<std::string, std::string>, std::size_t> pair_counts;
  std::map<std::string, std::size_t> start_counts;
  std::map<std::string, std::size_t> end_counts;

  bool empty() const {
    return pair_counts.empty() && start_counts.empty() && end_counts.empty();
  }

  friend bool operator==(const DirectlyFollowsGraph&, const DirectlyFollowsGraph&) = default;
};

// Counts sum to the number of traces (an empty trace is the empty variant).
VariantCounts variants(const EventLog& log, unsigned workers = 1);

DirectlyFollowsGraph df_graph(const EventLog& log, unsigned workers = 1);

}  // namespace pc4pm
