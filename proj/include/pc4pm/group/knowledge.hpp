#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pc4pm/core/log.hpp"

namespace pc4pm {

enum class KnowledgeKind { kSet, kMultiset, kSubsequence };

std::string_view knowledge_kind_name(KnowledgeKind kind);
std::optional<KnowledgeKind> parse_knowledge_kind(std::string_view name);

// What an adversary knows about a victim's case. Items are kept canonical:
// sorted and unique for sets, sorted for multisets, in trace order for
// subsequences.
struct BackgroundKnowledge {
  KnowledgeKind kind = KnowledgeKind::kSet;
  std::vector<std::string> items;

  static BackgroundKnowledge make(KnowledgeKind kind, std::vector<std::string> items);

  auto operator<=>(const BackgroundKnowledge&) const = default;
};

// Whether a trace with activity sequence `activities` is consistent with the
// knowledge (subset / sub-multiset / order-preserving embedding).
bool matches(const std::vector<std::string>& activities, const BackgroundKnowledge& knowledge);

std::set<std::string> matching_cases(const EventLog& log, const BackgroundKnowledge& knowledge);

// Every distinct knowledge instance of size 1..max_size derivable from one
// trace's activity sequence.
std::set<BackgroundKnowledge> derivable_knowledge(const std::vector<std::string>& activities,
                                                  KnowledgeKind kind, std::size_t max_size);

}  // namespace pc4pm
