#include "pc4pm/group/knowledge.hpp"

#include <algorithm>
#include <map>

namespace pc4pm {

std::string_view knowledge_kind_name(KnowledgeKind kind) {
  switch (kind) {
    case KnowledgeKind::kSet: return "set";
    case KnowledgeKind::kMultiset: return "multiset";
    case KnowledgeKind::kSubsequence: return "subsequence";
  }
  return "";
}

std::optional<KnowledgeKind> parse_knowledge_kind(std::string_view name) {
  if (name == "set") return KnowledgeKind::kSet;
  if (name == "multiset") return KnowledgeKind::kMultiset;
  if (name == "subsequence") return KnowledgeKind::kSubsequence;
  return std::nullopt;
}

BackgroundKnowledge BackgroundKnowledge::make(KnowledgeKind kind, std::vector<std::string> items) {
  if (kind != KnowledgeKind::kSubsequence) std::sort(items.begin(), items.end());
  if (kind == KnowledgeKind::kSet) items.erase(std::unique(items.begin(), items.end()), items.end());
  return BackgroundKnowledge{kind, std::move(items)};
}

bool matches(const std::vector<std::string>& activities, const BackgroundKnowledge& knowledge) {
  switch (knowledge.kind) {
    case KnowledgeKind::kSet:
      return std::all_of(knowledge.items.begin(), knowledge.items.end(), [&](const auto& item) {
        return std::find(activities.begin(), activities.end(), item) != activities.end();
      });
    case KnowledgeKind::kMultiset: {
      std::map<std::string_view, std::size_t> available;
      for (const auto& a : activities) ++available[a];
      std::map<std::string_view, std::size_t> needed;
      for (const auto& item : knowledge.items) ++needed[item];
      for (const auto& [item, n] : needed) {
        auto it = available.find(item);
        if (it == available.end() || it->second < n) return false;
      }
      return true;
    }
    case KnowledgeKind::kSubsequence: {
      std::size_t next = 0;
      for (const auto& a : activities) {
        if (next < knowledge.items.size() && a == knowledge.items[next]) ++next;
      }
      return next == knowledge.items.size();
    }
  }
  return false;
}

std::set<std::string> matching_cases(const EventLog& log, const BackgroundKnowledge& knowledge) {
  std::set<std::string> out;
  for (const auto& trace : log.traces) {
    if (matches(trace.activities(), knowledge)) out.insert(trace.case_id());
  }
  return out;
}

namespace {

void sets_from(const std::vector<std::string>& symbols, std::size_t start, std::size_t max_size,
               std::vector<std::string>& current, std::set<BackgroundKnowledge>& out) {
  for (std::size_t i = start; i < symbols.size(); ++i) {
    current.push_back(symbols[i]);
    out.insert({KnowledgeKind::kSet, current});
    if (current.size() < max_size) sets_from(symbols, i + 1, max_size, current, out);
    current.pop_back();
  }
}

void multisets_from(const std::vector<std::pair<std::string, std::size_t>>& counts,
                    std::size_t start, std::size_t max_size, std::vector<std::string>& current,
                    std::set<BackgroundKnowledge>& out) {
  for (std::size_t i = start; i < counts.size(); ++i) {
    const auto& [symbol, available] = counts[i];
    std::size_t pushed = 0;
    while (pushed < available && current.size() < max_size) {
      current.push_back(symbol);
      ++pushed;
      out.insert({KnowledgeKind::kMultiset, current});
      multisets_from(counts, i + 1, max_size, current, out);
    }
    current.resize(current.size() - pushed);
  }
}

// Enumerates each distinct subsequence once by always taking the earliest
// remaining occurrence of the next symbol.
void subsequences_from(const std::vector<std::string>& activities,
                       const std::vector<std::string>& symbols, std::size_t pos,
                       std::size_t max_size, std::vector<std::string>& current,
                       std::set<BackgroundKnowledge>& out) {
  for (const auto& symbol : symbols) {
    auto it = std::find(activities.begin() + static_cast<std::ptrdiff_t>(pos), activities.end(),
                        symbol);
    if (it == activities.end()) continue;
    current.push_back(symbol);
    out.insert({KnowledgeKind::kSubsequence, current});
    if (current.size() < max_size) {
      subsequences_from(activities, symbols,
                        static_cast<std::size_t>(it - activities.begin()) + 1, max_size, current,
                        out);
    }
    current.pop_back();
  }
}

}  // namespace

std::set<BackgroundKnowledge> derivable_knowledge(const std::vector<std::string>& activities,
                                                  KnowledgeKind kind, std::size_t max_size) {
  std::set<BackgroundKnowledge> out;
  if (max_size == 0 || activities.empty()) return out;
  std::vector<std::string> symbols(activities);
  std::sort(symbols.begin(), symbols.end());
  symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
  std::vector<std::string> current;
  switch (kind) {
    case KnowledgeKind::kSet:
      sets_from(symbols, 0, max_size, current, out);
      break;
    case KnowledgeKind::kMultiset: {
      std::vector<std::pair<std::string, std::size_t>> counts;
      for (const auto& s : symbols) {
        counts.emplace_back(s, static_cast<std::size_t>(
                                   std::count(activities.begin(), activities.end(), s)));
      }
      multisets_from(counts, 0, max_size, current, out);
      break;
    }
    case KnowledgeKind::kSubsequence:
      subsequences_from(activities, symbols, 0, max_size, current, out);
      break;
  }
  return out;
}

}  // namespace pc4pm
