#include "pc4pm/group/tlkc.hpp"

#include <algorithm>
#include <map>

#include "pc4pm/anon/operations.hpp"
#include "pc4pm/error.hpp"
#include "pc4pm/util/parallel.hpp"

namespace pc4pm {

void TlkcParams::check() const {
  if (l < 1) throw Error(ErrorCode::kInvalidParameter, "l must be at least 1");
  if (k < 1) throw Error(ErrorCode::kInvalidParameter, "k must be at least 1");
  if (!(c > 0.0 && c <= 1.0)) throw Error(ErrorCode::kInvalidParameter, "c must lie in (0, 1]");
}

namespace {

struct Case {
  std::vector<std::string> activities;
  std::optional<std::string> sensitive;
};

struct Group {
  std::size_t size = 0;
  std::map<std::string, std::size_t> sensitive;
};

using Groups = std::map<BackgroundKnowledge, Group>;

std::vector<Case> cases_of(const EventLog& log, const TlkcParams& params) {
  std::vector<Case> cases;
  cases.reserve(log.traces.size());
  for (const auto& trace : log.traces) {
    Case c{trace.activities(), std::nullopt};
    if (params.sensitive_attribute) {
      if (const TypedValue* v = trace.attributes.get(*params.sensitive_attribute)) {
        c.sensitive = v->to_text();
      }
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

// Every instance derivable from some case is exactly an occurring instance, and
// its group is the set of cases deriving it.
std::set<BackgroundKnowledge> violations(const std::vector<Case>& cases, const TlkcParams& params,
                                         KnowledgeKind kind, unsigned workers) {
  Groups groups = parallel_map_reduce<Groups>(
      cases.size(), workers,
      [&](std::size_t begin, std::size_t end) {
        Groups part;
        for (std::size_t i = begin; i < end; ++i) {
          for (auto& knowledge : derivable_knowledge(cases[i].activities, kind, params.l)) {
            Group& g = part[knowledge];
            ++g.size;
            if (cases[i].sensitive) ++g.sensitive[*cases[i].sensitive];
          }
        }
        return part;
      },
      [](Groups& into, Groups&& from) {
        for (auto& [knowledge, g] : from) {
          Group& target = into[knowledge];
          target.size += g.size;
          for (const auto& [value, n] : g.sensitive) target.sensitive[value] += n;
        }
      });

  std::set<BackgroundKnowledge> out;
  for (const auto& [knowledge, g] : groups) {
    bool violating = g.size < params.k;
    if (!violating && params.sensitive_attribute) {
      std::size_t top = 0;
      for (const auto& [value, n] : g.sensitive) top = std::max(top, n);
      violating = static_cast<double>(top) / static_cast<double>(g.size) > params.c;
    }
    if (violating) out.insert(knowledge);
  }
  return out;
}

std::vector<Case> without(const std::vector<Case>& cases, const std::string& activity) {
  std::vector<Case> out = cases;
  for (auto& c : out) std::erase(c.activities, activity);
  return out;
}

}  // namespace

std::set<BackgroundKnowledge> find_violations(const EventLog& log, const TlkcParams& params,
                                              KnowledgeKind kind, unsigned workers) {
  params.check();
  return violations(cases_of(log, params), params, kind, workers);
}

EventLog enforce(const EventLog& log, const TlkcParams& params, KnowledgeKind kind,
                 std::uint64_t /*seed*/, const RunContext& ctx) {
  params.check();
  if (params.sensitive_attribute &&
      !log_has_attribute(log, AttributeLevel::kTrace, *params.sensitive_attribute)) {
    throw Error(ErrorCode::kUnknownAttribute,
                "unknown trace attribute '" + *params.sensitive_attribute + "'");
  }

  EventLog current = params.t ? generalize(log, AttributeLevel::kEvent,
                                           std::string(kTimeTimestamp), *params.t, ctx)
                              : log;
  std::vector<Case> cases = cases_of(current, params);
  std::set<BackgroundKnowledge> remaining = violations(cases, params, kind, ctx.workers);
  while (!remaining.empty()) {
    std::set<std::string> alphabet;
    for (const auto& c : cases) alphabet.insert(c.activities.begin(), c.activities.end());

    std::optional<std::string> best;
    std::size_t best_left = 0;
    std::vector<Case> best_cases;
    for (const auto& activity : alphabet) {
      std::vector<Case> candidate = without(cases, activity);
      std::size_t left = violations(candidate, params, kind, ctx.workers).size();
      if (!best || left < best_left) {
        best = activity;
        best_left = left;
        best_cases = std::move(candidate);
      }
    }

    Selector selector = Selector::where(AttributeLevel::kEvent, std::string(kConceptName),
                                        Comparator::kEq, TypedValue::string(*best));
    current = suppress(current, selector, {}, ctx);
    if (current.event_count() == 0) {
      throw Error(ErrorCode::kEmptyResult,
                  "enforcement suppressed every event; the parameters are too strict");
    }
    cases = std::move(best_cases);
    remaining = violations(cases, params, kind, ctx.workers);
  }
  return current;
}

}  // namespace pc4pm
