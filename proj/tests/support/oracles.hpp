#pragma once

// Brute-force reference computations used by tests. They deliberately share
// no code paths with the library routines they check.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pc4pm/core/log.hpp"
#include "pc4pm/group/knowledge.hpp"

namespace pc4pm::testing {

bool oracle_match(const std::vector<std::string>& activities, KnowledgeKind kind,
                  const std::vector<std::string>& items);

// The whole knowledge universe over `alphabet` with sizes 1..max_size:
// all subsets, all multisets, or all |A|^k sequences.
std::vector<BackgroundKnowledge> all_knowledge(const std::set<std::string>& alphabet,
                                               KnowledgeKind kind, std::size_t max_size);

struct OracleTlkc {
  std::size_t l = 1;
  std::size_t k = 1;
  double c = 1.0;
  std::optional<std::string> sensitive_attribute;
};

std::set<BackgroundKnowledge> oracle_violations(const EventLog& log, const OracleTlkc& params,
                                                KnowledgeKind kind);

// case id -> smallest number of cases matching any knowledge consistent with
// that case (|log| when no knowledge applies).
std::map<std::string, std::size_t> oracle_min_groups(const EventLog& log, KnowledgeKind kind,
                                                     std::size_t max_size);

double laplace_cdf(double x, double scale);

// Two-sided one-sample Kolmogorov-Smirnov p-value (asymptotic distribution
// with Stephens' small-sample correction).
double ks_p_value(std::vector<double> sample, double (*cdf)(double, double), double scale);

}  // namespace pc4pm::testing
