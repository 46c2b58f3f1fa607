#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pc4pm/core/ela.hpp"
#include "pc4pm/core/json_codec.hpp"
#include "pc4pm/core/log.hpp"
#include "pc4pm/core/run_context.hpp"

namespace pc4pm {

// Resources and activities in lexicographic order; counts[r][a].
struct ResourceActivityMatrix {
  std::vector<std::string> resources;
  std::vector<std::string> activities;
  std::vector<std::vector<std::int64_t>> counts;

  std::set<std::string> support(std::size_t resource) const;

  friend bool operator==(const ResourceActivityMatrix&, const ResourceActivityMatrix&) = default;
};

struct Role {
  std::string role_id;
  std::vector<std::string> members;  // sorted
  std::set<std::string> profile;

  friend bool operator==(const Role&, const Role&) = default;
};

struct RoleSet {
  std::vector<Role> roles;  // ordered by smallest member

  friend bool operator==(const RoleSet&, const RoleSet&) = default;
};

// Events without a resource are ignored. Throws NoResources if none has one.
ResourceActivityMatrix build_matrix(const EventLog& log, unsigned workers = 1);

// Nonzero cells become max(1, c + u), u uniform in [-noise_bound, noise_bound],
// one stream per cell; zero cells stay zero.
ResourceActivityMatrix perturb_matrix(const ResourceActivityMatrix& m, std::int64_t noise_bound,
                                      std::uint64_t seed);

// Complete-linkage agglomerative clustering on the Jaccard similarity of
// activity supports, merging while the best similarity is >= threshold. Ties
// go to the pair of clusters with the smallest members.
RoleSet mine_roles(const ResourceActivityMatrix& m, double threshold);

struct RoleMiningResult {
  RoleSet roles;
  EventLogAbstraction matrix;  // kind "resource-activity-matrix"
};

RoleMiningResult privacy_aware_roles(const EventLog& log, std::int64_t noise_bound,
                                     double threshold, std::uint64_t seed,
                                     const RunContext& ctx = {});

// Matrix abstraction: a "resource" column plus one integer column per activity.
EventLogAbstraction matrix_to_ela(const ResourceActivityMatrix& m);
ResourceActivityMatrix matrix_from_ela(const EventLogAbstraction& ela);

// Role set abstraction (kind "role-set"): one row per (role_id, relation,
// value) with relation "member" or "activity".
EventLogAbstraction roles_to_ela(const RoleSet& roles);
Json roles_to_json(const RoleSet& roles);

}  // namespace pc4pm
