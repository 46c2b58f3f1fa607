#include "pc4pm/roles/roles.hpp"

#include <algorithm>
#include <map>

#include "pc4pm/core/xes.hpp"
#include "pc4pm/error.hpp"
#include "pc4pm/util/parallel.hpp"
#include "pc4pm/util/random.hpp"

namespace pc4pm {

std::set<std::string> ResourceActivityMatrix::support(std::size_t resource) const {
  std::set<std::string> out;
  for (std::size_t a = 0; a < activities.size(); ++a) {
    if (counts[resource][a] != 0) out.insert(activities[a]);
  }
  return out;
}

ResourceActivityMatrix build_matrix(const EventLog& log, unsigned workers) {
  using Cells = std::map<std::pair<std::string, std::string>, std::int64_t>;
  Cells cells = parallel_map_reduce<Cells>(
      log.traces.size(), workers,
      [&](std::size_t begin, std::size_t end) {
        Cells part;
        for (std::size_t t = begin; t < end; ++t) {
          for (const auto& e : log.traces[t].events) {
            if (auto r = e.resource()) ++part[{*r, e.activity()}];
          }
        }
        return part;
      },
      [](Cells& into, Cells&& from) {
        for (const auto& [k, n] : from) into[k] += n;
      });
  if (cells.empty()) throw Error(ErrorCode::kNoResources, "no event carries a resource");

  std::set<std::string> resources;
  std::set<std::string> activities;
  for (const auto& [k, n] : cells) {
    resources.insert(k.first);
    activities.insert(k.second);
  }
  ResourceActivityMatrix m;
  m.resources.assign(resources.begin(), resources.end());
  m.activities.assign(activities.begin(), activities.end());
  m.counts.assign(m.resources.size(), std::vector<std::int64_t>(m.activities.size(), 0));
  for (const auto& [k, n] : cells) {
    auto r = std::lower_bound(m.resources.begin(), m.resources.end(), k.first) - m.resources.begin();
    auto a = std::lower_bound(m.activities.begin(), m.activities.end(), k.second) -
             m.activities.begin();
    m.counts[r][a] = n;
  }
  return m;
}

ResourceActivityMatrix perturb_matrix(const ResourceActivityMatrix& m, std::int64_t noise_bound,
                                      std::uint64_t seed) {
  if (noise_bound < 1) throw Error(ErrorCode::kInvalidParameter, "noise_bound must be at least 1");
  ResourceActivityMatrix out = m;
  for (std::size_t r = 0; r < m.resources.size(); ++r) {
    for (std::size_t a = 0; a < m.activities.size(); ++a) {
      std::int64_t c = m.counts[r][a];
      if (c == 0) continue;
      Rng rng(mix_seed(mix_seed(seed, m.resources[r]), m.activities[a]));
      out.counts[r][a] = std::max<std::int64_t>(1, c + rng.between(-noise_bound, noise_bound));
    }
  }
  return out;
}

namespace {

double jaccard(const std::set<std::string>& x, const std::set<std::string>& y) {
  if (x.empty() && y.empty()) return 1.0;
  std::size_t common = 0;
  for (const auto& v : x) common += y.count(v);
  return static_cast<double>(common) / static_cast<double>(x.size() + y.size() - common);
}

}  // namespace

RoleSet mine_roles(const ResourceActivityMatrix& m, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "threshold must lie in [0, 1]");
  }
  const std::size_t n = m.resources.size();
  std::vector<std::set<std::string>> supports(n);
  for (std::size_t r = 0; r < n; ++r) supports[r] = m.support(r);
  std::vector<std::vector<double>> sim(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) sim[i][j] = sim[j][i] = jaccard(supports[i], supports[j]);
  }

  // Clusters hold resource indices; resources are sorted, so the first index
  // is the smallest member and cluster order is member order.
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t r = 0; r < n; ++r) clusters.push_back({r});
  while (clusters.size() > 1) {
    double best = -1;
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        double linkage = 1.0;
        for (std::size_t x : clusters[i]) {
          for (std::size_t y : clusters[j]) linkage = std::min(linkage, sim[x][y]);
        }
        if (linkage > best) {
          best = linkage;
          bi = i;
          bj = j;
        }
      }
    }
    if (best < threshold) break;
    clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
    std::sort(clusters[bi].begin(), clusters[bi].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    std::sort(clusters.begin(), clusters.end());
  }

  RoleSet out;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    Role role;
    role.role_id = "role-" + std::to_string(c + 1);
    for (std::size_t r : clusters[c]) {
      role.members.push_back(m.resources[r]);
      role.profile.insert(supports[r].begin(), supports[r].end());
    }
    out.roles.push_back(std::move(role));
  }
  return out;
}

EventLogAbstraction matrix_to_ela(const ResourceActivityMatrix& m) {
  EventLogAbstraction ela;
  ela.header.abstraction_kind = "resource-activity-matrix";
  ela.header.technique = "role-mining";
  ela.columns.push_back({"resource", ValueKind::kString});
  for (const auto& a : m.activities) {
    if (a == "resource") {
      throw Error(ErrorCode::kInvalidParameter,
                  "activity 'resource' clashes with the matrix resource column");
    }
    ela.columns.push_back({a, ValueKind::kInteger});
  }
  for (std::size_t r = 0; r < m.resources.size(); ++r) {
    Row row{TypedValue::string(m.resources[r])};
    for (std::int64_t c : m.counts[r]) row.push_back(TypedValue::integer(c));
    ela.rows.push_back(std::move(row));
  }
  return ela;
}

ResourceActivityMatrix matrix_from_ela(const EventLogAbstraction& ela) {
  validate(ela);
  if (ela.header.abstraction_kind != "resource-activity-matrix" || ela.columns.empty() ||
      ela.columns[0].name != "resource" || ela.columns[0].kind != ValueKind::kString) {
    throw Error(ErrorCode::kMalformedAbstraction, "not a resource-activity matrix");
  }
  ResourceActivityMatrix m;
  for (std::size_t c = 1; c < ela.columns.size(); ++c) {
    if (ela.columns[c].kind != ValueKind::kInteger) {
      throw Error(ErrorCode::kMalformedAbstraction, "matrix cells must be integers");
    }
    m.activities.push_back(ela.columns[c].name);
  }
  for (const auto& row : ela.rows) {
    m.resources.push_back(row[0].as_string());
    std::vector<std::int64_t> counts;
    for (std::size_t c = 1; c < row.size(); ++c) counts.push_back(row[c].as_integer());
    m.counts.push_back(std::move(counts));
  }
  return m;
}

EventLogAbstraction roles_to_ela(const RoleSet& roles) {
  EventLogAbstraction ela;
  ela.header.abstraction_kind = "role-set";
  ela.header.technique = "role-mining";
  ela.columns = {{"role_id", ValueKind::kString},
                 {"relation", ValueKind::kString},
                 {"value", ValueKind::kString}};
  for (const auto& role : roles.roles) {
    for (const auto& m : role.members) {
      ela.rows.push_back({TypedValue::string(role.role_id), TypedValue::string("member"),
                          TypedValue::string(m)});
    }
    for (const auto& a : role.profile) {
      ela.rows.push_back({TypedValue::string(role.role_id), TypedValue::string("activity"),
                          TypedValue::string(a)});
    }
  }
  return ela;
}

Json roles_to_json(const RoleSet& roles) {
  Json out = Json::array();
  for (const auto& role : roles.roles) {
    out.push_back({{"role_id", role.role_id}, {"members", role.members}, {"profile", role.profile}});
  }
  return out;
}

RoleMiningResult privacy_aware_roles(const EventLog& log, std::int64_t noise_bound,
                                     double threshold, std::uint64_t seed,
                                     const RunContext& ctx) {
  ResourceActivityMatrix perturbed = perturb_matrix(build_matrix(log, ctx.workers), noise_bound, seed);
  RoleMiningResult result;
  result.roles = mine_roles(perturbed, threshold);

  result.matrix = matrix_to_ela(perturbed);
  result.matrix.header.origin_log_id = log_id(log);
  result.matrix.header.privacy_metadata = log.privacy_metadata;
  Json parameters = {{"noise_bound", noise_bound}, {"threshold", threshold}, {"seed", seed}};
  result.matrix.header.privacy_metadata.append(
      RecordFields{OperationKind::kAddition, OperationLevel::kLog,
                   {std::string(kConceptName), std::string(kOrgResource)},
                   parameter_digest(canonical_text(parameters)), ctx.applied_at});
  return result;
}

}  // namespace pc4pm
