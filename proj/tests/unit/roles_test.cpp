#include "pc4pm/roles/roles.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace pc4pm {
namespace {

using testing::error_of;
using testing::fix1;

ResourceActivityMatrix random_matrix(Rng& rng) {
  ResourceActivityMatrix m;
  std::size_t nr = 1 + rng.below(7);
  std::size_t na = 1 + rng.below(6);
  for (std::size_t r = 0; r < nr; ++r) m.resources.push_back("r" + std::to_string(r));
  for (std::size_t a = 0; a < na; ++a) m.activities.push_back(std::string(1, char('a' + a)));
  m.counts.assign(nr, std::vector<std::int64_t>(na, 0));
  for (auto& row : m.counts) {
    for (auto& c : row) c = rng.below(3) == 0 ? 0 : rng.between(1, 40);
    if (std::all_of(row.begin(), row.end(), [](std::int64_t c) { return c == 0; })) {
      row[rng.below(na)] = 1;
    }
  }
  return m;
}

TEST(BuildMatrixTest, Fix1) {
  ResourceActivityMatrix m = build_matrix(fix1());
  EXPECT_EQ(m.resources, (std::vector<std::string>{"r1", "r2", "r3"}));
  EXPECT_EQ(m.activities, (std::vector<std::string>{"a", "b", "c", "d"}));
  std::vector<std::vector<std::int64_t>> expected{{3, 0, 0, 0}, {0, 2, 2, 0}, {0, 0, 0, 1}};
  EXPECT_EQ(m.counts, expected);
  EXPECT_EQ(build_matrix(fix1(), 3), m);
}

TEST(BuildMatrixTest, NoResourcesAndSingle) {
  EXPECT_EQ(error_of([] { build_matrix(EventLog{}); }), ErrorCode::kNoResources);
  EventLog one = testing::log_of({{"a", "b"}, {"c"}});
  for (auto& t : one.traces) {
    for (auto& e : t.events) e.attributes.set("org:resource", TypedValue::string("solo"));
  }
  ResourceActivityMatrix m = build_matrix(one);
  EXPECT_EQ(m.resources.size(), 1u);
  EXPECT_EQ(m.activities.size(), 3u);
}

TEST(PerturbTest, SupportAndBounds) {
  ResourceActivityMatrix m = build_matrix(fix1());
  std::size_t changed = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    ResourceActivityMatrix p = perturb_matrix(m, 1, seed);
    for (std::size_t r = 0; r < m.resources.size(); ++r) {
      EXPECT_EQ(p.support(r), m.support(r));
      for (std::size_t a = 0; a < m.activities.size(); ++a) {
        if (m.counts[r][a] > 0) {
          EXPECT_GE(p.counts[r][a], std::max<std::int64_t>(1, m.counts[r][a] - 1));
          EXPECT_LE(p.counts[r][a], m.counts[r][a] + 1);
        }
      }
    }
    if (p != m) ++changed;
    EXPECT_EQ(p, perturb_matrix(m, 1, seed));
  }
  EXPECT_GE(changed, 90u);
  EXPECT_EQ(error_of([&] { perturb_matrix(m, 0, 1); }), ErrorCode::kInvalidParameter);
}

TEST(MineRolesTest, Fix1) {
  RoleSet roles = mine_roles(build_matrix(fix1()), 0.5);
  ASSERT_EQ(roles.roles.size(), 3u);
  EXPECT_EQ(roles.roles[0].members, (std::vector<std::string>{"r1"}));
  EXPECT_EQ(roles.roles[1].profile, (std::set<std::string>{"b", "c"}));
  EXPECT_EQ(roles.roles[2].role_id, "role-3");
  RoleSet all = mine_roles(build_matrix(fix1()), 0.0);
  ASSERT_EQ(all.roles.size(), 1u);
  EXPECT_EQ(all.roles[0].members.size(), 3u);
  EXPECT_EQ(all.roles[0].profile.size(), 4u);
}

TEST(MineRolesTest, IdenticalSupportsMergeAtOne) {
  ResourceActivityMatrix m;
  m.resources = {"x", "y", "z"};
  m.activities = {"a", "b"};
  m.counts = {{5, 1}, {2, 9}, {0, 3}};
  RoleSet roles = mine_roles(m, 1.0);
  ASSERT_EQ(roles.roles.size(), 2u);
  EXPECT_EQ(roles.roles[0].members, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(error_of([&] { mine_roles(m, 1.5); }), ErrorCode::kInvalidParameter);
}

TEST(MineRolesTest, CompleteLinkage) {
  // J(x,y) = J(y,z) = 1/3 and J(x,z) = 0: once x and y merge, z cannot join.
  ResourceActivityMatrix m;
  m.resources = {"x", "y", "z"};
  m.activities = {"a", "b", "c", "d"};
  m.counts = {{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  RoleSet roles = mine_roles(m, 1.0 / 3.0);
  ASSERT_EQ(roles.roles.size(), 2u);
  EXPECT_EQ(roles.roles[0].members, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(roles.roles[1].members, (std::vector<std::string>{"z"}));
}

TEST(MineRolesTest, PartitionAndInvariance) {
  Rng rng(6);
  for (int round = 0; round < 100; ++round) {
    ResourceActivityMatrix m = random_matrix(rng);
    double theta = static_cast<double>(rng.below(11)) / 10.0;
    RoleSet base = mine_roles(m, theta);
    std::vector<std::string> members;
    for (const auto& role : base.roles) {
      EXPECT_FALSE(role.profile.empty());
      members.insert(members.end(), role.members.begin(), role.members.end());
    }
    std::sort(members.begin(), members.end());
    EXPECT_EQ(members, m.resources);
    for (std::int64_t b : {1, 5, 50}) {
      EXPECT_EQ(mine_roles(perturb_matrix(m, b, rng.next()), theta), base);
    }
  }
}

TEST(PrivacyAwareRolesTest, Fix1) {
  RunContext ctx{testing::ts("2024-01-01T00:00:00Z"), 1};
  RoleMiningResult res = privacy_aware_roles(fix1(), 3, 0.5, 42, ctx);
  EXPECT_EQ(res.roles, mine_roles(build_matrix(fix1()), 0.5));
  EXPECT_EQ(parse_ela(write_ela(res.matrix)), res.matrix);
  EXPECT_EQ(res.matrix.header.abstraction_kind, "resource-activity-matrix");
  EXPECT_EQ(res.matrix.header.privacy_metadata.records.size(), 1u);
  ResourceActivityMatrix back = matrix_from_ela(res.matrix);
  EXPECT_EQ(back, perturb_matrix(build_matrix(fix1()), 3, 42));
  EventLogAbstraction roles = roles_to_ela(res.roles);
  EXPECT_EQ(parse_ela(write_ela(roles)), roles);
  EXPECT_EQ(roles_to_json(res.roles).size(), 3u);
}

}  // namespace
}  // namespace pc4pm
