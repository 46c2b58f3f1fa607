#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pc4pm/group/knowledge.hpp"
#include "pc4pm/group/tlkc.hpp"

namespace pc4pm {
namespace {

using testing::error_of;
using testing::fix1;
using testing::log_of;

const RunContext kCtx{testing::ts("2024-01-01T00:00:00Z"), 1};

BackgroundKnowledge set_of(std::vector<std::string> items) {
  return BackgroundKnowledge::make(KnowledgeKind::kSet, std::move(items));
}

TEST(MatchingCasesTest, Fix1) {
  EXPECT_EQ(matching_cases(fix1(), set_of({"d"})), (std::set<std::string>{"c3"}));
  auto ac = BackgroundKnowledge::make(KnowledgeKind::kSubsequence, {"a", "c"});
  EXPECT_EQ(matching_cases(fix1(), ac), (std::set<std::string>{"c1", "c2"}));
  auto ca = BackgroundKnowledge::make(KnowledgeKind::kSubsequence, {"c", "a"});
  EXPECT_TRUE(matching_cases(fix1(), ca).empty());
  EXPECT_TRUE(matching_cases(EventLog{}, set_of({"a"})).empty());
}

TEST(MatchingCasesTest, Multiset) {
  EventLog log = log_of({{"a", "b", "a"}, {"a", "b"}});
  auto aa = BackgroundKnowledge::make(KnowledgeKind::kMultiset, {"a", "a"});
  EXPECT_EQ(matching_cases(log, aa), (std::set<std::string>{"c1"}));
  auto set_aa = BackgroundKnowledge::make(KnowledgeKind::kSet, {"a", "a"});
  EXPECT_EQ(set_aa.items.size(), 1u);
}

TEST(MatchingCasesTest, AgreesWithOracle) {
  Rng rng(4);
  for (int round = 0; round < 60; ++round) {
    EventLog log = testing::random_log(rng, {});
    for (auto kind : {KnowledgeKind::kSet, KnowledgeKind::kMultiset, KnowledgeKind::kSubsequence}) {
      for (const auto& bk : testing::all_knowledge(log.alphabet(), kind, 2)) {
        for (const auto& trace : log.traces) {
          ASSERT_EQ(matches(trace.activities(), bk),
                    testing::oracle_match(trace.activities(), kind, bk.items));
        }
      }
    }
  }
}

TEST(DerivableKnowledgeTest, MatchesOwnTrace) {
  Rng rng(8);
  for (int round = 0; round < 100; ++round) {
    EventLog log = testing::random_log(rng, {});
    for (auto kind : {KnowledgeKind::kSet, KnowledgeKind::kMultiset, KnowledgeKind::kSubsequence}) {
      const auto acts = log.traces[0].activities();
      std::set<BackgroundKnowledge> expected;
      for (const auto& bk : testing::all_knowledge(log.alphabet(), kind, 3)) {
        if (testing::oracle_match(acts, kind, bk.items)) expected.insert(bk);
      }
      EXPECT_EQ(derivable_knowledge(acts, kind, 3), expected);
    }
  }
}

TEST(FindViolationsTest, Fix1Examples) {
  TlkcParams p;
  p.k = 2;
  EXPECT_EQ(find_violations(fix1(), p, KnowledgeKind::kSet),
            (std::set<BackgroundKnowledge>{set_of({"d"})}));
  p.k = 1;
  EXPECT_TRUE(find_violations(fix1(), p, KnowledgeKind::kSet).empty());
  p.k = 3;
  EXPECT_EQ(find_violations(fix1(), p, KnowledgeKind::kSet),
            (std::set<BackgroundKnowledge>{set_of({"b"}), set_of({"c"}), set_of({"d"})}));
}

TEST(FindViolationsTest, Confidence) {
  EventLog log = fix1();
  log.traces[0].attributes.set("diagnosis", TypedValue::string("flu"));
  log.traces[1].attributes.set("diagnosis", TypedValue::string("flu"));
  log.traces[2].attributes.set("diagnosis", TypedValue::string("cold"));
  TlkcParams p;
  p.c = 0.9;
  p.sensitive_attribute = "diagnosis";
  // {b}: both cases have flu -> confidence 1; {a}: 2/3.
  auto v = find_violations(log, p, KnowledgeKind::kSet);
  EXPECT_TRUE(v.contains(set_of({"b"})));
  EXPECT_TRUE(v.contains(set_of({"d"})));
  EXPECT_FALSE(v.contains(set_of({"a"})));
  p.c = 0.5;
  EXPECT_TRUE(find_violations(log, p, KnowledgeKind::kSet).contains(set_of({"a"})));
}

TEST(FindViolationsTest, AgreesWithOracleAndWorkers) {
  Rng rng(31);
  for (int round = 0; round < 80; ++round) {
    EventLog log = testing::random_log(rng, {});
    for (std::size_t t = 0; t < log.traces.size(); ++t) {
      if (rng.below(3) != 0) {
        log.traces[t].attributes.set("s", TypedValue::string(rng.below(2) ? "x" : "y"));
      }
    }
    for (auto kind : {KnowledgeKind::kSet, KnowledgeKind::kMultiset, KnowledgeKind::kSubsequence}) {
      TlkcParams p;
      p.l = 1 + rng.below(2);
      p.k = 1 + rng.below(3);
      p.c = rng.below(2) ? 1.0 : 0.7;
      if (p.c < 1.0) p.sensitive_attribute = "s";
      testing::OracleTlkc o{p.l, p.k, p.c, p.sensitive_attribute};
      auto expected = testing::oracle_violations(log, o, kind);
      EXPECT_EQ(find_violations(log, p, kind, 1), expected);
      EXPECT_EQ(find_violations(log, p, kind, 3), expected);
    }
  }
}

TEST(EnforceTest, Fix1K2) {
  TlkcParams p;
  p.k = 2;
  EventLog out = enforce(fix1(), p, KnowledgeKind::kSet, 0, kCtx);
  EXPECT_EQ(out.find_trace("c3")->activities(), (std::vector<std::string>{"a"}));
  EXPECT_EQ(out.event_count(), 7u);
  EXPECT_TRUE(find_violations(out, p, KnowledgeKind::kSet).empty());
  ASSERT_EQ(out.privacy_metadata.records.size(), 1u);
  EXPECT_EQ(out.privacy_metadata.records[0].kind, OperationKind::kSuppression);
}

TEST(EnforceTest, GeneralizesFirst) {
  TlkcParams p;
  p.k = 2;
  p.t = Granularity::kDay;
  EventLog out = enforce(fix1(), p, KnowledgeKind::kSet, 0, kCtx);
  ASSERT_EQ(out.privacy_metadata.records.size(), 2u);
  EXPECT_EQ(out.privacy_metadata.records[0].kind, OperationKind::kGeneralization);
  EXPECT_EQ(out.privacy_metadata.records[1].kind, OperationKind::kSuppression);
  EXPECT_EQ(out.traces[0].events[2].timestamp(), testing::ts("2021-06-10T00:00:00Z"));
}

TEST(EnforceTest, KOneIsIdentity) {
  TlkcParams p;
  EventLog in = fix1();
  EventLog out = enforce(in, p, KnowledgeKind::kSubsequence, 0, kCtx);
  EXPECT_EQ(out, in);
}

TEST(EnforceTest, EmptyResultAndBadParams) {
  TlkcParams p;
  p.k = 5;
  EXPECT_EQ(error_of([&] { enforce(fix1(), p, KnowledgeKind::kSet, 0, kCtx); }),
            ErrorCode::kEmptyResult);
  p.k = 0;
  EXPECT_EQ(error_of([&] { enforce(fix1(), p, KnowledgeKind::kSet, 0, kCtx); }),
            ErrorCode::kInvalidParameter);
  p.k = 2;
  p.c = 0;
  EXPECT_EQ(error_of([&] { enforce(fix1(), p, KnowledgeKind::kSet, 0, kCtx); }),
            ErrorCode::kInvalidParameter);
  p.c = 0.5;
  p.sensitive_attribute = "nope";
  EXPECT_EQ(error_of([&] { enforce(fix1(), p, KnowledgeKind::kSet, 0, kCtx); }),
            ErrorCode::kUnknownAttribute);
}

TEST(EnforceTest, SoundOnRandomLogs) {
  Rng rng(77);
  for (int round = 0; round < 60; ++round) {
    EventLog log = testing::random_log(rng, {});
    for (auto kind : {KnowledgeKind::kSet, KnowledgeKind::kMultiset, KnowledgeKind::kSubsequence}) {
      TlkcParams p;
      p.l = 1 + rng.below(2);
      p.k = 2 + rng.below(2);
      EventLog out;
      try {
        out = enforce(log, p, kind, 0, kCtx);
      } catch (const Error& e) {
        ASSERT_EQ(e.code(), ErrorCode::kEmptyResult);
        continue;
      }
      testing::OracleTlkc o{p.l, p.k, 1.0, std::nullopt};
      EXPECT_TRUE(testing::oracle_violations(out, o, kind).empty());
      EXPECT_EQ(out.traces.size(), log.traces.size());
      RunContext wide = kCtx;
      wide.workers = 4;
      EXPECT_EQ(enforce(log, p, kind, 0, wide), out);
    }
  }
}

}  // namespace
}  // namespace pc4pm
