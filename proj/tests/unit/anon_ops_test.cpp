#include "pc4pm/anon/operations.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <map>

#include "fixtures.hpp"
#include "pc4pm/core/stats.hpp"
#include "pc4pm/core/xes.hpp"

namespace pc4pm {
namespace {

using testing::error_of;
using testing::fix1;
using testing::log_of;
using testing::ts;

const RunContext kCtx{ts("2024-01-01T00:00:00Z"), 1};

KeySpec test_key(KeyMode mode = KeyMode::kPseudonymizeDeterministic) {
  return KeySpec{"k1", Bytes(32, 0x42), mode};
}

std::map<std::string, std::size_t> resource_multiset(const EventLog& log) {
  std::map<std::string, std::size_t> out;
  for (const auto& t : log.traces) {
    for (const auto& e : t.events) {
      if (auto r = e.resource()) ++out[*r];
    }
  }
  return out;
}

void expect_one_record(const EventLog& in, const EventLog& out, OperationKind kind) {
  ASSERT_EQ(out.privacy_metadata.records.size(), in.privacy_metadata.records.size() + 1);
  EXPECT_EQ(out.privacy_metadata.records.back().kind, kind);
  EXPECT_TRUE(out.privacy_metadata.contiguous());
}

TEST(SuppressTest, WholeMatchActivity) {
  EventLog in = fix1();
  Selector sel = Selector::where(AttributeLevel::kEvent, "concept:name", Comparator::kEq,
                                 TypedValue::string("d"));
  EventLog out = suppress(in, sel, {}, kCtx);
  EXPECT_EQ(out.event_count(), 7u);
  EXPECT_EQ(out.find_trace("c3")->activities(), (std::vector<std::string>{"a"}));
  expect_one_record(in, out, OperationKind::kSuppression);
  EXPECT_EQ(out.privacy_metadata.records.back().level, OperationLevel::kEvent);
  EXPECT_EQ(in, fix1());
}

TEST(SuppressTest, NothingMatched) {
  EventLog in = fix1();
  Selector sel = Selector::where(AttributeLevel::kEvent, "concept:name", Comparator::kEq,
                                 TypedValue::string("zzz"));
  EventLog out = suppress(in, sel, {}, kCtx);
  out.privacy_metadata = in.privacy_metadata;
  out.extensions = in.extensions;
  EXPECT_EQ(out, in);
}

TEST(SuppressTest, AttributeFromAllEvents) {
  EventLog in = fix1();
  EventLog out = suppress(in, Selector{AttributeLevel::kEvent, {}}, {"org:resource"}, kCtx);
  EXPECT_EQ(out.event_count(), 8u);
  EXPECT_TRUE(resource_multiset(out).empty());
  EXPECT_EQ(out.privacy_metadata.records.back().level, OperationLevel::kAttribute);
  EXPECT_EQ(out.privacy_metadata.records.back().target_attributes,
            (std::set<std::string>{"org:resource"}));
}

TEST(SuppressTest, WholeTraces) {
  Selector sel = Selector::where(AttributeLevel::kTrace, "concept:name", Comparator::kIn,
                                 TypedValue::string("c1"));
  sel.atoms[0].values.push_back(TypedValue::string("c3"));
  EventLog out = suppress(fix1(), sel, {}, kCtx);
  ASSERT_EQ(out.traces.size(), 1u);
  EXPECT_EQ(out.traces[0].case_id(), "c2");
}

TEST(SuppressTest, Errors) {
  EventLog in = fix1();
  auto missing = Selector::where(AttributeLevel::kEvent, "cost", Comparator::kEq,
                                 TypedValue::integer(1));
  EXPECT_EQ(error_of([&] { suppress(in, missing); }), ErrorCode::kUnknownAttribute);
  auto mistyped = Selector::where(AttributeLevel::kEvent, "concept:name", Comparator::kLt,
                                  TypedValue::integer(1));
  EXPECT_EQ(error_of([&] { suppress(in, mistyped); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(error_of([&] { suppress(in, Selector{}, {"time:timestamp"}); }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(error_of([&] { suppress(in, Selector{}, {"nope"}); }), ErrorCode::kUnknownAttribute);
}

TEST(SuppressTest, NumericComparators) {
  EventLog in = log_of({{"a", "b"}, {"a"}});
  in.traces[0].events[0].attributes.set("cost", TypedValue::integer(5));
  in.traces[0].events[1].attributes.set("cost", TypedValue::real(7.5));
  in.traces[1].events[0].attributes.set("cost", TypedValue::integer(9));
  auto sel = Selector::where(AttributeLevel::kEvent, "cost", Comparator::kGe,
                             TypedValue::real(7.0));
  EventLog out = suppress(in, sel, {}, kCtx);
  EXPECT_EQ(out.event_count(), 1u);
  EXPECT_EQ(out.traces[0].activities(), (std::vector<std::string>{"a"}));
  EXPECT_TRUE(out.traces[1].events.empty());
}

TEST(AddNoiseTest, ReplayFix1) {
  EventLog in = fix1();
  EventLog out = add_noise(in, 1, NoiseGenerator::kReplayVariant, 7, kCtx);
  ASSERT_EQ(out.traces.size(), 4u);
  const Trace& syn = out.traces.back();
  EXPECT_EQ(syn.case_id(), "syn-1");
  VariantCounts original = variants(in);
  EXPECT_TRUE(original.contains(syn.activities()));
  expect_one_record(in, out, OperationKind::kAddition);
  EXPECT_EQ(out.privacy_metadata.records.back().parameter_digest,
            parameter_digest(R"({"count":1})"));
}

TEST(AddNoiseTest, CountZeroAndDeterminism) {
  EventLog in = fix1();
  EventLog zero = add_noise(in, 0, NoiseGenerator::kRandomWalk, 3, kCtx);
  EXPECT_EQ(zero.traces, in.traces);
  for (auto gen : {NoiseGenerator::kReplayVariant, NoiseGenerator::kRandomWalk}) {
    EXPECT_EQ(add_noise(in, 5, gen, 11, kCtx), add_noise(in, 5, gen, 11, kCtx));
    RunContext wide = kCtx;
    wide.workers = 4;
    EXPECT_EQ(add_noise(in, 5, gen, 11, kCtx), add_noise(in, 5, gen, 11, wide));
  }
}

TEST(AddNoiseTest, RandomWalkStaysInsideTheGraph) {
  Rng rng(5);
  for (int round = 0; round < 50; ++round) {
    EventLog in = testing::random_log(rng, {});
    DirectlyFollowsGraph g = df_graph(in);
    EventLog out = add_noise(in, 6, NoiseGenerator::kRandomWalk, round, kCtx);
    ASSERT_EQ(out.traces.size(), in.traces.size() + 6);
    EXPECT_NO_THROW(check_invariants(out));
    for (std::size_t t = in.traces.size(); t < out.traces.size(); ++t) {
      auto acts = out.traces[t].activities();
      ASSERT_FALSE(acts.empty());
      EXPECT_TRUE(g.start_counts.contains(acts.front()));
      for (std::size_t i = 1; i < acts.size(); ++i) {
        EXPECT_TRUE(g.pair_counts.contains({acts[i - 1], acts[i]}));
      }
    }
  }
}

TEST(AddNoiseTest, SkipsTakenIdsAndRejectsEmptyLog) {
  EventLog in = log_of({{"a"}});
  in.traces[0].attributes.set("concept:name", TypedValue::string("syn-1"));
  EventLog out = add_noise(in, 2, NoiseGenerator::kReplayVariant, 1, kCtx);
  EXPECT_EQ(out.traces[1].case_id(), "syn-2");
  EXPECT_EQ(out.traces[2].case_id(), "syn-3");
  EXPECT_EQ(error_of([&] { add_noise(EventLog{}, 1, NoiseGenerator::kReplayVariant, 1); }),
            ErrorCode::kInvalidParameter);
}

TEST(SubstituteTest, HeartSurgery) {
  EventLog in = log_of({{"heart surgery", "discharge"}, {"heart surgery"}});
  ValueMapping m{{TypedValue::string("heart surgery"), TypedValue::string("surgery-001")}};
  EventLog out = substitute(in, AttributeLevel::kEvent, "concept:name", m, OnMissing::kKeep, kCtx);
  EXPECT_EQ(out.traces[0].activities(), (std::vector<std::string>{"surgery-001", "discharge"}));
  EXPECT_EQ(out.traces[1].activities(), (std::vector<std::string>{"surgery-001"}));
  expect_one_record(in, out, OperationKind::kSubstitution);
}

TEST(SubstituteTest, EmptyMappingAndMissing) {
  EventLog in = fix1();
  EventLog out = substitute(in, AttributeLevel::kEvent, "concept:name", {}, OnMissing::kKeep, kCtx);
  EXPECT_EQ(out.traces, in.traces);
  ValueMapping m{{TypedValue::string("a"), TypedValue::string("x")}};
  try {
    substitute(in, AttributeLevel::kEvent, "concept:name", m, OnMissing::kError, kCtx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownValue);
    EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos);
  }
  EXPECT_EQ(error_of([&] {
              substitute(in, AttributeLevel::kEvent, "cost", m, OnMissing::kKeep, kCtx);
            }),
            ErrorCode::kUnknownAttribute);
}

TEST(SubstituteTest, CaseIdsStayDistinct) {
  ValueMapping m{{TypedValue::string("c1"), TypedValue::string("c2")}};
  EXPECT_EQ(error_of([&] {
              substitute(fix1(), AttributeLevel::kTrace, "concept:name", m, OnMissing::kKeep);
            }),
            ErrorCode::kInvalidParameter);
}

TEST(CondenseTest, VariantMeans) {
  EventLog in = fix1();
  in.traces[0].attributes.set("risk-score", TypedValue::real(1.0));
  in.traces[1].attributes.set("risk-score", TypedValue::real(2.0));
  in.traces[2].attributes.set("risk-score", TypedValue::real(4.0));
  EventLog out = condense(in, AttributeLevel::kTrace, "risk-score", kCtx);
  EXPECT_EQ(*out.traces[0].attributes.get("risk-score"), TypedValue::real(1.5));
  EXPECT_EQ(*out.traces[1].attributes.get("risk-score"), TypedValue::real(1.5));
  EXPECT_EQ(*out.traces[2].attributes.get("risk-score"), TypedValue::real(4.0));
  expect_one_record(in, out, OperationKind::kCondensation);
}

TEST(CondenseTest, IntegerRoundsHalfUp) {
  EventLog in = log_of({{"a"}, {"a"}, {"b"}, {"b"}});
  in.traces[0].attributes.set("cost", TypedValue::integer(10));
  in.traces[1].attributes.set("cost", TypedValue::integer(20));
  in.traces[2].attributes.set("cost", TypedValue::integer(-3));
  in.traces[3].attributes.set("cost", TypedValue::integer(-2));
  EventLog out = condense(in, AttributeLevel::kTrace, "cost", kCtx);
  EXPECT_EQ(*out.traces[0].attributes.get("cost"), TypedValue::integer(15));
  EXPECT_EQ(*out.traces[1].attributes.get("cost"), TypedValue::integer(15));
  // mean -2.5 rounds half-up to -2
  EXPECT_EQ(*out.traces[2].attributes.get("cost"), TypedValue::integer(-2));
}

TEST(CondenseTest, RejectsText) {
  EXPECT_EQ(error_of([&] { condense(fix1(), AttributeLevel::kEvent, "org:resource"); }),
            ErrorCode::kInvalidParameter);
}

TEST(SwapTest, GlobalPreservesMultiset) {
  EventLog in = fix1();
  EventLog out = swap(in, AttributeLevel::kEvent, "org:resource", SwapScope::kGlobal, 3, kCtx);
  std::map<std::string, std::size_t> expected{{"r1", 3}, {"r2", 4}, {"r3", 1}};
  EXPECT_EQ(resource_multiset(out), expected);
  EXPECT_EQ(out, swap(in, AttributeLevel::kEvent, "org:resource", SwapScope::kGlobal, 3, kCtx));
  expect_one_record(in, out, OperationKind::kSwapping);
}

TEST(SwapTest, SingletonScopeIsIdentity) {
  EventLog in = fix1();
  EventLog out =
      swap(in, AttributeLevel::kEvent, "org:resource", SwapScope::kWithinVariant, 9, kCtx);
  // c3 is the only <a,d> trace
  EXPECT_EQ(out.traces[2], in.traces[2]);
}

TEST(SwapTest, SomeSeedMovesValues) {
  EventLog in = fix1();
  bool moved = false;
  for (std::uint64_t seed = 0; seed < 20 && !moved; ++seed) {
    moved = swap(in, AttributeLevel::kEvent, "org:resource", SwapScope::kGlobal, seed, kCtx)
                .traces != in.traces;
  }
  EXPECT_TRUE(moved);
}

TEST(GeneralizeTest, DayTruncation) {
  EventLog in = fix1();
  EventLog out = generalize(in, AttributeLevel::kEvent, "time:timestamp", Granularity::kDay, kCtx);
  EXPECT_EQ(out.traces[0].events[0].timestamp(), ts("2021-06-10T00:00:00Z"));
  expect_one_record(in, out, OperationKind::kGeneralization);
}

TEST(GeneralizeTest, TaxonomyOneLevel) {
  Taxonomy tax = Taxonomy::parse_edge_list("child,parent\nb,clinical\nc,clinical\nclinical,any\n");
  EventLog out = generalize(fix1(), AttributeLevel::kEvent, "concept:name", tax, kCtx);
  VariantCounts v = variants(out);
  EXPECT_EQ(v.at({"a", "clinical", "clinical"}), 2u);
  // Root and unknown values stay; a second call climbs one more level.
  EventLog twice = generalize(out, AttributeLevel::kEvent, "concept:name", tax, kCtx);
  EXPECT_EQ(variants(twice).at({"a", "any", "any"}), 2u);
  EventLog thrice = generalize(twice, AttributeLevel::kEvent, "concept:name", tax, kCtx);
  EXPECT_EQ(thrice.traces, twice.traces);
}

TEST(GeneralizeTest, Errors) {
  EXPECT_EQ(error_of([&] {
              generalize(fix1(), AttributeLevel::kEvent, "org:resource", Granularity::kDay);
            }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(error_of([] { Taxonomy::from_edges({{"a", "b"}, {"b", "a"}}); }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(error_of([] { Taxonomy::from_edges({{"a", "r"}, {"a", "s"}}); }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(error_of([] { Taxonomy::from_edges({{"a", "r"}, {"b", "s"}}); }),
            ErrorCode::kInvalidParameter);
}

TEST(PseudonymizeTest, DeterministicTokens) {
  EventLog in = fix1();
  EventLog out = pseudonymize(in, AttributeLevel::kEvent, {"concept:name"}, test_key(), kCtx);
  std::set<std::string> labels = out.alphabet();
  EXPECT_EQ(labels.size(), 4u);
  for (const auto& l : labels) EXPECT_EQ(l.size(), 16u);
  EXPECT_EQ(out.traces[0].activities(), out.traces[1].activities());
  EXPECT_EQ(out, pseudonymize(in, AttributeLevel::kEvent, {"concept:name"}, test_key(), kCtx));
  expect_one_record(in, out, OperationKind::kCryptography);
  std::string xes = write_xes(out);
  EXPECT_EQ(xes.find(to_hex(test_key().secret)), std::string::npos);
}

TEST(PseudonymizeTest, RecoverableRoundTrip) {
  Rng rng(21);
  KeySpec key = test_key(KeyMode::kEncryptRecoverable);
  for (int round = 0; round < 30; ++round) {
    EventLog in = testing::random_log(rng, {});
    in.traces.front().attributes.set("age", TypedValue::integer(40 + round));
    EventLog ev = pseudonymize(in, AttributeLevel::kEvent, {"concept:name", "org:resource"}, key,
                               kCtx);
    EventLog both = pseudonymize(ev, AttributeLevel::kTrace, {"age"}, key, kCtx);
    EXPECT_EQ(both.privacy_metadata.records.size(), in.privacy_metadata.records.size() + 2);
    EventLog back = de_pseudonymize(parse_xes(write_xes(both)), key);
    EXPECT_EQ(back.traces, in.traces);
  }
}

TEST(PseudonymizeTest, WrongKeyFails) {
  EventLog out = pseudonymize(fix1(), AttributeLevel::kEvent, {"concept:name"},
                              test_key(KeyMode::kEncryptRecoverable), kCtx);
  KeySpec other{"k1", Bytes(32, 0x43), KeyMode::kEncryptRecoverable};
  EXPECT_EQ(error_of([&] { de_pseudonymize(out, other); }), ErrorCode::kDecryptionFailure);
  KeySpec elsewhere{"k2", Bytes(32, 0x43), KeyMode::kEncryptRecoverable};
  EXPECT_EQ(de_pseudonymize(out, elsewhere), out);
}

TEST(PseudonymizeTest, KeyChecks) {
  KeySpec shortkey{"k", Bytes(8, 1), KeyMode::kPseudonymizeDeterministic};
  EXPECT_EQ(error_of([&] {
              pseudonymize(fix1(), AttributeLevel::kEvent, {"concept:name"}, shortkey);
            }),
            ErrorCode::kInvalidParameter);
  EXPECT_EQ(error_of([&] {
              pseudonymize(fix1(), AttributeLevel::kEvent, {"time:timestamp"}, test_key());
            }),
            ErrorCode::kInvalidParameter);
  setenv("PC4PM_KEY_UNIT_TEST", "00112233445566778899aabbccddeeff", 1);
  KeySpec env = KeySpec::from_environment("unit-test", KeyMode::kEncryptRecoverable);
  EXPECT_EQ(env.secret.size(), 16u);
  EXPECT_EQ(env.key_id, "unit-test");
  unsetenv("PC4PM_KEY_UNIT_TEST");
  EXPECT_EQ(error_of([] { KeySpec::from_environment("unit-test", KeyMode::kEncryptRecoverable); }),
            ErrorCode::kInvalidParameter);
}

// Tokens are keyed on the value text, so "5" and 5 share one token.
TEST(PseudonymizeTest, SameTextDifferentKindIsNotACollision) {
  EventLog in = log_of({{"a"}, {"b"}});
  in.traces[0].events[0].attributes.set("x", TypedValue::string("5"));
  in.traces[1].events[0].attributes.set("x", TypedValue::integer(5));
  EventLog out = pseudonymize(in, AttributeLevel::kEvent, {"x"}, test_key(), kCtx);
  EXPECT_EQ(*out.traces[0].events[0].attributes.get("x"),
            *out.traces[1].events[0].attributes.get("x"));
}

TEST(AnonLawsTest, CountsAndWorkerIndependence) {
  Rng rng(99);
  Taxonomy tax = Taxonomy::from_edges({{"a", "g1"}, {"b", "g1"}, {"c", "g2"}, {"g1", "top"},
                                       {"g2", "top"}});
  for (int round = 0; round < 40; ++round) {
    EventLog in = testing::random_log(rng, {});
    std::uint64_t seed = rng.next();
    for (unsigned workers : {1u, 3u}) {
      RunContext ctx{kCtx.applied_at, workers};
      std::vector<EventLog> outs = {
          swap(in, AttributeLevel::kEvent, "org:resource", SwapScope::kGlobal, seed, ctx),
          swap(in, AttributeLevel::kEvent, "concept:name", SwapScope::kWithinVariant, seed, ctx),
          generalize(in, AttributeLevel::kEvent, "time:timestamp", Granularity::kHour, ctx),
          generalize(in, AttributeLevel::kEvent, "concept:name", tax, ctx),
          pseudonymize(in, AttributeLevel::kEvent, {"org:resource"}, test_key(), ctx),
      };
      for (const auto& out : outs) {
        ASSERT_EQ(out.traces.size(), in.traces.size());
        EXPECT_EQ(out.event_count(), in.event_count());
        EXPECT_NO_THROW(check_invariants(out));
        EXPECT_EQ(out.privacy_metadata.records.size(), in.privacy_metadata.records.size() + 1);
      }
      if (workers == 3) {
        RunContext one{kCtx.applied_at, 1};
        EXPECT_EQ(outs[0], swap(in, AttributeLevel::kEvent, "org:resource", SwapScope::kGlobal,
                                seed, one));
      }
    }
  }
}

}  // namespace
}  // namespace pc4pm
