#include "pc4pm/core/xes.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pc4pm/error.hpp"

namespace pc4pm {
namespace {

using testing::fix1;
using testing::ts;

constexpr const char* kHeartSurgery = R"(<?xml version="1.0" encoding="UTF-8"?>
<log xes.version="1.0" xmlns="http://www.xes-standard.org/">
  <trace>
    <string key="concept:name" value="10"/>
    <event>
      <string key="concept:name" value="heart surgery"/>
      <string key="org:resource" value="Dr. John"/>
      <date key="time:timestamp" value="2021-06-10T10:00:00"/>
    </event>
  </trace>
</log>
)";

TEST(ParseXesTest, SingleEventDocument) {
  EventLog log = parse_xes(kHeartSurgery);
  ASSERT_EQ(log.traces.size(), 1u);
  const Trace& trace = log.traces[0];
  EXPECT_EQ(trace.case_id(), "10");
  ASSERT_EQ(trace.events.size(), 1u);
  const Event& event = trace.events[0];
  EXPECT_EQ(event.activity(), "heart surgery");
  EXPECT_EQ(event.resource(), "Dr. John");
  EXPECT_EQ(event.timestamp(), ts("2021-06-10T10:00:00Z"));
}

TEST(ParseXesTest, EmptyLog) {
  EventLog log = parse_xes("<log/>");
  EXPECT_TRUE(log.traces.empty());
  EXPECT_TRUE(log.privacy_metadata.records.empty());
}

TEST(ParseXesTest, Fix1RoundTripCounts) {
  EventLog log = parse_xes(write_xes(fix1()));
  EXPECT_EQ(log.traces.size(), 3u);
  EXPECT_EQ(log.event_count(), 8u);
}

TEST(ParseXesTest, NotXmlIsMalformedWithPosition) {
  try {
    parse_xes("<log><trace></log>");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedXml);
    EXPECT_EQ(e.line(), 1u);
    EXPECT_GT(e.column(), 1u);
  }
}

TEST(ParseXesTest, EmptyInputIsMalformed) {
  try {
    parse_xes("");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedXml);
  }
}

TEST(ParseXesTest, BrokenNestingIsSchemaViolation) {
  const char* doc = "<log>\n  <event>\n    <string key=\"concept:name\" value=\"x\"/>\n  </event>\n</log>";
  try {
    parse_xes(doc);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaViolation);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseXesTest, TraceInsideTraceIsSchemaViolation) {
  try {
    parse_xes("<log><trace><trace/></trace></log>");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaViolation);
  }
}

TEST(ParseXesTest, UnparseableTimestampIsSchemaViolation) {
  const char* doc = R"(<log><trace><string key="concept:name" value="1"/><event>
    <string key="concept:name" value="a"/><date key="time:timestamp" value="yesterday"/>
  </event></trace></log>)";
  try {
    parse_xes(doc);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaViolation);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseXesTest, DuplicateCaseIdIsSchemaViolation) {
  const char* doc = R"(<log><trace><string key="concept:name" value="1"/></trace>
<trace><string key="concept:name" value="1"/></trace></log>)";
  EXPECT_THROW(parse_xes(doc), ParseError);
}

TEST(ParseXesTest, TimezoneNormalizedToUtc) {
  const char* doc = R"(<log><trace><string key="concept:name" value="1"/><event>
    <string key="concept:name" value="a"/><date key="time:timestamp" value="2021-06-10T12:00:00.250+02:00"/>
  </event></trace></log>)";
  EventLog log = parse_xes(doc);
  EXPECT_EQ(log.traces[0].events[0].timestamp(), ts("2021-06-10T10:00:00.250Z"));
}

TEST(ParseXesTest, EventsOrderedStablyByTimestamp) {
  const char* doc = R"(<log><trace><string key="concept:name" value="1"/>
    <event><string key="concept:name" value="late"/><date key="time:timestamp" value="2021-01-02T00:00:00Z"/></event>
    <event><string key="concept:name" value="tie1"/><date key="time:timestamp" value="2021-01-01T00:00:00Z"/></event>
    <event><string key="concept:name" value="tie2"/><date key="time:timestamp" value="2021-01-01T00:00:00Z"/></event>
  </trace></log>)";
  EventLog log = parse_xes(doc);
  EXPECT_EQ(log.traces[0].activities(), (std::vector<std::string>{"tie1", "tie2", "late"}));
}

TEST(ParseXesTest, GlobalsFillMissingAttributes) {
  const char* doc = R"(<log>
    <global scope="event"><string key="lifecycle:transition" value="complete"/></global>
    <trace><string key="concept:name" value="1"/>
    <event><string key="concept:name" value="a"/><date key="time:timestamp" value="2021-01-01T00:00:00Z"/></event>
  </trace></log>)";
  EventLog log = parse_xes(doc);
  const TypedValue* v = log.traces[0].events[0].attributes.get("lifecycle:transition");
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(v->as_string(), "complete");
  EXPECT_NO_THROW(check_invariants(log));
}

TEST(ParseXesTest, UnknownAndNestedAttributesPreserved) {
  const char* doc = R"(<log>
    <trace><string key="concept:name" value="1"/>
      <list key="tags"><values><string key="t" value="x"/><string key="t" value="y"/></values></list>
      <event><string key="concept:name" value="a"/><date key="time:timestamp" value="2021-01-01T00:00:00Z"/>
        <float key="cost" value="12.5"><string key="currency" value="EUR"/></float>
        <container key="vitals"><int key="pulse" value="80"/><boolean key="ok" value="true"/></container>
        <id key="uid" value="abc-123"/>
      </event>
  </trace></log>)";
  EventLog log = parse_xes(doc);
  const Event& event = log.traces[0].events[0];
  const Attribute* cost = event.attributes.find("cost");
  ASSERT_NE(cost, nullptr);
  EXPECT_DOUBLE_EQ(cost->value.as_real(), 12.5);
  ASSERT_EQ(cost->children.size(), 1u);
  EXPECT_EQ(cost->children[0].value.as_string(), "EUR");
  const Attribute* vitals = event.attributes.find("vitals");
  ASSERT_NE(vitals, nullptr);
  EXPECT_EQ(vitals->children.size(), 2u);
  EXPECT_EQ(event.attributes.get("uid")->kind(), ValueKind::kId);
  const Attribute* tags = log.traces[0].attributes.find("tags");
  ASSERT_NE(tags, nullptr);
  ASSERT_EQ(tags->children.size(), 2u);
  EXPECT_EQ(tags->children[1].value.as_string(), "y");

  EXPECT_EQ(parse_xes(write_xes(log)), log);
}

TEST(WriteXesTest, EmptyLogIsMinimalValidDocument) {
  std::string doc = write_xes(EventLog{});
  EXPECT_NE(doc.find("<log"), std::string::npos);
  EXPECT_EQ(parse_xes(doc), EventLog{});
}

TEST(WriteXesTest, Fix1RoundTripsAndIsDeterministic) {
  EventLog log = fix1();
  std::string first = write_xes(log);
  EXPECT_EQ(first, write_xes(log));
  EXPECT_EQ(parse_xes(first), log);
  EXPECT_EQ(write_xes(parse_xes(first)), first);
}

TEST(WriteXesTest, EscapesSpecialCharacters) {
  EventLog log = fix1();
  log.traces[0].events[0].attributes.set("note", TypedValue::string("a<b & \"c\"\n\td"));
  EXPECT_EQ(parse_xes(write_xes(log)), log);
}

TEST(WriteXesTest, MetadataEmittedInSeqOrder) {
  EventLog log = fix1();
  for (auto kind : {OperationKind::kGeneralization, OperationKind::kCryptography}) {
    log = attach_operation_record(
        log, RecordFields{kind, OperationLevel::kAttribute, {"concept:name"}, "0123abcd", ts("2021-07-01T00:00:00Z")});
  }
  std::string doc = write_xes(log);
  auto first = doc.find("generalization");
  auto second = doc.find("cryptography");
  ASSERT_NE(first, std::string::npos);
  ASSERT_NE(second, std::string::npos);
  EXPECT_LT(first, second);
  EventLog back = parse_xes(doc);
  EXPECT_EQ(back.privacy_metadata, log.privacy_metadata);
  EXPECT_EQ(back, log);
}

TEST(WriteXesTest, MetadataWithTenRecordsKeepsSeqOrder) {
  EventLog log = fix1();
  for (int i = 0; i < 11; ++i) {
    log = attach_operation_record(
        log, RecordFields{OperationKind::kSuppression, OperationLevel::kEvent, {}, std::to_string(i), Timestamp{i}});
  }
  EventLog back = parse_xes(write_xes(log));
  ASSERT_EQ(back.privacy_metadata.records.size(), 11u);
  for (std::size_t i = 0; i < 11; ++i) {
    EXPECT_EQ(back.privacy_metadata.records[i].seq, i + 1);
    EXPECT_EQ(back.privacy_metadata.records[i].parameter_digest, std::to_string(i));
  }
}

TEST(WriteXesTest, RandomLogsRoundTrip) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    EventLog log = testing::random_log(rng, {.max_traces = 20, .max_activities = 8, .max_length = 10});
    log.traces[0].attributes.set("risk", TypedValue::real(0.1 * i + 1e-7));
    log.traces[0].attributes.set("age", TypedValue::integer(-i));
    ASSERT_EQ(parse_xes(write_xes(log)), log);
  }
}

TEST(AttachRecordTest, AssignsContiguousSeq) {
  EventLog log = fix1();
  RecordFields fields{OperationKind::kSuppression, OperationLevel::kEvent, {}, "d", Timestamp{}};
  EventLog once = attach_operation_record(log, fields);
  ASSERT_EQ(once.privacy_metadata.records.size(), 1u);
  EXPECT_EQ(once.privacy_metadata.records[0].seq, 1u);
  EXPECT_TRUE(log.privacy_metadata.records.empty()) << "input must stay untouched";

  EventLog thrice = attach_operation_record(attach_operation_record(once, fields), fields);
  ASSERT_EQ(thrice.privacy_metadata.records.size(), 3u);
  EXPECT_EQ(thrice.privacy_metadata.records[2].seq, 3u);
}

TEST(AttachRecordTest, KeepsApplicationOrder) {
  EventLog log = fix1();
  log = attach_operation_record(log, {OperationKind::kGeneralization, OperationLevel::kAttribute, {}, "", {}});
  log = attach_operation_record(log, {OperationKind::kCryptography, OperationLevel::kAttribute, {}, "", {}});
  ASSERT_EQ(log.privacy_metadata.records.size(), 2u);
  EXPECT_EQ(log.privacy_metadata.records[0].kind, OperationKind::kGeneralization);
  EXPECT_EQ(log.privacy_metadata.records[1].kind, OperationKind::kCryptography);
}

TEST(LogIdTest, StableAcrossCopies) {
  EXPECT_EQ(log_id(fix1()), log_id(fix1()));
  EXPECT_EQ(log_id(fix1()).size(), 16u);
  EXPECT_NE(log_id(fix1()), log_id(testing::fix1_without_d()));
}

}  // namespace
}  // namespace pc4pm
