#include "pc4pm/core/timestamp.hpp"

#include <gtest/gtest.h>

namespace pc4pm {
namespace {

TEST(TimestampTest, ParsesCommonForms) {
  EXPECT_EQ(parse_timestamp("1970-01-01T00:00:00Z")->millis, 0);
  EXPECT_EQ(parse_timestamp("1970-01-01T00:00:01.5Z")->millis, 1500);
  EXPECT_EQ(parse_timestamp("1970-01-01T01:00:00+01:00")->millis, 0);
  EXPECT_EQ(parse_timestamp("1970-01-01T01:00:00+0100")->millis, 0);
  EXPECT_EQ(parse_timestamp("1970-01-01")->millis, 0);
  EXPECT_EQ(parse_timestamp("1969-12-31T23:59:59.999Z")->millis, -1);
  EXPECT_EQ(parse_timestamp("1970-01-01T00:00:00.123456Z")->millis, 123);
}

TEST(TimestampTest, RejectsGarbage) {
  EXPECT_FALSE(parse_timestamp(""));
  EXPECT_FALSE(parse_timestamp("2021-13-01T00:00:00Z"));
  EXPECT_FALSE(parse_timestamp("2021-02-30"));
  EXPECT_FALSE(parse_timestamp("2021-06-10T25:00:00"));
  EXPECT_FALSE(parse_timestamp("2021-06-10T10:00:00Zjunk"));
}

TEST(TimestampTest, FormatRoundTrips) {
  for (std::int64_t millis : {0LL, -1LL, 1623319200000LL, 253402300799999LL, -62135596800000LL}) {
    Timestamp t{millis};
    EXPECT_EQ(parse_timestamp(format_timestamp(t)), t) << format_timestamp(t);
  }
  EXPECT_EQ(format_timestamp(*parse_timestamp("2021-06-10T10:00:00")), "2021-06-10T10:00:00.000Z");
}

TEST(TimestampTest, TruncatesToGranularity) {
  Timestamp t = *parse_timestamp("2021-06-10T10:37:42.123Z");
  EXPECT_EQ(truncate(t, Granularity::kDay), *parse_timestamp("2021-06-10T00:00:00Z"));
  EXPECT_EQ(truncate(t, Granularity::kHour), *parse_timestamp("2021-06-10T10:00:00Z"));
  EXPECT_EQ(truncate(t, Granularity::kMinute), *parse_timestamp("2021-06-10T10:37:00Z"));
  EXPECT_EQ(truncate(t, Granularity::kMonth), *parse_timestamp("2021-06-01T00:00:00Z"));
  EXPECT_EQ(truncate(t, Granularity::kYear), *parse_timestamp("2021-01-01T00:00:00Z"));
  Timestamp before_epoch = *parse_timestamp("1969-07-20T20:17:40Z");
  EXPECT_EQ(truncate(before_epoch, Granularity::kDay), *parse_timestamp("1969-07-20T00:00:00Z"));
}

}  // namespace
}  // namespace pc4pm
