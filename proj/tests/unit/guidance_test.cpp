#include "pc4pm/guidance/registry.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace pc4pm {
namespace {

using testing::error_of;

const Registry& reg() { return Registry::builtin(); }

const TechniqueSignature& signature(const std::string& id) {
  for (const auto& t : reg().techniques()) {
    if (t.technique_id == id) return t;
  }
  throw std::runtime_error("missing " + id);
}

TEST(RegistryTest, BuiltinTable) {
  ASSERT_EQ(reg().techniques().size(), 6u);
  EXPECT_EQ(signature("connector-dfg").pmac, (std::set<std::string>{"discovery"}));
  EXPECT_EQ(signature("role-miner").prps, (std::set<std::string>{"resource"}));
  EXPECT_EQ(signature("privacy-analysis").prac, (std::set<std::string>{"PrAn"}));
  for (const auto& t : reg().techniques()) {
    EXPECT_FALSE(t.pmps.empty() || t.pmac.empty() || t.prps.empty() || t.prac.empty());
  }
  for (const auto& op : reg().operations()) {
    EXPECT_FALSE(op.technique_id.empty()) << op.operation_id;
    for (const auto& p : op.parameters) EXPECT_FALSE(p.help.empty()) << op.operation_id << p.name;
  }
}

TEST(GuideFilterTest, Examples) {
  EXPECT_EQ(reg().filter({}).size(), 6u);
  GuideQuery q;
  q.pmac = "role-mining";
  EXPECT_EQ(reg().filter(q),
            (std::vector<std::string>{"role-miner", "anon-ops", "privacy-analysis"}));
  GuideQuery pran;
  pran.prac = "PrAn";
  EXPECT_EQ(reg().filter(pran), (std::vector<std::string>{"privacy-analysis"}));
  GuideQuery bad;
  bad.pmps = "weather";
  EXPECT_EQ(error_of([&] { reg().filter(bad); }), ErrorCode::kInvalidParameter);
}

TEST(GuideFilterTest, AntiMonotone) {
  const auto& dims = reg().dimensions();
  auto options = [&](const char* d) {
    std::vector<std::optional<std::string>> out{std::nullopt};
    for (const auto& v : dims.at(d)) out.push_back(v);
    return out;
  };
  for (const auto& a : options("pmps")) {
    for (const auto& b : options("pmac")) {
      for (const auto& c : options("prps")) {
        for (const auto& d : options("prac")) {
          GuideQuery q{a, b, c, d};
          auto result = reg().filter(q);
          // Dropping any one constraint never shrinks the result.
          GuideQuery loosened[] = {{std::nullopt, b, c, d}, {a, std::nullopt, c, d},
                                   {a, b, std::nullopt, d}, {a, b, c, std::nullopt}};
          for (const auto& wider : loosened) {
            auto more = reg().filter(wider);
            for (const auto& id : result) {
              EXPECT_NE(std::find(more.begin(), more.end(), id), more.end());
            }
          }
        }
      }
    }
  }
}

TEST(GuideQueryJsonTest, RoundTrip) {
  GuideQuery q;
  q.prac = "PPDP";
  GuideQuery back = guide_query_from_json(guide_query_to_json(q));
  EXPECT_EQ(back.prac, q.prac);
  EXPECT_FALSE(back.pmps);
  EXPECT_EQ(error_of([] { guide_query_from_json(Json{{"colour", "red"}}); }),
            ErrorCode::kInvalidParameter);
}

TEST(ParameterValidationTest, DefaultsAndMessages) {
  Json filled = reg().validate("tlkc", Json::object());
  EXPECT_EQ(filled["k"], 2);
  EXPECT_EQ(filled["knowledge_kind"], "set");
  try {
    reg().validate("dp_publish", Json{{"epsilon", 0}, {"bogus", 1}, {"max_variant_length", 0}});
    FAIL();
  } catch (const ParameterValidationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParameterValidation);
    EXPECT_EQ(e.messages().size(), 3u);
    EXPECT_EQ(e.messages().at("epsilon"), "must be greater than 0");
    EXPECT_EQ(e.messages().at("bogus"), "unknown parameter");
  }
  try {
    reg().validate("pseudonymize", Json::object());
    FAIL();
  } catch (const ParameterValidationError& e) {
    EXPECT_EQ(e.messages().at("key"), "is required");
  }
  EXPECT_EQ(error_of([] { reg().validate("teleport", Json::object()); }),
            ErrorCode::kUnknownTechnique);
  EXPECT_EQ(error_of([] {
              reg().validate("suppress", Json{{"where", Json::array({Json{{"key", "a"}, {"op", "~"}}})}});
            }),
            ErrorCode::kParameterValidation);
}

TEST(RegistryParseTest, RejectsBrokenDocuments) {
  EXPECT_EQ(error_of([] { Registry::parse("[]"); }), ErrorCode::kInvalidParameter);
  EXPECT_EQ(error_of([] { Registry::parse("{\"dimensions\": {}}"); }), ErrorCode::kInvalidParameter);
  EXPECT_NO_THROW(Registry::parse(reg().to_json().dump()));
}

}  // namespace
}  // namespace pc4pm
