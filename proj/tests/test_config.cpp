#include <gtest/gtest.h>

#include "swiftagg/config.hpp"
#include "swiftagg/error.hpp"

namespace swiftagg {
namespace {

using nlohmann::json;

json minimal() { return {{"N", 12}, {"T", 2}, {"D", 1}, {"K", 3}, {"L", 6}, {"ell", 256}}; }

std::string error_for(const json& doc) {
  try {
    parse_run_config(doc);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigInvalid);
    return e.what();
  }
  ADD_FAILURE() << "accepted: " << doc.dump();
  return {};
}

TEST(Config, Minimal) {
  const auto c = parse_run_config(minimal());
  EXPECT_EQ(c.users, 12u);
  EXPECT_EQ(c.partitions, 3u);
  EXPECT_EQ(c.tree.shape, TreeSpec::Shape::kChain);
  EXPECT_TRUE(c.dropouts.empty());
  EXPECT_EQ(c.timing, DropTiming::kBeforeIntra);
}

TEST(Config, AllFields) {
  auto doc = minimal();
  doc["tree"] = {{"parents", {1, nullptr}}};
  doc["dropouts"] = {4};
  doc["dropout_timing"] = "after_intra";
  doc["adversaries"] = {0, 1};
  doc["seed"] = 99;
  doc["prime_override"] = 3067;
  doc["delay"] = {{"inter", 2.5}, {"intra", 0.5}};
  doc["assert_loads"] = false;
  const auto c = parse_run_config(doc);
  EXPECT_EQ(c.tree.shape, TreeSpec::Shape::kExplicit);
  EXPECT_EQ(c.tree.parents, (std::vector<std::optional<std::size_t>>{1, std::nullopt}));
  EXPECT_EQ(c.timing, DropTiming::kAfterIntra);
  EXPECT_EQ(c.adversaries, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(c.prime_override, 3067u);
  EXPECT_DOUBLE_EQ(c.delays.inter, 2.5);
}

TEST(Config, DiagnosticsNameTheField) {
  auto doc = minimal();
  doc.erase("K");
  EXPECT_NE(error_for(doc).find("K"), std::string::npos);
  doc = minimal();
  doc["T"] = -1;
  EXPECT_NE(error_for(doc).find("T"), std::string::npos);
  doc = minimal();
  doc["tree"] = "ring";
  EXPECT_NE(error_for(doc).find("tree"), std::string::npos);
  doc = minimal();
  doc["dropout_timing"] = "later";
  EXPECT_NE(error_for(doc).find("dropout_timing"), std::string::npos);
  doc = minimal();
  doc["schema_version"] = 2;
  EXPECT_NE(error_for(doc).find("schema_version"), std::string::npos);
  doc = minimal();
  doc["delay"] = {{"inter", "fast"}};
  EXPECT_NE(error_for(doc).find("inter"), std::string::npos);
  EXPECT_NE(error_for(json::array()).find("document"), std::string::npos);
}

TEST(Config, ReportJsonShape) {
  auto doc = minimal();
  doc["dropouts"] = {2};
  const auto report = simulate(parse_run_config(doc));
  const auto j = to_json(report);
  EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
  EXPECT_EQ(j.at("loads").at("r_server").at("num"), 5);
  EXPECT_EQ(j.at("loads").at("r_server").at("den"), 3);
  EXPECT_EQ(j.at("edges").at("total"), 42);
  EXPECT_EQ(j.at("edges").at("silent"), 7);
  EXPECT_EQ(j.at("field").at("prime"), 3061);
}

TEST(Config, RoundTrip) {
  auto doc = minimal();
  doc["tree"] = "star";
  doc["dropouts"] = {5};
  const auto c = parse_run_config(doc);
  const auto again = parse_run_config(to_json(c));
  EXPECT_EQ(simulate(c).aggregate, simulate(again).aggregate);
  EXPECT_EQ(again.tree.shape, TreeSpec::Shape::kStar);
}

TEST(Config, SweepSpec) {
  json doc{{"base", minimal()}, {"k_values", {1, 3, 9}}, {"repetitions", 2}};
  const auto s = parse_sweep_spec(doc);
  EXPECT_EQ(s.k_values, (std::vector<std::size_t>{1, 3, 9}));
  EXPECT_EQ(s.repetitions, 2u);
  doc["base"].erase("N");
  try {
    parse_sweep_spec(doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("base."), std::string::npos);
  }
}

}  // namespace
}  // namespace swiftagg
