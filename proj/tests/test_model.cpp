#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "e3/energy_cost.hpp"
#include "e3/scenario_json.hpp"
#include "e3/validate.hpp"
#include "test_support.hpp"

namespace e3 {
namespace {

json minimal_doc() { return json::parse(test::read_text(test::scenario_path("minimal.json"))); }

// Runs the parser and returns the error, failing if none was raised.
ScenarioError parse_error(const json& doc) {
  try {
    scenario_from_json(doc);
  } catch (const ScenarioError& e) {
    return e;
  }
  ADD_FAILURE() << "document was accepted";
  return ScenarioError(ScenarioError::Category::schema, "", "");
}

TEST(BuildScenario, MinimalDocument) {
  const NetworkScenario s = test::load_fixture("minimal.json");
  ASSERT_EQ(s.kinds.size(), 1u);
  EXPECT_EQ(s.base_stations.size(), 1u);
  EXPECT_EQ(s.ues.size(), 1u);
  EXPECT_EQ(s.kinds[0].xhaul.medium, Medium::wired);
  EXPECT_EQ(s.kinds[0].xhaul.power_factor, 0.0);
  EXPECT_EQ(s.ues[0].weight, 1.0);
  EXPECT_EQ(s.radio_mode, RadioMode::abstract);
  EXPECT_FALSE(s.benchmark_cost.has_value());
}

TEST(BuildScenario, NegativeCacheSizeNamesTheKind) {
  json doc = minimal_doc();
  doc["kinds"][0]["cache_size"] = -1;
  const ScenarioError e = parse_error(doc);
  EXPECT_EQ(e.category(), ScenarioError::Category::invariant);
  EXPECT_NE(std::string(e.what()).find("BsKind 'pico'"), std::string::npos) << e.what();
}

TEST(BuildScenario, CacheLargerThanCatalogIsRejected) {
  json doc = minimal_doc();
  doc["kinds"][0]["cache_size"] = 2;
  const ScenarioError e = parse_error(doc);
  EXPECT_EQ(e.where(), "BsKind 'pico'");
  EXPECT_NE(std::string(e.what()).find("cache larger than catalog"), std::string::npos);
}

TEST(BuildScenario, XHaulCatalogSpansCostCoefficients) {
  const NetworkScenario s = test::load_fixture("fig2.json");
  ASSERT_EQ(s.xhaul_options.size(), 5u);
  const double c0 = benchmark_cost(s);
  std::vector<double> c;
  for (const XHaulSolution& x : s.xhaul_options) {
    BsKind k = s.kinds[0];
    k.xhaul = x;
    c.push_back(cost_coefficient(k, c0));
  }
  EXPECT_NEAR(c.front(), 0.26, 1e-12);
  EXPECT_NEAR(c.back(), 1.0, 1e-12);
  EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
  EXPECT_EQ(s.xhaul_options[0].medium, Medium::wireless);
  EXPECT_EQ(s.xhaul_options[0].power_factor, kDefaultWirelessPowerFactor);
}

TEST(BuildScenario, SchemaErrorsCarryJsonPaths) {
  struct Case {
    std::function<void(json&)> edit;
    std::string path;
  };
  const std::vector<Case> cases = {
      {[](json& d) { d["kinds"][0].erase("static_power_w"); }, "/kinds/0/static_power_w"},
      {[](json& d) { d["kinds"][0]["static_power_w"] = "high"; }, "/kinds/0/static_power_w"},
      {[](json& d) { d["kinds"][0]["colour"] = "red"; }, "/kinds/0/colour"},
      {[](json& d) { d["ues"][0]["position"] = json::array({1}); }, "/ues/0/position"},
      {[](json& d) { d["cache"]["strategy"] = "lru"; }, "/cache/strategy"},
      {[](json& d) { d["kinds"][0]["xhaul"]["medium"] = "copper"; }, "/kinds/0/xhaul/medium"},
      {[](json& d) { d["seed"] = -4; }, "/seed"},
      {[](json& d) { d["radio_mode"] = "magic"; }, "/radio_mode"},
      {[](json& d) { d["benchmark_cost"] = "min-kind"; }, "/benchmark_cost"},
      {[](json& d) { d.erase("traffic"); }, "/traffic"},
  };
  for (const Case& c : cases) {
    json doc = minimal_doc();
    c.edit(doc);
    const ScenarioError e = parse_error(doc);
    EXPECT_EQ(e.category(), ScenarioError::Category::schema) << c.path;
    EXPECT_EQ(e.where(), c.path);
  }
}

TEST(BuildScenario, MalformedTextIsASchemaError) {
  try {
    build_scenario("{\"kinds\": [");
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.category(), ScenarioError::Category::schema);
  }
}

TEST(BuildScenario, DanglingReferences) {
  json doc = minimal_doc();
  doc["base_stations"][0]["kind"] = "femto";
  ScenarioError e = parse_error(doc);
  EXPECT_EQ(e.category(), ScenarioError::Category::reference);
  EXPECT_EQ(e.where(), "/base_stations/0/kind");

  doc = minimal_doc();
  doc["kinds"][0]["xhaul"] = "fiber_9000";
  e = parse_error(doc);
  EXPECT_EQ(e.category(), ScenarioError::Category::reference);
  EXPECT_NE(std::string(e.what()).find("fiber_9000"), std::string::npos);
}

TEST(BuildScenario, BreakdownMustSumToCost) {
  json doc = minimal_doc();
  doc["kinds"][0]["cost_breakdown"] = {{"infrastructure", 0.5}, {"site_operation", 0.4}};
  EXPECT_EQ(parse_error(doc).category(), ScenarioError::Category::invariant);
  doc["kinds"][0]["cost_breakdown"]["content_delivery"] = 0.1;
  EXPECT_NO_THROW(scenario_from_json(doc));
}

TEST(BuildScenario, InvariantViolations) {
  const std::vector<std::function<void(json&)>> edits = {
      [](json& d) { d["kinds"][0]["static_power_w"] = 0.0; },
      [](json& d) { d["kinds"][0]["bandwidth_hz"] = -1.0; },
      [](json& d) { d["ues"][0]["demand_peak_bps"] = 0.0; },
      [](json& d) { d["traffic"]["peak_to_min_ratio"] = 0.5; },
      [](json& d) { d["traffic"]["peak_hour"] = 24; },
      [](json& d) { d["benchmark_cost"] = 0.0; },
      [](json& d) { d["ues"].push_back(d["ues"][0]); },
  };
  for (const auto& edit : edits) {
    json doc = minimal_doc();
    edit(doc);
    EXPECT_EQ(parse_error(doc).category(), ScenarioError::Category::invariant) << doc.dump();
  }
}

TEST(BuildScenario, RadioParameterRequiredOnlyInItsMode) {
  json doc = minimal_doc();
  doc["kinds"][0].erase("radio_capacity_bps");
  EXPECT_EQ(parse_error(doc).where(), "/kinds/0/radio_capacity_bps");
  doc["radio_mode"] = "physical";
  EXPECT_EQ(parse_error(doc).where(), "/kinds/0/tx_power_w");
  doc["kinds"][0]["tx_power_w"] = 1.0;
  EXPECT_NO_THROW(scenario_from_json(doc));
}

TEST(BuildScenario, GridGeneratorPlacesCellCentres) {
  const NetworkScenario s = test::load_fixture("fig2.json");
  ASSERT_EQ(s.base_stations.size(), 4u);
  EXPECT_EQ(s.base_stations[0].id, "bs000");
  EXPECT_EQ(s.base_stations[3].id, "bs003");
  EXPECT_EQ(s.base_stations[0].position, (Position{50, 50}));
  EXPECT_EQ(s.base_stations[1].position, (Position{150, 50}));
  EXPECT_EQ(s.base_stations[2].position, (Position{50, 150}));
}

TEST(BuildScenario, RandomUesAreSeededAndInsideTheArea) {
  const std::string text = test::read_text(test::scenario_path("fig2.json"));
  const NetworkScenario a = build_scenario(text);
  const NetworkScenario b = build_scenario(text);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.ues.size(), 32u);
  std::set<std::string> ids;
  for (const UserEquipment& u : a.ues) {
    ids.insert(u.id);
    EXPECT_GE(u.position.x, 0.0);
    EXPECT_LT(u.position.x, 200.0);
    EXPECT_GE(u.position.y, 0.0);
    EXPECT_LT(u.position.y, 200.0);
  }
  EXPECT_EQ(ids.size(), 32u);
  EXPECT_EQ(a.ues.front().id, "ue000");

  const NetworkScenario c = build_scenario(text, 99);
  EXPECT_EQ(c.rng_seed, 99u);
  EXPECT_NE(c.ues[0].position, a.ues[0].position);
  EXPECT_EQ(c, build_scenario(text, 99));
}

TEST(ToJson, RoundTripIsExact) {
  for (const char* name : {"minimal.json", "fig2.json", "fig3.json", "fig4.json", "hetnet_physical.json"}) {
    const NetworkScenario s = test::load_fixture(name);
    const json doc = to_json(s);
    EXPECT_EQ(scenario_from_json(doc), s) << name;
    EXPECT_EQ(to_json(scenario_from_json(doc)), doc) << name;
  }
}

TEST(ToJson, InlineXHaulSurvivesWhenItDiffersFromTheCatalog) {
  NetworkScenario s = test::load_fixture("fig2.json");
  s.kinds[0].xhaul.capacity_bps = 1.23e7;
  EXPECT_EQ(scenario_from_json(to_json(s)), s);
}

TEST(Validate, CleanScenarioHasNoWarnings) {
  EXPECT_TRUE(validate_scenario(test::load_fixture("fig2.json")).empty());
}

TEST(Validate, Warnings) {
  NetworkScenario s = test::single_cell();
  s.benchmark_cost = 10.0;
  s.cache.strategy = CacheStrategy::top_popular;
  s.kinds[0].xhaul.capacity_bps = 1e6;
  const auto w = validate_scenario(s);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_NE(w[0].find("C_n exceeds 1"), std::string::npos);
  EXPECT_NE(w[1].find("cache_size 0"), std::string::npos);
  EXPECT_NE(w[2].find("below the minimum per-UE peak demand"), std::string::npos);
}

TEST(ScenarioLookup, FindersReturnIndices) {
  const NetworkScenario s = test::load_fixture("hetnet_physical.json");
  EXPECT_EQ(s.find_kind("rrh"), std::optional<std::size_t>(1));
  EXPECT_FALSE(s.find_kind("femto").has_value());
  EXPECT_EQ(s.kind_of(s.base_stations[0]).id, "macro");
}

}  // namespace
}  // namespace e3
