#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "e3/cli.hpp"
#include "test_support.hpp"

namespace e3 {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "e3");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Splits one CSV record (RFC 4180 quoting, no embedded newlines).
std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

// Data lines of a CSV file, without the manifest comments.
std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.starts_with("#")) lines.push_back(line);
  return lines;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("e3_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    ::unsetenv("E3_SEED");
  }
  void TearDown() override {
    ::unsetenv("E3_SEED");
    fs::remove_all(dir_);
  }
  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, EvalPrintsAllMetrics) {
  const CliRun r = run_cli({"eval", test::scenario_path("fig2.json"), "--time", "14"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("time: 14 h"), std::string::npos);
  for (const char* key : {"se_bps_per_hz:", "ee_bit_per_joule:", "ce_bit_per_cost:", "e3_bit_per_joule:"})
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
  const MetricReport expected = evaluate(test::load_fixture("fig2.json"), 14.0);
  EXPECT_NE(r.out.find("e3_bit_per_joule: " + csv::format_number(expected.e3)), std::string::npos);
}

TEST_F(CliTest, EvalDefaultsToPeakHour) {
  const CliRun r = run_cli({"eval", test::scenario_path("fig2.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("time: 20 h"), std::string::npos);
}

TEST_F(CliTest, MissingScenarioIsAnIoError) {
  const CliRun r = run_cli({"eval", tmp("nope.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("cannot read"), std::string::npos);
}

TEST_F(CliTest, BadScenarioIsAnInputError) {
  std::ofstream(tmp("bad.json")) << R"({"kinds": []})";
  const CliRun r = run_cli({"eval", tmp("bad.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("schema violation"), std::string::npos) << r.err;
}

TEST_F(CliTest, EvalDailyCsvMatchesLibrary) {
  const CliRun r = run_cli({"eval", test::scenario_path("fig3.json"), "--daily", "--out", tmp("e.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("time: daily average"), std::string::npos);
  const auto lines = data_lines(test::read_text(tmp("e.csv")));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], csv::kHeader);
  const auto fields = split_record(lines[1]);
  ASSERT_EQ(fields.size(), 11u);
  const double expected = evaluate_daily(test::load_fixture("fig3.json")).e3;
  EXPECT_NEAR(std::stod(fields[9]), expected, 1e-11 * expected);
}

TEST_F(CliTest, EvalRejectsOutOfRangeTime) {
  EXPECT_EQ(run_cli({"eval", test::scenario_path("fig2.json"), "--time", "24"}).code, 1);
  EXPECT_EQ(run_cli({"eval", test::scenario_path("fig2.json"), "--time", "3", "--daily"}).code, 1);
}

TEST_F(CliTest, SweepWritesOneRowPerGridPoint) {
  const CliRun r = run_cli({"sweep", test::scenario_path("fig3.json"), "--param", "kinds.pico.cache_size=0:100:20",
                         "--daily", "--out", tmp("s.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rows: 6, errors: 0"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("# output: " + tmp("s.csv")), std::string::npos);
  const auto lines = data_lines(test::read_text(tmp("s.csv")));
  ASSERT_EQ(lines.size(), 7u);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_record(lines[i]);
    ASSERT_EQ(f.size(), 11u);
    EXPECT_EQ(std::stod(f[0]), 20.0 * static_cast<double>(i - 1));
    EXPECT_TRUE(f[1].empty());
  }
}

TEST_F(CliTest, TwoAxisSweepIsRowMajor) {
  const CliRun r = run_cli({"sweep", test::scenario_path("fig3.json"), "--param", "kinds.pico.cache_size=1:3:1",
                         "--param2", "cache.zipf_exponent=1:2:1", "--out", tmp("s2.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = data_lines(test::read_text(tmp("s2.csv")));
  ASSERT_EQ(lines.size(), 7u);
  const std::vector<std::pair<std::string, std::string>> expected = {{"1", "1"}, {"1", "2"}, {"2", "1"},
                                                                     {"2", "2"}, {"3", "1"}, {"3", "2"}};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto f = split_record(lines[i + 1]);
    EXPECT_EQ(f[0], expected[i].first);
    EXPECT_EQ(f[1], expected[i].second);
  }
}

TEST_F(CliTest, ArgmaxMatchesSweepModule) {
  const CliRun r = run_cli({"sweep", test::scenario_path("fig3.json"), "--param", "kinds.pico.cache_size=0:100:5",
                         "--daily", "--argmax", "e3", "--threads", "3", "--out", tmp("a.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  SweepSpec spec;
  spec.first = {"kinds.pico.cache_size", parse_axis_values("0:100:5")};
  spec.time = TimeMode::daily_average();
  const Optimum best = argmax(run_sweep(test::load_fixture("fig3.json"), spec), Metric::e3);
  EXPECT_NE(r.out.find("argmax e3: kinds.pico.cache_size=" + csv::format_number(best.param1) +
                       " value=" + csv::format_number(best.value)),
            std::string::npos)
      << r.out;
}

TEST_F(CliTest, FailedRowsKeepTheFieldCount) {
  const CliRun r = run_cli({"sweep", test::scenario_path("fig3.json"), "--param", "kinds.pico.cache_size=90,110",
                         "--out", tmp("f.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rows: 2, errors: 1"), std::string::npos);
  const auto lines = data_lines(test::read_text(tmp("f.csv")));
  const auto f = split_record(lines[2]);
  ASSERT_EQ(f.size(), 11u);
  EXPECT_TRUE(f[2].empty());
  EXPECT_NE(f[10].find("cache larger than catalog"), std::string::npos);
}

TEST_F(CliTest, BadSweepSpecsAreInputErrors) {
  const std::string sc = test::scenario_path("fig3.json");
  EXPECT_EQ(run_cli({"sweep", sc, "--param", "kinds.pico.colour=1:2:1", "--out", tmp("x.csv")}).code, 1);
  EXPECT_EQ(run_cli({"sweep", sc, "--param", "kinds.pico.cache_size=5:1:1", "--out", tmp("x.csv")}).code, 1);
  EXPECT_EQ(run_cli({"sweep", sc, "--param", "kinds.pico.cache_size", "--out", tmp("x.csv")}).code, 1);
  EXPECT_EQ(run_cli({"sweep", sc, "--param", "kinds.pico.cache_size=1", "--metric", "fps", "--out", tmp("x.csv")})
                .code,
            1);
  EXPECT_EQ(run_cli({"sweep", sc, "--param", "kinds.pico.cache_size=1"}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
}

TEST_F(CliTest, UnwritableOutputIsAnIoError) {
  const CliRun r = run_cli({"sweep", test::scenario_path("fig3.json"), "--param", "kinds.pico.cache_size=1", "--out",
                         tmp("missing_dir/x.csv")});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, RepeatedSweepsAreByteIdentical) {
  const std::vector<std::string> base = {"sweep", test::scenario_path("fig2.json"), "--param",
                                         "kinds.pico.xhaul_option=0:4:1", "--daily"};
  auto a = base;
  a.insert(a.end(), {"--threads", "1", "--out", tmp("one.csv")});
  auto b = base;
  b.insert(b.end(), {"--threads", "4", "--out", tmp("two.csv")});
  ASSERT_EQ(run_cli(a).code, 0);
  ASSERT_EQ(run_cli(b).code, 0);
  EXPECT_EQ(test::read_text(tmp("one.csv")), test::read_text(tmp("two.csv")));
}

TEST_F(CliTest, SeedEnvironmentOverride) {
  const std::vector<std::string> args = {"eval", test::scenario_path("fig2.json"), "--out", tmp("seed.csv")};
  ASSERT_EQ(run_cli(args).code, 0);
  const std::string plain = test::read_text(tmp("seed.csv"));
  EXPECT_NE(plain.find("# seed: 2016"), std::string::npos);

  ::setenv("E3_SEED", "77", 1);
  ASSERT_EQ(run_cli(args).code, 0);
  const std::string seeded = test::read_text(tmp("seed.csv"));
  EXPECT_NE(seeded.find("# seed: 77"), std::string::npos);
  const MetricReport expected =
      evaluate(build_scenario(test::read_text(test::scenario_path("fig2.json")), 77), 20.0);
  EXPECT_NE(seeded.find(csv::format_number(expected.e3)), std::string::npos);

  ::setenv("E3_SEED", "-3", 1);
  EXPECT_EQ(run_cli(args).code, 1);
}

TEST_F(CliTest, ValidateListsWarnings) {
  CliRun r = run_cli({"validate", test::scenario_path("fig2.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ok: 1 kinds, 4 base stations, 32 UEs, 0 warnings"), std::string::npos) << r.out;

  json doc = json::parse(test::read_text(test::scenario_path("fig2.json")));
  doc["benchmark_cost"] = 1.0;
  std::ofstream(tmp("w.json")) << doc.dump();
  r = run_cli({"validate", tmp("w.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("warning: C_n exceeds 1 for kind 'pico'"), std::string::npos) << r.out;
}

TEST_F(CliTest, HelpAndVersionExitZero) {
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  const CliRun v = run_cli({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(cli::kVersion), std::string::npos);
}

}  // namespace
}  // namespace e3
