#pragma once

// The `e3` command line: eval, sweep and validate subcommands. Kept in a
// header so tests can drive it in-process.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "e3/csv.hpp"
#include "e3/metrics.hpp"
#include "e3/scenario_json.hpp"
#include "e3/sweep.hpp"
#include "e3/validate.hpp"

namespace e3::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kInputError = 1, kIoError = 2 };

namespace detail {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("error while writing '" + path + "'");
}

inline std::optional<std::uint64_t> seed_from_env() {
  const char* raw = std::getenv("E3_SEED");
  if (!raw || !*raw) return std::nullopt;
  std::uint64_t v = 0;
  const std::string_view text(raw);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw SweepError("E3_SEED must be a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

inline NetworkScenario load(const std::string& path) { return build_scenario(read_file(path), seed_from_env()); }

inline std::pair<std::string, std::vector<double>> split_param(const std::string& flag) {
  const auto eq = flag.find('=');
  if (eq == std::string::npos || eq == 0) throw SweepError("--param expects PATH=VALUES, got '" + flag + "'");
  return {flag.substr(0, eq), parse_axis_values(std::string_view(flag).substr(eq + 1))};
}

inline void print_report(std::ostream& os, const MetricReport& r) {
  using csv::format_number;
  os << "time: " << (r.time_h ? format_number(*r.time_h) + " h" : std::string("daily average")) << '\n'
     << "throughput_bps: " << format_number(r.throughput) << '\n'
     << "weighted_throughput_bps: " << format_number(r.weighted_throughput) << '\n'
     << "total_power_w: " << format_number(r.total_power) << '\n'
     << "weighted_power_w: " << format_number(r.weighted_power) << '\n'
     << "cost_rate_per_year: " << format_number(r.cost_rate) << '\n'
     << "se_bps_per_hz: " << format_number(r.se) << '\n'
     << "ee_bit_per_joule: " << format_number(r.ee) << '\n'
     << "ce_bit_per_cost: " << format_number(r.ce) << '\n'
     << "e3_bit_per_joule: " << format_number(r.e3) << '\n';
}

}  // namespace detail

/// Runs the tool; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Techno-economic evaluation of RAN deployments (SE, EE, CE, E3)", "e3"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string scenario_path;
  std::string out_path;
  std::optional<double> time_h;
  bool daily = false;

  auto* eval = app.add_subcommand("eval", "Evaluate one scenario");
  eval->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  auto* eval_time = eval->add_option("--time", time_h, "Hour of day in [0, 24); defaults to the peak hour");
  eval->add_flag("--daily", daily, "Average over the daily traffic profile")->excludes(eval_time);
  eval->add_option("--out", out_path, "Write a one-row CSV here");

  std::string param1;
  std::string param2;
  std::string metric_name = "e3";
  std::string argmax_name;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Sweep one or two scenario parameters");
  sweep->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  sweep->add_option("--param", param1, "PATH=START:STOP:STEP or PATH=v1,v2,...")->required();
  sweep->add_option("--param2", param2, "Second axis, same syntax");
  sweep->add_option("--metric", metric_name, "Metric shown in the summary table (se, ee, ce, e3)");
  sweep->add_option("--argmax", argmax_name, "Report the grid point maximizing this metric");
  auto* sweep_time = sweep->add_option("--time", time_h, "Hour of day; defaults to the peak hour");
  sweep->add_flag("--daily", daily, "Average over the daily traffic profile")->excludes(sweep_time);
  sweep->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  sweep->add_option("--out", out_path, "CSV output file")->required();

  auto* validate = app.add_subcommand("validate", "Check a scenario and list warnings");
  validate->add_option("scenario", scenario_path, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (validate->parsed()) {
      const NetworkScenario s = detail::load(scenario_path);
      const auto warnings = validate_scenario(s);
      for (const auto& w : warnings) out << "warning: " << w << '\n';
      out << "ok: " << s.kinds.size() << " kinds, " << s.base_stations.size() << " base stations, " << s.ues.size()
          << " UEs, " << warnings.size() << " warnings\n";
      return kOk;
    }

    if (eval->parsed()) {
      const NetworkScenario s = detail::load(scenario_path);
      for (const auto& w : validate_scenario(s)) err << "warning: " << w << '\n';
      if (time_h && !(*time_h >= 0.0 && *time_h < 24.0)) {
        err << "error: --time must lie in [0, 24)\n";
        return kInputError;
      }
      const Evaluator ev(s);
      const MetricReport r = daily ? ev.evaluate_daily() : ev.evaluate(time_h.value_or(s.traffic.peak_hour));
      out << "scenario: " << scenario_path << '\n';
      detail::print_report(out, r);
      if (!out_path.empty()) {
        std::ostringstream csv_text;
        csv::write_manifest(csv_text, {{"e3", std::string(kVersion)},
                                       {"command", "eval"},
                                       {"scenario", scenario_path},
                                       {"spec", daily ? "--daily" : "--time " + csv::format_number(*r.time_h)},
                                       {"seed", std::to_string(s.rng_seed)}});
        csv::write_report(csv_text, r);
        detail::write_file(out_path, csv_text.str());
      }
      return kOk;
    }

    // sweep
    const NetworkScenario s = detail::load(scenario_path);
    if (time_h && !(*time_h >= 0.0 && *time_h < 24.0)) {
      err << "error: --time must lie in [0, 24)\n";
      return kInputError;
    }
    SweepSpec spec;
    auto [path1, values1] = detail::split_param(param1);
    spec.first = {path1, values1};
    if (!param2.empty()) {
      auto [path2, values2] = detail::split_param(param2);
      spec.second = SweepAxis{path2, values2};
    }
    spec.metric = parse_metric(metric_name);
    spec.time = daily ? TimeMode::daily_average() : TimeMode::at(time_h.value_or(s.traffic.peak_hour));
    const bool want_argmax = !argmax_name.empty();
    const Metric argmax_metric = want_argmax ? parse_metric(argmax_name) : spec.metric;

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const SweepResult result = run_sweep(s, spec, threads);

    std::string spec_text = "--param " + param1;
    if (!param2.empty()) spec_text += " --param2 " + param2;
    spec_text += daily ? " --daily" : " --time " + csv::format_number(spec.time.hour);
    spec_text += " --metric " + std::string(to_string(spec.metric));
    // The output path is left out of the file so that identical runs
    // written to different paths stay byte-identical.
    std::vector<std::pair<std::string, std::string>> manifest{{"e3", std::string(kVersion)},
                                                              {"command", "sweep"},
                                                              {"scenario", scenario_path},
                                                              {"spec", spec_text},
                                                              {"seed", std::to_string(s.rng_seed)}};
    std::ostringstream csv_text;
    csv::write_manifest(csv_text, manifest);
    csv::write_sweep(csv_text, result);
    detail::write_file(out_path, csv_text.str());

    manifest.emplace_back("output", out_path);
    csv::write_manifest(out, manifest);
    std::size_t failed = 0;
    for (const SweepRow& row : result.rows) {
      out << csv::format_number(row.param1);
      if (row.param2) out << ' ' << csv::format_number(*row.param2);
      if (row.ok()) {
        out << "  " << to_string(spec.metric) << '=' << csv::format_number(metric_value(*row.report, spec.metric))
            << '\n';
      } else {
        out << "  error: " << row.error << '\n';
        ++failed;
      }
    }
    out << "rows: " << result.rows.size() << ", errors: " << failed << '\n';
    if (want_argmax) {
      const Optimum best = argmax(result, argmax_metric);
      out << "argmax " << to_string(argmax_metric) << ": " << path1 << '=' << csv::format_number(best.param1);
      if (best.param2) out << ' ' << spec.second->path << '=' << csv::format_number(*best.param2);
      out << " value=" << csv::format_number(best.value) << '\n';
    }
    return kOk;
  } catch (const detail::IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace e3::cli
