#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "e3/e3.hpp"

namespace e3::test {

inline std::string scenario_path(const std::string& name) { return std::string(E3_SCENARIO_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline NetworkScenario load_fixture(const std::string& name) { return build_scenario(read_text(scenario_path(name))); }

/// One kind, one BS at the origin, one UE; abstract radio.
inline NetworkScenario single_cell(double demand_bps = 1e7) {
  NetworkScenario s;
  BsKind k;
  k.id = "pico";
  k.static_power_w = 6.0;
  k.max_tx_dynamic_power_w = 8.0;
  k.radio_capacity_bps = 2e7;
  k.tx_power_w = 1.0;
  k.bandwidth_hz = 1e7;
  k.coverage_area_m2 = 100.0;
  k.xhaul = {"fiber", 1e9, Medium::wired, 0.0, 0.0};
  k.cost_per_area = 50.0;
  s.kinds.push_back(k);
  s.base_stations.push_back({"a", 0, {0.0, 0.0}});
  s.ues.push_back({"u0", {10.0, 0.0}, demand_bps, 1.0});
  s.traffic = {1.0, 12.0, 24};
  s.benchmark_cost = 100.0;
  check_invariants(s);
  return s;
}

}  // namespace e3::test
