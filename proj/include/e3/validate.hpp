#pragma once

#include <string>
#include <vector>

#include "e3/energy_cost.hpp"
#include "e3/model.hpp"

namespace e3 {

/// Non-fatal findings about a scenario that already satisfies its invariants.
inline std::vector<std::string> validate_scenario(const NetworkScenario& s) {
  std::vector<std::string> warnings;
  const double c0 = benchmark_cost(s);
  for (const BsKind& k : s.kinds) {
    if (c0 > 0.0 && cost_coefficient(k, c0) > 1.0)
      warnings.push_back("C_n exceeds 1 for kind '" + k.id + "' (C_n = " + std::to_string(cost_coefficient(k, c0)) +
                         ")");
  }
  if (s.cache.strategy != CacheStrategy::none)
    for (const BsKind& k : s.kinds)
      if (k.cache_size == 0)
        warnings.push_back("cache strategy '" + std::string(to_string(s.cache.strategy)) + "' set but kind '" + k.id +
                           "' has cache_size 0");

  double min_demand = 0.0;
  for (std::size_t i = 0; i < s.ues.size(); ++i)
    if (i == 0 || s.ues[i].demand_peak_bps < min_demand) min_demand = s.ues[i].demand_peak_bps;
  for (const BsKind& k : s.kinds)
    if (k.xhaul.capacity_bps < min_demand)
      warnings.push_back("xhaul capacity of kind '" + k.id + "' is below the minimum per-UE peak demand");
  return warnings;
}

}  // namespace e3
