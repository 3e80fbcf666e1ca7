#pragma once

// Per-BS power draw and the cost side: effective per-area cost, the cost
// coefficient C_n = C~_S(n) / C_0 and the yearly cost rate of a deployment.

#include <algorithm>
#include <stdexcept>

#include "e3/model.hpp"

namespace e3 {

struct PowerDraw {
  double static_w = 0.0;       // P_0n
  double transceiver_w = 0.0;  // load-dependent radio part
  double xhaul_w = 0.0;        // wireless X-Haul overhead

  double dynamic_w() const { return transceiver_w + xhaul_w; }  // P_Tn
  double total_w() const { return static_w + dynamic_w(); }
};

/// Linear load model. The X-Haul part is power_factor times the transceiver
/// part at every load. Cache storage, if given a per-item wattage, counts as
/// static draw.
inline PowerDraw dynamic_power(const BsKind& kind, double radio_load, double cache_power_per_item_w = 0.0) {
  const double load = std::clamp(radio_load, 0.0, 1.0);
  PowerDraw p;
  p.static_w = kind.static_power_w + static_cast<double>(kind.cache_size) * cache_power_per_item_w;
  p.transceiver_w = kind.max_tx_dynamic_power_w * load;
  p.xhaul_w = kind.xhaul.power_factor * p.transceiver_w;
  return p;
}

/// C~_S(n): discounted breakdown (or the flat cost_per_area) plus the
/// X-Haul option's cost and the per-item cache cost.
inline double effective_cost_per_area(const BsKind& kind) {
  const double base = kind.cost_breakdown ? kind.cost_breakdown->discounted_sum() : kind.cost_per_area;
  return base + kind.xhaul.cost_per_area + static_cast<double>(kind.cache_size) * kind.cache_cost_per_item;
}

/// C_0 of the scenario: the pinned value, or the costliest kind.
inline double benchmark_cost(const NetworkScenario& s) {
  if (s.benchmark_cost) return *s.benchmark_cost;
  double c0 = 0.0;
  for (const BsKind& k : s.kinds) c0 = std::max(c0, effective_cost_per_area(k));
  return c0;
}

inline double cost_coefficient(const BsKind& kind, double c0) {
  if (!(c0 > 0.0)) throw std::invalid_argument("benchmark cost C_0 must be > 0");
  return effective_cost_per_area(kind) / c0;
}

/// Currency per year: per-area cost times covered area, summed over BSs.
inline double total_cost_rate(const NetworkScenario& s) {
  double total = 0.0;
  for (const BaseStation& bs : s.base_stations) {
    const BsKind& k = s.kind_of(bs);
    total += effective_cost_per_area(k) * k.coverage_area_m2;
  }
  return total;
}

}  // namespace e3
