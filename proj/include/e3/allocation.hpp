#pragma once

// Max-min fair rate allocation under the joint radio / X-Haul bottleneck.
// Cache hits are served locally, so only the miss share of a BS's traffic
// loads its X-Haul link.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "e3/cache.hpp"
#include "e3/model.hpp"
#include "e3/radio.hpp"

namespace e3 {

/// Largest served rate x with x <= radio_cap and (1 - h) * x <= xhaul_cap.
inline double effective_bs_capacity(double radio_cap, double xhaul_cap, double hit) {
  if (hit >= 1.0) return radio_cap;
  return std::min(radio_cap, xhaul_cap / (1.0 - hit));
}

/// Max-min fair split of `capacity` among `demands` (progressive filling).
inline std::vector<double> water_fill(std::span<const double> demands, double capacity) {
  std::vector<std::size_t> order(demands.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return demands[a] < demands[b]; });

  std::vector<double> rates(demands.size(), 0.0);
  double remaining = std::max(capacity, 0.0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double fair_share = remaining / static_cast<double>(order.size() - i);
    if (demands[order[i]] >= fair_share) {
      // Every remaining demand is at least this large: the water level is reached.
      for (std::size_t j = i; j < order.size(); ++j) rates[order[j]] = fair_share;
      break;
    }
    rates[order[i]] = demands[order[i]];
    remaining = std::max(remaining - demands[order[i]], 0.0);
  }
  return rates;
}

struct BsFlow {
  double radio_capacity_bps = 0.0;
  double effective_capacity_bps = 0.0;
  double hit_ratio = 0.0;
  double served_bps = 0.0;
  double hit_bps = 0.0;
  double miss_bps = 0.0;
  double radio_load = 0.0;
  double xhaul_utilization = 0.0;
};

struct AllocationResult {
  double time_h = 0.0;
  std::vector<double> demands;  // d_k(t), indexed like NetworkScenario::ues
  std::vector<double> rates;    // R_k
  std::vector<BsFlow> per_bs;   // indexed like NetworkScenario::base_stations
};

/// Allocation at hour `t` using precomputed per-kind hit ratios.
inline AllocationResult allocate(const NetworkScenario& s, const Association& assoc, double t,
                                 std::span<const double> kind_hits) {
  AllocationResult out;
  out.time_h = t;
  out.demands.resize(s.ues.size());
  for (std::size_t k = 0; k < s.ues.size(); ++k) out.demands[k] = demand_at(s.ues[k], t, s.traffic);
  out.rates.assign(s.ues.size(), 0.0);
  out.per_bs.resize(s.base_stations.size());

  std::vector<double> local;
  for (std::size_t n = 0; n < s.base_stations.size(); ++n) {
    const BaseStation& bs = s.base_stations[n];
    const BsKind& kind = s.kind_of(bs);
    BsFlow& flow = out.per_bs[n];
    flow.hit_ratio = kind_hits[bs.kind];
    flow.radio_capacity_bps = radio_capacity(n, assoc, s);
    flow.effective_capacity_bps =
        effective_bs_capacity(flow.radio_capacity_bps, kind.xhaul.capacity_bps, flow.hit_ratio);

    const auto& ues = assoc.attached[n];
    local.resize(ues.size());
    for (std::size_t i = 0; i < ues.size(); ++i) local[i] = out.demands[ues[i]];
    const std::vector<double> rates = water_fill(local, flow.effective_capacity_bps);

    // Sum in ascending rate order so the total does not depend on UE order.
    std::vector<double> sorted = rates;
    std::sort(sorted.begin(), sorted.end());
    flow.served_bps = std::accumulate(sorted.begin(), sorted.end(), 0.0);
    for (std::size_t i = 0; i < ues.size(); ++i) out.rates[ues[i]] = rates[i];

    flow.hit_bps = flow.hit_ratio * flow.served_bps;
    flow.miss_bps = flow.served_bps - flow.hit_bps;
    flow.radio_load =
        flow.radio_capacity_bps > 0.0 ? std::clamp(flow.served_bps / flow.radio_capacity_bps, 0.0, 1.0) : 0.0;
    flow.xhaul_utilization = std::clamp(flow.miss_bps / kind.xhaul.capacity_bps, 0.0, 1.0);
  }
  return out;
}

inline AllocationResult allocate(const NetworkScenario& s, const Association& assoc, double t) {
  const std::vector<double> hits = kind_hit_ratios(s);
  return allocate(s, assoc, t, hits);
}

}  // namespace e3
