#pragma once

// UE-to-BS association, air-interface capacity and the daily demand curve.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "e3/model.hpp"

namespace e3 {

struct Association {
  std::vector<std::size_t> serving;               // UE index -> BS index
  std::vector<std::vector<std::size_t>> attached;  // BS index -> UE indices, ascending

  bool operator==(const Association&) const = default;
};

/// Nearest base station by Euclidean distance; ties go to the smallest bs_id.
inline Association associate(const NetworkScenario& s) {
  Association a;
  a.serving.resize(s.ues.size());
  a.attached.resize(s.base_stations.size());
  for (std::size_t k = 0; k < s.ues.size(); ++k) {
    const Position& p = s.ues[k].position;
    std::size_t best = 0;
    double best_d2 = 0.0;
    for (std::size_t n = 0; n < s.base_stations.size(); ++n) {
      const BaseStation& bs = s.base_stations[n];
      const double dx = bs.position.x - p.x;
      const double dy = bs.position.y - p.y;
      const double d2 = dx * dx + dy * dy;
      if (n == 0 || d2 < best_d2 || (d2 == best_d2 && bs.id < s.base_stations[best].id)) {
        best = n;
        best_d2 = d2;
      }
    }
    a.serving[k] = best;
    a.attached[best].push_back(k);
  }
  return a;
}

/// Log-distance path loss and thermal noise used by the physical radio mode.
struct PathLossModel {
  double reference_loss_db = 30.0;
  double reference_distance_m = 1.0;
  double exponent = 3.5;
  double noise_dbm_per_hz = -174.0;

  double loss_db(double d) const {
    const double clamped = d < reference_distance_m ? reference_distance_m : d;
    return reference_loss_db + 10.0 * exponent * std::log10(clamped / reference_distance_m);
  }
  double gain(double d) const { return std::pow(10.0, -loss_db(d) / 10.0); }
  double noise_w(double bandwidth_hz) const {
    return std::pow(10.0, (noise_dbm_per_hz - 30.0) / 10.0) * bandwidth_hz;
  }
};

/// Downlink SINR of UE `ue` served by BS `bs`, every other BS interfering
/// at full transmit power.
inline double downlink_sinr(std::size_t ue, std::size_t bs, const NetworkScenario& s,
                            const PathLossModel& pl = {}) {
  const Position& p = s.ues.at(ue).position;
  const BaseStation& serving = s.base_stations.at(bs);
  const double signal = s.kind_of(serving).tx_power_w * pl.gain(distance(p, serving.position));
  double interference = 0.0;
  for (std::size_t n = 0; n < s.base_stations.size(); ++n) {
    if (n == bs) continue;
    const BaseStation& other = s.base_stations[n];
    interference += s.kind_of(other).tx_power_w * pl.gain(distance(p, other.position));
  }
  return signal / (interference + pl.noise_w(s.kind_of(serving).bandwidth_hz));
}

/// Aggregate air-interface capacity of BS `bs` in bit/s.
inline double radio_capacity(std::size_t bs, const Association& assoc, const NetworkScenario& s,
                             const PathLossModel& pl = {}) {
  const BsKind& kind = s.kind_of(s.base_stations.at(bs));
  if (s.radio_mode == RadioMode::abstract) return kind.radio_capacity_bps;

  const auto& ues = assoc.attached.at(bs);
  if (ues.empty()) return 0.0;
  // Equal spectrum split between the attached UEs.
  const double share = kind.bandwidth_hz / static_cast<double>(ues.size());
  double total = 0.0;
  for (std::size_t k : ues) total += share * std::log2(1.0 + downlink_sinr(k, bs, s, pl));
  return total;
}

/// Demand of `ue` at hour `t`: a raised cosine peaking at the profile's
/// peak hour with value demand_peak and bottoming out at demand_peak / rho.
inline double demand_at(const UserEquipment& ue, double t, const TrafficProfile& p) {
  const double inv = 1.0 / p.peak_to_min_ratio;
  const double phase = 2.0 * std::numbers::pi * (t - p.peak_hour) / 24.0;
  return ue.demand_peak_bps * (inv + (1.0 - inv) * (1.0 + std::cos(phase)) / 2.0);
}

}  // namespace e3
