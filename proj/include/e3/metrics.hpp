#pragma once

// SE, EE, CE and E^3 for a scenario, at one hour of the day or averaged
// over the daily traffic profile.
//
//   SE  = sum_k R_k / sum_n B_n                         [bit/s/Hz]
//   EE  = sum_k a_k R_k / sum_n (P_Tn + P_0n)           [bit/J]
//   CE  = sum_k R_k * seconds_per_year / cost_rate      [bit/currency]
//   E^3 = sum_k a_k R_k / sum_n (P_Tn + P_0n C_n)       [bit/J]

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "e3/allocation.hpp"
#include "e3/cache.hpp"
#include "e3/energy_cost.hpp"
#include "e3/model.hpp"
#include "e3/radio.hpp"

namespace e3 {

inline constexpr double kSecondsPerYear = 365.0 * 24.0 * 3600.0;

struct MetricReport {
  double se = 0.0;
  double ee = 0.0;
  double ce = 0.0;
  double e3 = 0.0;
  double throughput = 0.0;           // sum R_k, bit/s
  double weighted_throughput = 0.0;  // sum a_k R_k, bit/s
  double total_power = 0.0;          // sum P_Tn + P_0n, W
  double weighted_power = 0.0;       // sum P_Tn + P_0n C_n, W
  double cost_rate = 0.0;            // currency/year
  std::optional<double> time_h;      // empty for a daily average

  bool daily_average() const { return !time_h.has_value(); }
  bool operator==(const MetricReport&) const = default;
};

/// Instantaneous sums feeding the metric ratios.
struct MetricTotals {
  double throughput = 0.0;
  double weighted_throughput = 0.0;
  double total_power = 0.0;
  double weighted_power = 0.0;
};

/// Time-independent pieces of an evaluation, computed once per scenario.
class Evaluator {
 public:
  explicit Evaluator(const NetworkScenario& s)
      : s_(s), assoc_(associate(s)), hits_(kind_hit_ratios(s)), cost_rate_(total_cost_rate(s)) {
    const double c0 = benchmark_cost(s);
    coefficients_.reserve(s.kinds.size());
    for (const BsKind& k : s.kinds) coefficients_.push_back(cost_coefficient(k, c0));
    for (const BaseStation& bs : s.base_stations) bandwidth_ += s.kind_of(bs).bandwidth_hz;
  }

  const Association& association() const { return assoc_; }
  const std::vector<double>& cost_coefficients() const { return coefficients_; }

  AllocationResult allocation_at(double t) const { return allocate(s_, assoc_, t, hits_); }

  MetricTotals totals_at(double t) const {
    const AllocationResult alloc = allocation_at(t);
    MetricTotals m;
    for (std::size_t k = 0; k < s_.ues.size(); ++k) {
      m.throughput += alloc.rates[k];
      m.weighted_throughput += s_.ues[k].weight * alloc.rates[k];
    }
    for (std::size_t n = 0; n < s_.base_stations.size(); ++n) {
      const BaseStation& bs = s_.base_stations[n];
      const PowerDraw p = dynamic_power(s_.kind_of(bs), alloc.per_bs[n].radio_load, s_.cache.power_per_item_w);
      m.total_power += p.dynamic_w() + p.static_w;
      m.weighted_power += p.dynamic_w() + p.static_w * coefficients_[bs.kind];
    }
    return m;
  }

  MetricReport report(const MetricTotals& m, std::optional<double> time_h) const {
    if (!(m.total_power > 0.0) || !(m.weighted_power > 0.0))
      throw std::domain_error("total power is zero; energy metrics undefined");
    MetricReport r;
    r.throughput = m.throughput;
    r.weighted_throughput = m.weighted_throughput;
    r.total_power = m.total_power;
    r.weighted_power = m.weighted_power;
    r.cost_rate = cost_rate_;
    r.se = m.throughput / bandwidth_;
    r.ee = m.weighted_throughput / m.total_power;
    r.ce = m.throughput * kSecondsPerYear / cost_rate_;
    r.e3 = m.weighted_throughput / m.weighted_power;
    r.time_h = time_h;
    return r;
  }

  MetricReport evaluate(double t) const { return report(totals_at(t), t); }

  /// Ratio of averages over samples_per_day equispaced hours starting at
  /// the peak hour.
  MetricReport evaluate_daily() const {
    const std::size_t n = s_.traffic.samples_per_day;
    MetricTotals sum;
    for (std::size_t i = 0; i < n; ++i) {
      const MetricTotals m = totals_at(sample_time(s_.traffic, i));
      sum.throughput += m.throughput;
      sum.weighted_throughput += m.weighted_throughput;
      sum.total_power += m.total_power;
      sum.weighted_power += m.weighted_power;
    }
    const double inv = 1.0 / static_cast<double>(n);
    sum.throughput *= inv;
    sum.weighted_throughput *= inv;
    sum.total_power *= inv;
    sum.weighted_power *= inv;
    return report(sum, std::nullopt);
  }

  static double sample_time(const TrafficProfile& p, std::size_t i) {
    return std::fmod(p.peak_hour + 24.0 * static_cast<double>(i) / static_cast<double>(p.samples_per_day), 24.0);
  }

 private:
  const NetworkScenario& s_;
  Association assoc_;
  std::vector<double> hits_;
  std::vector<double> coefficients_;
  double bandwidth_ = 0.0;
  double cost_rate_ = 0.0;
};

inline MetricReport evaluate(const NetworkScenario& s, double t) { return Evaluator(s).evaluate(t); }

inline MetricReport evaluate_daily(const NetworkScenario& s) { return Evaluator(s).evaluate_daily(); }

}  // namespace e3
