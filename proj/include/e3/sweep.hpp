#pragma once

// Grid sweeps over scenario parameters, argmax search and Pareto filtering.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "e3/energy_cost.hpp"
#include "e3/metrics.hpp"
#include "e3/model.hpp"

namespace e3 {

/// Malformed sweep request: unknown parameter path or bad value list.
class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Metric { se, ee, ce, e3 };

inline std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::se: return "se";
    case Metric::ee: return "ee";
    case Metric::ce: return "ce";
    case Metric::e3: return "e3";
  }
  return "e3";
}

inline Metric parse_metric(std::string_view name) {
  if (name == "se") return Metric::se;
  if (name == "ee") return Metric::ee;
  if (name == "ce") return Metric::ce;
  if (name == "e3") return Metric::e3;
  throw SweepError("unknown metric '" + std::string(name) + "' (expected se, ee, ce or e3)");
}

inline double metric_value(const MetricReport& r, Metric m) {
  switch (m) {
    case Metric::se: return r.se;
    case Metric::ee: return r.ee;
    case Metric::ce: return r.ce;
    case Metric::e3: return r.e3;
  }
  return r.e3;
}

struct TimeMode {
  bool daily = false;
  double hour = 0.0;

  static TimeMode at(double h) { return {false, h}; }
  static TimeMode daily_average() { return {true, 0.0}; }
};

struct SweepAxis {
  std::string path;
  std::vector<double> values;
};

struct SweepSpec {
  SweepAxis first;
  std::optional<SweepAxis> second;
  Metric metric = Metric::e3;
  TimeMode time;
};

struct SweepRow {
  double param1 = 0.0;
  std::optional<double> param2;
  std::optional<MetricReport> report;
  std::string error;

  bool ok() const { return report.has_value(); }
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

namespace detail {

inline double parse_double(std::string_view text, std::string_view context) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw SweepError("invalid number '" + std::string(text) + "' in " + std::string(context));
  return v;
}

inline std::size_t to_count(double v, const std::string& where) {
  if (!std::isfinite(v) || v < 0.0 || std::floor(v) != v)
    throw ScenarioError(ScenarioError::Category::invariant, where, "expected a non-negative integer, got " +
                                                                       std::to_string(v));
  return static_cast<std::size_t>(v);
}

}  // namespace detail

/// "start:stop:step" (inclusive of stop) or "v1,v2,...".
inline std::vector<double> parse_axis_values(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
      const std::size_t colon = text.find(':', pos);
      parts.push_back(text.substr(pos, colon - pos));
      if (colon == std::string_view::npos) break;
      pos = colon + 1;
    }
    if (parts.size() != 3) throw SweepError("range must be START:STOP:STEP, got '" + std::string(text) + "'");
    const double start = detail::parse_double(parts[0], "range start");
    const double stop = detail::parse_double(parts[1], "range stop");
    const double step = detail::parse_double(parts[2], "range step");
    if (!(step > 0.0)) throw SweepError("range step must be > 0");
    if (stop < start) throw SweepError("range stop must be >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    out.push_back(detail::parse_double(text.substr(pos, comma - pos), "value list"));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// Writes one numeric value into a scenario copy.
using ParameterSetter = std::function<void(NetworkScenario&, double)>;

namespace detail {

inline std::vector<std::string> split_path(std::string_view path) {
  // kinds[2].xhaul.capacity_bps -> {kinds, #2, xhaul, capacity_bps}
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (std::size_t i = 0; i < path.size(); ++i) {
    const char c = path[i];
    if (c == '.') {
      flush();
    } else if (c == '[') {
      flush();
      const std::size_t close = path.find(']', i);
      if (close == std::string_view::npos) throw SweepError("unbalanced '[' in parameter path");
      out.push_back("#" + std::string(path.substr(i + 1, close - i - 1)));
      i = close;
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

inline ParameterSetter kind_setter(std::size_t ki, const std::vector<std::string>& rest, const std::string& path) {
  using S = NetworkScenario;
  auto double_field = [ki](double BsKind::*field) {
    return [ki, field](S& s, double v) { s.kinds[ki].*field = v; };
  };
  const std::string key = rest.size() == 1 ? rest[0] : (rest.size() == 2 ? rest[0] + "." + rest[1] : "");
  if (key == "static_power_w") return double_field(&BsKind::static_power_w);
  if (key == "max_tx_dynamic_power_w") return double_field(&BsKind::max_tx_dynamic_power_w);
  if (key == "radio_capacity_bps") return double_field(&BsKind::radio_capacity_bps);
  if (key == "tx_power_w") return double_field(&BsKind::tx_power_w);
  if (key == "bandwidth_hz") return double_field(&BsKind::bandwidth_hz);
  if (key == "coverage_area_m2") return double_field(&BsKind::coverage_area_m2);
  if (key == "cache_cost_per_item") return double_field(&BsKind::cache_cost_per_item);
  if (key == "cost_per_area")
    return [ki](S& s, double v) {
      BsKind& k = s.kinds[ki];
      if (k.cost_breakdown && k.cost_per_area > 0.0) {
        // Keep the breakdown consistent by scaling every component.
        const double f = v / k.cost_per_area;
        auto& b = *k.cost_breakdown;
        for (double* c : {&b.infrastructure, &b.site_installation, &b.site_operation, &b.optimization_maintenance,
                          &b.cache_placement, &b.xhaul_configuration, &b.content_delivery})
          *c *= f;
      }
      k.cost_per_area = v;
    };
  if (key == "cache_size")
    return [ki](S& s, double v) { s.kinds[ki].cache_size = to_count(v, "BsKind '" + s.kinds[ki].id + "'"); };
  if (key == "xhaul_option")
    return [ki](S& s, double v) {
      const std::size_t idx = to_count(v, "xhaul_option");
      if (idx >= s.xhaul_options.size())
        throw ScenarioError(ScenarioError::Category::reference, "xhaul_option",
                            "index " + std::to_string(idx) + " outside the xhaul_options catalog");
      s.kinds[ki].xhaul = s.xhaul_options[idx];
    };
  if (key == "xhaul.capacity_bps" || key == "xhaul.capacity")
    return [ki](S& s, double v) { s.kinds[ki].xhaul.capacity_bps = v; };
  if (key == "xhaul.power_factor") return [ki](S& s, double v) { s.kinds[ki].xhaul.power_factor = v; };
  if (key == "xhaul.cost_per_area") return [ki](S& s, double v) { s.kinds[ki].xhaul.cost_per_area = v; };
  throw SweepError("unknown kind parameter in path '" + path + "'");
}

}  // namespace detail

/// Resolves a parameter path against `s`. Accepted forms:
///   kinds.<id>.<field>, kinds[<index>].<field>   (field may be xhaul.<sub>)
///   cache.<field>, traffic.<field>, benchmark_cost, ues.demand_peak_bps, ues.weight
inline ParameterSetter resolve_parameter(const NetworkScenario& s, std::string_view path) {
  using S = NetworkScenario;
  const std::string p(path);
  const auto parts = detail::split_path(path);
  if (parts.empty()) throw SweepError("empty parameter path");

  if (parts[0] == "kinds") {
    if (parts.size() < 3) throw SweepError("parameter path '" + p + "' must name a kind and a field");
    std::size_t ki = 0;
    if (parts[1].starts_with("#")) {
      const double idx = detail::parse_double(std::string_view(parts[1]).substr(1), "kind index");
      if (idx < 0 || std::floor(idx) != idx || idx >= static_cast<double>(s.kinds.size()))
        throw SweepError("kind index out of range in '" + p + "'");
      ki = static_cast<std::size_t>(idx);
    } else {
      auto found = s.find_kind(parts[1]);
      if (!found) throw SweepError("unknown kind '" + parts[1] + "' in '" + p + "'");
      ki = *found;
    }
    return detail::kind_setter(ki, {parts.begin() + 2, parts.end()}, p);
  }
  if (parts.size() == 2 && parts[0] == "cache") {
    if (parts[1] == "catalog_size")
      return [](S& s, double v) { s.cache.catalog_size = detail::to_count(v, "CacheConfig"); };
    if (parts[1] == "zipf_exponent") return [](S& s, double v) { s.cache.zipf_exponent = v; };
    if (parts[1] == "item_size_bits") return [](S& s, double v) { s.cache.item_size_bits = v; };
    if (parts[1] == "power_per_item_w") return [](S& s, double v) { s.cache.power_per_item_w = v; };
  }
  if (parts.size() == 2 && parts[0] == "traffic") {
    if (parts[1] == "peak_to_min_ratio") return [](S& s, double v) { s.traffic.peak_to_min_ratio = v; };
    if (parts[1] == "peak_hour") return [](S& s, double v) { s.traffic.peak_hour = v; };
    if (parts[1] == "samples_per_day")
      return [](S& s, double v) { s.traffic.samples_per_day = detail::to_count(v, "TrafficProfile"); };
  }
  if (parts.size() == 2 && parts[0] == "ues") {
    if (parts[1] == "demand_peak_bps")
      return [](S& s, double v) {
        for (auto& u : s.ues) u.demand_peak_bps = v;
      };
    if (parts[1] == "weight")
      return [](S& s, double v) {
        for (auto& u : s.ues) u.weight = v;
      };
  }
  if (parts.size() == 1 && parts[0] == "benchmark_cost") return [](S& s, double v) { s.benchmark_cost = v; };
  throw SweepError("unresolvable parameter path '" + p + "'");
}

namespace detail {

inline MetricReport evaluate_with(const NetworkScenario& s, const TimeMode& time) {
  const Evaluator ev(s);
  return time.daily ? ev.evaluate_daily() : ev.evaluate(time.hour);
}

}  // namespace detail

/// Evaluates every grid point on its own copy of `base`; rows come out in
/// row-major axis order whatever `threads` is. Invalid points become rows
/// with an error message.
inline SweepResult run_sweep(const NetworkScenario& base, const SweepSpec& spec, unsigned threads = 1) {
  if (spec.first.values.empty()) throw SweepError("first sweep axis has no values");
  if (spec.second && spec.second->values.empty()) throw SweepError("second sweep axis has no values");
  const ParameterSetter set1 = resolve_parameter(base, spec.first.path);
  const ParameterSetter set2 = spec.second ? resolve_parameter(base, spec.second->path) : ParameterSetter{};

  SweepResult result;
  for (double v1 : spec.first.values) {
    if (!spec.second) {
      result.rows.push_back({v1, std::nullopt, std::nullopt, {}});
      continue;
    }
    for (double v2 : spec.second->values) result.rows.push_back({v1, v2, std::nullopt, {}});
  }

  auto compute = [&](SweepRow& row) {
    try {
      NetworkScenario s = base;
      set1(s, row.param1);
      if (row.param2) set2(s, *row.param2);
      check_invariants(s);
      row.report = detail::evaluate_with(s, spec.time);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(result.rows.size())));
  if (threads == 1) {
    for (SweepRow& row : result.rows) compute(row);
    return result;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < result.rows.size(); i = next++) compute(result.rows[i]);
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return result;
}

struct Optimum {
  std::size_t row = 0;
  double param1 = 0.0;
  std::optional<double> param2;
  double value = 0.0;
};

/// Row with the largest metric; ties go to the smallest parameter value
/// (lexicographic over both axes).
inline Optimum argmax(const SweepResult& result, Metric metric) {
  std::optional<Optimum> best;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const SweepRow& row = result.rows[i];
    if (!row.ok()) continue;
    const double v = metric_value(*row.report, metric);
    const Optimum cand{i, row.param1, row.param2, v};
    if (!best || v > best->value) {
      best = cand;
    } else if (v == best->value) {
      const double b2 = best->param2.value_or(0.0);
      const double c2 = cand.param2.value_or(0.0);
      if (cand.param1 < best->param1 || (cand.param1 == best->param1 && c2 < b2)) best = cand;
    }
  }
  if (!best) throw std::runtime_error("argmax: no successful sweep rows");
  return *best;
}

enum class Objective { throughput, total_power, cost_rate };

inline double objective_score(const MetricReport& r, Objective o) {
  switch (o) {
    case Objective::throughput: return r.throughput;
    case Objective::total_power: return -r.total_power;
    case Objective::cost_rate: return -r.cost_rate;
  }
  return 0.0;
}

/// Indices of the non-dominated successful rows, throughput maximized and
/// power/cost minimized, ordered by the first axis value.
inline std::vector<std::size_t> pareto_front(const SweepResult& result, const std::vector<Objective>& objectives) {
  if (objectives.empty()) throw std::invalid_argument("pareto_front needs at least one objective");
  auto dominates = [&](const MetricReport& a, const MetricReport& b) {
    bool strictly = false;
    for (Objective o : objectives) {
      const double sa = objective_score(a, o);
      const double sb = objective_score(b, o);
      if (sa < sb) return false;
      if (sa > sb) strictly = true;
    }
    return strictly;
  };
  // Visit rows best-first in lexicographic objective order: a row can only
  // be dominated by an earlier one, and by transitivity it suffices to test
  // it against the front built so far.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < result.rows.size(); ++i)
    if (result.rows[i].ok()) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    for (Objective o : objectives) {
      const double sa = objective_score(*result.rows[a].report, o);
      const double sb = objective_score(*result.rows[b].report, o);
      if (sa != sb) return sa > sb;
    }
    return false;
  });
  std::vector<std::size_t> front;
  for (std::size_t i : order) {
    const bool dominated = std::any_of(front.begin(), front.end(), [&](std::size_t f) {
      return dominates(*result.rows[f].report, *result.rows[i].report);
    });
    if (!dominated) front.push_back(i);
  }
  std::sort(front.begin(), front.end());
  std::stable_sort(front.begin(), front.end(),
                   [&](std::size_t a, std::size_t b) { return result.rows[a].param1 < result.rows[b].param1; });
  return front;
}

}  // namespace e3
