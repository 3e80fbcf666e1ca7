#pragma once

// Domain types for a heterogeneous RAN deployment: base-station kinds,
// X-Haul options, placed base stations, users, cache and traffic settings.
// Everything here is a plain value type; a NetworkScenario is never mutated
// after check_invariants() has accepted it.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace e3 {

/// Raised for malformed or inconsistent scenario descriptions.
class ScenarioError : public std::runtime_error {
 public:
  enum class Category { schema, invariant, reference };

  ScenarioError(Category category, std::string where, const std::string& what)
      : std::runtime_error(prefix(category) + " at " + where + ": " + what),
        category_(category),
        where_(std::move(where)) {}

  Category category() const noexcept { return category_; }
  /// JSON path or entity name the error refers to.
  const std::string& where() const noexcept { return where_; }

 private:
  static std::string prefix(Category c) {
    switch (c) {
      case Category::schema: return "schema violation";
      case Category::invariant: return "invariant violation";
      case Category::reference: return "dangling reference";
    }
    return "error";
  }

  Category category_;
  std::string where_;
};

enum class Medium { wired, wireless };
enum class CacheStrategy { none, random_fill, top_popular };
enum class RadioMode { abstract, physical };

inline constexpr double kDefaultWirelessPowerFactor = 3.0;

struct XHaulSolution {
  std::string id;
  double capacity_bps = 0.0;
  Medium medium = Medium::wired;
  /// Dynamic-power multiple of the transceiver part.
  double power_factor = 0.0;
  /// Per-area cost this option adds to every kind that uses it.
  double cost_per_area = 0.0;

  bool operator==(const XHaulSolution&) const = default;
};

/// Per-area yearly cost split. Only the capital items (infrastructure and
/// site installation) are reduced by inherited_discount.
struct CostBreakdown {
  double infrastructure = 0.0;
  double site_installation = 0.0;
  double site_operation = 0.0;
  double optimization_maintenance = 0.0;
  double cache_placement = 0.0;
  double xhaul_configuration = 0.0;
  double content_delivery = 0.0;
  double inherited_discount = 0.0;

  double capital() const { return infrastructure + site_installation; }
  double operational() const {
    return site_operation + optimization_maintenance + cache_placement + xhaul_configuration +
           content_delivery;
  }
  double sum() const { return capital() + operational(); }
  double discounted_sum() const { return capital() * (1.0 - inherited_discount) + operational(); }

  bool operator==(const CostBreakdown&) const = default;
};

struct BsKind {
  std::string id;
  double static_power_w = 0.0;
  double max_tx_dynamic_power_w = 0.0;
  double radio_capacity_bps = 0.0;  // abstract radio mode only
  double tx_power_w = 0.0;          // physical radio mode only
  double bandwidth_hz = 0.0;
  double coverage_area_m2 = 0.0;
  XHaulSolution xhaul;
  std::size_t cache_size = 0;
  /// C~ for this kind, excluding the X-Haul option and per-item cache cost.
  double cost_per_area = 0.0;
  double cache_cost_per_item = 0.0;
  std::optional<CostBreakdown> cost_breakdown;

  bool operator==(const BsKind&) const = default;
};

struct Position {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Position&) const = default;
};

inline double distance(const Position& a, const Position& b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct BaseStation {
  std::string id;
  std::size_t kind = 0;  // index into NetworkScenario::kinds
  Position position;

  bool operator==(const BaseStation&) const = default;
};

struct UserEquipment {
  std::string id;
  Position position;
  double demand_peak_bps = 0.0;
  double weight = 1.0;

  bool operator==(const UserEquipment&) const = default;
};

struct TrafficProfile {
  double peak_to_min_ratio = 1.0;
  double peak_hour = 0.0;
  std::size_t samples_per_day = 24;

  bool operator==(const TrafficProfile&) const = default;
};

struct CacheConfig {
  std::size_t catalog_size = 1;
  double zipf_exponent = 0.0;
  double item_size_bits = 1.0;
  CacheStrategy strategy = CacheStrategy::none;
  double power_per_item_w = 0.0;

  bool operator==(const CacheConfig&) const = default;
};

struct NetworkScenario {
  std::vector<BsKind> kinds;
  std::vector<XHaulSolution> xhaul_options;
  std::vector<BaseStation> base_stations;
  std::vector<UserEquipment> ues;
  CacheConfig cache;
  TrafficProfile traffic;
  /// C_0; empty means "max-kind" (the costliest kind of this scenario).
  std::optional<double> benchmark_cost;
  RadioMode radio_mode = RadioMode::abstract;
  std::uint64_t rng_seed = 0;

  const BsKind& kind_of(const BaseStation& bs) const { return kinds.at(bs.kind); }

  std::optional<std::size_t> find_kind(std::string_view id) const {
    for (std::size_t i = 0; i < kinds.size(); ++i)
      if (kinds[i].id == id) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> find_xhaul_option(std::string_view id) const {
    for (std::size_t i = 0; i < xhaul_options.size(); ++i)
      if (xhaul_options[i].id == id) return i;
    return std::nullopt;
  }

  bool operator==(const NetworkScenario&) const = default;
};

inline std::string_view to_string(Medium m) { return m == Medium::wired ? "wired" : "wireless"; }

inline std::string_view to_string(CacheStrategy s) {
  switch (s) {
    case CacheStrategy::none: return "none";
    case CacheStrategy::random_fill: return "random_fill";
    case CacheStrategy::top_popular: return "top_popular";
  }
  return "none";
}

inline std::string_view to_string(RadioMode m) { return m == RadioMode::abstract ? "abstract" : "physical"; }

namespace detail {

inline void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) throw ScenarioError(ScenarioError::Category::invariant, where, what);
}

inline bool positive(double v) { return std::isfinite(v) && v > 0.0; }
inline bool non_negative(double v) { return std::isfinite(v) && v >= 0.0; }

inline void check_xhaul(const XHaulSolution& x, const std::string& where) {
  require(!x.id.empty(), where, "id must not be empty");
  require(positive(x.capacity_bps), where, "capacity_bps must be > 0");
  require(non_negative(x.power_factor), where, "power_factor must be >= 0");
  require(non_negative(x.cost_per_area), where, "cost_per_area must be >= 0");
}

inline void check_breakdown(const CostBreakdown& b, double cost_per_area, const std::string& where) {
  for (double v : {b.infrastructure, b.site_installation, b.site_operation, b.optimization_maintenance,
                   b.cache_placement, b.xhaul_configuration, b.content_delivery})
    require(non_negative(v), where, "cost_breakdown components must be >= 0");
  require(std::isfinite(b.inherited_discount) && b.inherited_discount >= 0.0 && b.inherited_discount <= 1.0,
          where, "inherited_discount must lie in [0, 1]");
  require(std::abs(b.sum() - cost_per_area) <= 1e-9 * std::abs(cost_per_area), where,
          "cost_breakdown components must sum to cost_per_area");
}

}  // namespace detail

/// Throws ScenarioError naming the first offending entity.
inline void check_invariants(const NetworkScenario& s) {
  using detail::non_negative;
  using detail::positive;
  using detail::require;

  require(!s.kinds.empty(), "kinds", "at least one BsKind is required");
  for (std::size_t i = 0; i < s.kinds.size(); ++i) {
    const BsKind& k = s.kinds[i];
    const std::string where = "BsKind '" + k.id + "'";
    require(!k.id.empty(), "kinds[" + std::to_string(i) + "]", "id must not be empty");
    for (std::size_t j = 0; j < i; ++j) require(s.kinds[j].id != k.id, where, "duplicate kind id");
    require(positive(k.static_power_w), where, "static_power_w must be > 0");
    require(positive(k.max_tx_dynamic_power_w), where, "max_tx_dynamic_power_w must be > 0");
    require(positive(k.radio_capacity_bps), where, "radio_capacity_bps must be > 0");
    require(positive(k.tx_power_w), where, "tx_power_w must be > 0");
    require(positive(k.bandwidth_hz), where, "bandwidth_hz must be > 0");
    require(positive(k.coverage_area_m2), where, "coverage_area_m2 must be > 0");
    require(positive(k.cost_per_area), where, "cost_per_area must be > 0");
    require(non_negative(k.cache_cost_per_item), where, "cache_cost_per_item must be >= 0");
    require(k.cache_size <= s.cache.catalog_size, where, "cache larger than catalog");
    detail::check_xhaul(k.xhaul, where + " xhaul");
    if (k.cost_breakdown) detail::check_breakdown(*k.cost_breakdown, k.cost_per_area, where);
  }
  for (std::size_t i = 0; i < s.xhaul_options.size(); ++i) {
    const auto& x = s.xhaul_options[i];
    const std::string where = "XHaulSolution '" + x.id + "'";
    detail::check_xhaul(x, where);
    for (std::size_t j = 0; j < i; ++j) require(s.xhaul_options[j].id != x.id, where, "duplicate xhaul id");
  }

  require(!s.base_stations.empty(), "base_stations", "at least one base station is required");
  for (std::size_t i = 0; i < s.base_stations.size(); ++i) {
    const BaseStation& b = s.base_stations[i];
    const std::string where = "BaseStation '" + b.id + "'";
    require(!b.id.empty(), "base_stations[" + std::to_string(i) + "]", "id must not be empty");
    for (std::size_t j = 0; j < i; ++j) require(s.base_stations[j].id != b.id, where, "duplicate bs id");
    if (b.kind >= s.kinds.size())
      throw ScenarioError(ScenarioError::Category::reference, where, "kind index out of range");
    require(std::isfinite(b.position.x) && std::isfinite(b.position.y), where, "position must be finite");
  }

  require(!s.ues.empty(), "ues", "at least one user equipment is required");
  for (std::size_t i = 0; i < s.ues.size(); ++i) {
    const UserEquipment& u = s.ues[i];
    const std::string where = "UserEquipment '" + u.id + "'";
    require(!u.id.empty(), "ues[" + std::to_string(i) + "]", "id must not be empty");
    for (std::size_t j = 0; j < i; ++j) require(s.ues[j].id != u.id, where, "duplicate ue id");
    require(std::isfinite(u.position.x) && std::isfinite(u.position.y), where, "position must be finite");
    require(positive(u.demand_peak_bps), where, "demand_peak_bps must be > 0");
    require(positive(u.weight), where, "weight must be > 0");
  }

  const auto& t = s.traffic;
  require(std::isfinite(t.peak_to_min_ratio) && t.peak_to_min_ratio >= 1.0, "TrafficProfile",
          "peak_to_min_ratio must be >= 1");
  require(std::isfinite(t.peak_hour) && t.peak_hour >= 0.0 && t.peak_hour < 24.0, "TrafficProfile",
          "peak_hour must lie in [0, 24)");
  require(t.samples_per_day >= 1, "TrafficProfile", "samples_per_day must be >= 1");

  const auto& c = s.cache;
  require(c.catalog_size >= 1, "CacheConfig", "catalog_size must be >= 1");
  require(non_negative(c.zipf_exponent), "CacheConfig", "zipf_exponent must be >= 0");
  require(positive(c.item_size_bits), "CacheConfig", "item_size_bits must be > 0");
  require(non_negative(c.power_per_item_w), "CacheConfig", "power_per_item_w must be >= 0");

  if (s.benchmark_cost) require(positive(*s.benchmark_cost), "benchmark_cost", "benchmark_cost must be > 0");
}

}  // namespace e3
