#pragma once

// JSON scenario documents: parsing (with seeded layout generators) and
// serialization of a built scenario back to an explicit document.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>

#include "json.hpp"

#include "e3/model.hpp"

namespace e3 {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
  throw ScenarioError(ScenarioError::Category::schema, path.empty() ? "/" : path, what);
}

// Reads the fields of one JSON object, tracking which keys were consumed so
// unknown keys can be reported.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) schema_error(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  std::string at(std::string_view key) const { return path_ + "/" + std::string(key); }

  bool has(std::string_view key) const { return j_.contains(std::string(key)); }

  const json& raw(std::string_view key) {
    const std::string k(key);
    if (!j_.contains(k)) schema_error(at(key), "missing required field '" + k + "'");
    seen_.insert(k);
    return j_.at(k);
  }

  double number(std::string_view key) {
    const json& v = raw(key);
    if (!v.is_number()) schema_error(at(key), "expected a number");
    return v.get<double>();
  }

  double number_or(std::string_view key, double fallback) { return has(key) ? number(key) : fallback; }

  std::int64_t integer(std::string_view key) {
    const json& v = raw(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<std::int64_t>(d);
    }
    schema_error(at(key), "expected an integer");
  }

  std::int64_t integer_or(std::string_view key, std::int64_t fallback) {
    return has(key) ? integer(key) : fallback;
  }

  std::string string(std::string_view key) {
    const json& v = raw(key);
    if (!v.is_string()) schema_error(at(key), "expected a string");
    return v.get<std::string>();
  }

  std::string string_or(std::string_view key, std::string fallback) {
    return has(key) ? string(key) : std::move(fallback);
  }

  Position position(std::string_view key) {
    const json& v = raw(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      schema_error(at(key), "expected [x, y] in meters");
    return {v[0].get<double>(), v[1].get<double>()};
  }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.count(key)) schema_error(at(key), "unknown field '" + key + "'");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

inline Medium parse_medium(const std::string& s, const std::string& path) {
  if (s == "wired") return Medium::wired;
  if (s == "wireless") return Medium::wireless;
  schema_error(path, "medium must be 'wired' or 'wireless'");
}

inline CacheStrategy parse_strategy(const std::string& s, const std::string& path) {
  if (s == "none") return CacheStrategy::none;
  if (s == "random_fill") return CacheStrategy::random_fill;
  if (s == "top_popular") return CacheStrategy::top_popular;
  schema_error(path, "strategy must be one of none, random_fill, top_popular");
}

inline XHaulSolution parse_xhaul(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  XHaulSolution x;
  x.id = r.string("id");
  x.capacity_bps = r.number("capacity_bps");
  x.medium = parse_medium(r.string_or("medium", "wired"), r.at("medium"));
  x.power_factor =
      r.number_or("power_factor", x.medium == Medium::wireless ? kDefaultWirelessPowerFactor : 0.0);
  x.cost_per_area = r.number_or("cost_per_area", 0.0);
  r.finish();
  return x;
}

inline CostBreakdown parse_breakdown(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  CostBreakdown b;
  b.infrastructure = r.number_or("infrastructure", 0.0);
  b.site_installation = r.number_or("site_installation", 0.0);
  b.site_operation = r.number_or("site_operation", 0.0);
  b.optimization_maintenance = r.number_or("optimization_maintenance", 0.0);
  b.cache_placement = r.number_or("cache_placement", 0.0);
  b.xhaul_configuration = r.number_or("xhaul_configuration", 0.0);
  b.content_delivery = r.number_or("content_delivery", 0.0);
  b.inherited_discount = r.number_or("inherited_discount", 0.0);
  r.finish();
  return b;
}

inline BsKind parse_kind(const json& j, const std::string& path, const std::vector<XHaulSolution>& catalog,
                         RadioMode mode) {
  ObjectReader r(j, path);
  BsKind k;
  k.id = r.string("id");
  k.static_power_w = r.number("static_power_w");
  k.max_tx_dynamic_power_w = r.number("max_tx_dynamic_power_w");
  // Each mode only needs its own radio parameter; the other one is inert.
  k.radio_capacity_bps =
      mode == RadioMode::abstract ? r.number("radio_capacity_bps") : r.number_or("radio_capacity_bps", 1.0);
  k.tx_power_w = mode == RadioMode::physical ? r.number("tx_power_w") : r.number_or("tx_power_w", 1.0);
  k.bandwidth_hz = r.number("bandwidth_hz");
  k.coverage_area_m2 = r.number("coverage_area_m2");

  const json& xj = r.raw("xhaul");
  if (xj.is_string()) {
    const auto id = xj.get<std::string>();
    auto it = std::find_if(catalog.begin(), catalog.end(), [&](const XHaulSolution& x) { return x.id == id; });
    if (it == catalog.end())
      throw ScenarioError(ScenarioError::Category::reference, r.at("xhaul"),
                          "unknown xhaul option '" + id + "'");
    k.xhaul = *it;
  } else {
    k.xhaul = parse_xhaul(xj, r.at("xhaul"));
  }

  const std::int64_t cache_size = r.integer_or("cache_size", 0);
  if (cache_size < 0)
    throw ScenarioError(ScenarioError::Category::invariant, "BsKind '" + k.id + "'", "cache_size must be >= 0");
  k.cache_size = static_cast<std::size_t>(cache_size);
  k.cost_per_area = r.number("cost_per_area");
  k.cache_cost_per_item = r.number_or("cache_cost_per_item", 0.0);
  if (r.has("cost_breakdown")) k.cost_breakdown = parse_breakdown(r.raw("cost_breakdown"), r.at("cost_breakdown"));
  r.finish();
  return k;
}

inline std::size_t kind_index(const NetworkScenario& s, const std::string& id, const std::string& path) {
  auto idx = s.find_kind(id);
  if (!idx) throw ScenarioError(ScenarioError::Category::reference, path, "unknown kind_id '" + id + "'");
  return *idx;
}

inline std::string padded_id(std::string_view prefix, std::size_t i, std::size_t count) {
  std::string digits = std::to_string(i);
  const std::size_t width = std::max<std::size_t>(3, std::to_string(count > 0 ? count - 1 : 0).size());
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(prefix) + digits;
}

inline std::size_t positive_count(ObjectReader& r, std::string_view key) {
  const std::int64_t v = r.integer(key);
  if (v < 1) schema_error(r.at(key), "must be >= 1");
  return static_cast<std::size_t>(v);
}

inline void parse_base_stations(const json& j, const std::string& path, NetworkScenario& s) {
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      ObjectReader r(j[i], path + "/" + std::to_string(i));
      BaseStation b;
      b.id = r.string("id");
      b.kind = kind_index(s, r.string("kind"), r.at("kind"));
      b.position = r.position("position");
      r.finish();
      s.base_stations.push_back(std::move(b));
    }
    return;
  }
  ObjectReader outer(j, path);
  ObjectReader r(outer.raw("grid"), outer.at("grid"));
  outer.finish();
  const std::size_t kind = kind_index(s, r.string("kind"), r.at("kind"));
  const std::size_t rows = positive_count(r, "rows");
  const std::size_t cols = positive_count(r, "cols");
  const double spacing = r.number("spacing_m");
  r.finish();
  if (!(spacing > 0.0)) schema_error(r.at("spacing_m"), "must be > 0");
  // Cell centres of a rows x cols lattice covering [0, cols*spacing] x [0, rows*spacing].
  for (std::size_t row = 0; row < rows; ++row)
    for (std::size_t col = 0; col < cols; ++col) {
      const std::size_t i = row * cols + col;
      s.base_stations.push_back({padded_id("bs", i, rows * cols), kind,
                                 {(static_cast<double>(col) + 0.5) * spacing,
                                  (static_cast<double>(row) + 0.5) * spacing}});
    }
}

// Uniform double in [0, 1) from the top 53 bits, independent of the
// standard library's distribution implementations.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline void parse_ues(const json& j, const std::string& path, NetworkScenario& s) {
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      ObjectReader r(j[i], path + "/" + std::to_string(i));
      UserEquipment u;
      u.id = r.string("id");
      u.position = r.position("position");
      u.demand_peak_bps = r.number("demand_peak_bps");
      u.weight = r.number_or("weight", 1.0);
      r.finish();
      s.ues.push_back(std::move(u));
    }
    return;
  }
  ObjectReader outer(j, path);
  ObjectReader r(outer.raw("uniform_random"), outer.at("uniform_random"));
  outer.finish();
  const std::size_t count = positive_count(r, "count");
  const json& area = r.raw("area_m");
  if (!area.is_array() || area.size() != 2 || !area[0].is_number() || !area[1].is_number())
    schema_error(r.at("area_m"), "expected [width, height] in meters");
  const double w = area[0].get<double>();
  const double h = area[1].get<double>();
  if (!(w > 0.0 && h > 0.0)) schema_error(r.at("area_m"), "area dimensions must be > 0");
  const double demand = r.number("demand_peak_bps");
  const double weight = r.number_or("weight", 1.0);
  r.finish();

  std::mt19937_64 rng(s.rng_seed);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = unit_uniform(rng) * w;
    const double y = unit_uniform(rng) * h;
    s.ues.push_back({padded_id("ue", i, count), {x, y}, demand, weight});
  }
}

}  // namespace detail

/// Builds and validates a scenario. `seed_override` replaces the document's
/// seed (used by the E3_SEED environment variable).
inline NetworkScenario scenario_from_json(const json& doc, std::optional<std::uint64_t> seed_override = std::nullopt) {
  using namespace detail;
  ObjectReader r(doc, "");
  NetworkScenario s;

  if (r.has("seed")) {
    const json& v = r.raw("seed");
    if (!v.is_number_integer()) schema_error(r.at("seed"), "expected a non-negative integer");
    if (v.is_number_unsigned()) s.rng_seed = v.get<std::uint64_t>();
    else if (v.get<std::int64_t>() >= 0) s.rng_seed = static_cast<std::uint64_t>(v.get<std::int64_t>());
    else schema_error(r.at("seed"), "expected a non-negative integer");
  }
  if (seed_override) s.rng_seed = *seed_override;

  const std::string mode = r.string_or("radio_mode", "abstract");
  if (mode == "abstract") s.radio_mode = RadioMode::abstract;
  else if (mode == "physical") s.radio_mode = RadioMode::physical;
  else schema_error(r.at("radio_mode"), "radio_mode must be 'abstract' or 'physical'");

  if (r.has("xhaul_options")) {
    const json& xs = r.raw("xhaul_options");
    if (!xs.is_array()) schema_error(r.at("xhaul_options"), "expected an array");
    for (std::size_t i = 0; i < xs.size(); ++i)
      s.xhaul_options.push_back(parse_xhaul(xs[i], r.at("xhaul_options") + "/" + std::to_string(i)));
  }

  const json& kinds = r.raw("kinds");
  if (!kinds.is_array()) schema_error(r.at("kinds"), "expected an array");
  for (std::size_t i = 0; i < kinds.size(); ++i)
    s.kinds.push_back(parse_kind(kinds[i], r.at("kinds") + "/" + std::to_string(i), s.xhaul_options, s.radio_mode));

  {
    ObjectReader c(r.raw("cache"), r.at("cache"));
    const std::int64_t f = c.integer("catalog_size");
    if (f < 1) throw ScenarioError(ScenarioError::Category::invariant, "CacheConfig", "catalog_size must be >= 1");
    s.cache.catalog_size = static_cast<std::size_t>(f);
    s.cache.zipf_exponent = c.number_or("zipf_exponent", 0.0);
    s.cache.item_size_bits = c.number_or("item_size_bits", 8e6);
    s.cache.strategy = parse_strategy(c.string_or("strategy", "none"), c.at("strategy"));
    s.cache.power_per_item_w = c.number_or("power_per_item_w", 0.0);
    c.finish();
  }
  {
    ObjectReader t(r.raw("traffic"), r.at("traffic"));
    s.traffic.peak_to_min_ratio = t.number_or("peak_to_min_ratio", 1.0);
    s.traffic.peak_hour = t.number_or("peak_hour", 0.0);
    const std::int64_t n = t.integer_or("samples_per_day", 24);
    if (n < 1)
      throw ScenarioError(ScenarioError::Category::invariant, "TrafficProfile", "samples_per_day must be >= 1");
    s.traffic.samples_per_day = static_cast<std::size_t>(n);
    t.finish();
  }

  if (r.has("benchmark_cost")) {
    const json& b = r.raw("benchmark_cost");
    if (b.is_string() && b.get<std::string>() == "max-kind") s.benchmark_cost.reset();
    else if (b.is_number()) s.benchmark_cost = b.get<double>();
    else schema_error(r.at("benchmark_cost"), "expected a number or \"max-kind\"");
  }

  parse_base_stations(r.raw("base_stations"), r.at("base_stations"), s);
  parse_ues(r.raw("ues"), r.at("ues"), s);
  r.finish();

  check_invariants(s);
  return s;
}

inline NetworkScenario build_scenario(std::string_view text, std::optional<std::uint64_t> seed_override = std::nullopt) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    detail::schema_error("/", std::string("malformed JSON: ") + e.what());
  }
  return scenario_from_json(doc, seed_override);
}

namespace detail {

inline json xhaul_to_json(const XHaulSolution& x) {
  return {{"id", x.id},
          {"capacity_bps", x.capacity_bps},
          {"medium", std::string(to_string(x.medium))},
          {"power_factor", x.power_factor},
          {"cost_per_area", x.cost_per_area}};
}

}  // namespace detail

/// Explicit document for `s`: generators are expanded into lists, so
/// scenario_from_json(to_json(s)) == s.
inline json to_json(const NetworkScenario& s) {
  json doc;
  doc["radio_mode"] = std::string(to_string(s.radio_mode));
  doc["seed"] = s.rng_seed;
  json options = json::array();
  for (const auto& x : s.xhaul_options) options.push_back(detail::xhaul_to_json(x));
  doc["xhaul_options"] = options;

  json kinds = json::array();
  for (const BsKind& k : s.kinds) {
    json j{{"id", k.id},
           {"static_power_w", k.static_power_w},
           {"max_tx_dynamic_power_w", k.max_tx_dynamic_power_w},
           {"radio_capacity_bps", k.radio_capacity_bps},
           {"tx_power_w", k.tx_power_w},
           {"bandwidth_hz", k.bandwidth_hz},
           {"coverage_area_m2", k.coverage_area_m2},
           {"cache_size", k.cache_size},
           {"cost_per_area", k.cost_per_area},
           {"cache_cost_per_item", k.cache_cost_per_item}};
    auto opt = s.find_xhaul_option(k.xhaul.id);
    if (opt && s.xhaul_options[*opt] == k.xhaul) j["xhaul"] = k.xhaul.id;
    else j["xhaul"] = detail::xhaul_to_json(k.xhaul);
    if (k.cost_breakdown) {
      const auto& b = *k.cost_breakdown;
      j["cost_breakdown"] = {{"infrastructure", b.infrastructure},
                             {"site_installation", b.site_installation},
                             {"site_operation", b.site_operation},
                             {"optimization_maintenance", b.optimization_maintenance},
                             {"cache_placement", b.cache_placement},
                             {"xhaul_configuration", b.xhaul_configuration},
                             {"content_delivery", b.content_delivery},
                             {"inherited_discount", b.inherited_discount}};
    }
    kinds.push_back(std::move(j));
  }
  doc["kinds"] = kinds;

  json bss = json::array();
  for (const auto& b : s.base_stations)
    bss.push_back({{"id", b.id}, {"kind", s.kinds.at(b.kind).id}, {"position", {b.position.x, b.position.y}}});
  doc["base_stations"] = bss;

  json ues = json::array();
  for (const auto& u : s.ues)
    ues.push_back({{"id", u.id},
                   {"position", {u.position.x, u.position.y}},
                   {"demand_peak_bps", u.demand_peak_bps},
                   {"weight", u.weight}});
  doc["ues"] = ues;

  doc["cache"] = {{"catalog_size", s.cache.catalog_size},
                  {"zipf_exponent", s.cache.zipf_exponent},
                  {"item_size_bits", s.cache.item_size_bits},
                  {"strategy", std::string(to_string(s.cache.strategy))},
                  {"power_per_item_w", s.cache.power_per_item_w}};
  doc["traffic"] = {{"peak_to_min_ratio", s.traffic.peak_to_min_ratio},
                    {"peak_hour", s.traffic.peak_hour},
                    {"samples_per_day", s.traffic.samples_per_day}};
  if (s.benchmark_cost) doc["benchmark_cost"] = *s.benchmark_cost;
  else doc["benchmark_cost"] = "max-kind";
  return doc;
}

}  // namespace e3
