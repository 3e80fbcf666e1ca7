#pragma once

// Fixed-schema CSV output for metric reports and sweep results.

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "e3/metrics.hpp"
#include "e3/sweep.hpp"

namespace e3::csv {

inline constexpr std::string_view kHeader =
    "param1,param2,throughput_bps,weighted_throughput_bps,total_power_w,weighted_power_w,"
    "se_bps_per_hz,ee_bit_per_joule,ce_bit_per_cost,e3_bit_per_joule,error";

/// 12 significant digits, shortest form.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// RFC 4180 field quoting.
inline std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Header comments carrying the run manifest, one `# key: value` per line.
inline void write_manifest(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& manifest) {
  for (const auto& [key, value] : manifest) {
    std::string flat = value;
    for (char& c : flat)
      if (c == '\n' || c == '\r') c = ' ';
    os << "# " << key << ": " << flat << '\n';
  }
}

inline void write_row(std::ostream& os, std::optional<double> p1, std::optional<double> p2,
                      const std::optional<MetricReport>& r, std::string_view error) {
  os << (p1 ? format_number(*p1) : "") << ',' << (p2 ? format_number(*p2) : "") << ',';
  if (r) {
    for (double v : {r->throughput, r->weighted_throughput, r->total_power, r->weighted_power, r->se, r->ee, r->ce,
                     r->e3})
      os << format_number(v) << ',';
  } else {
    os << ",,,,,,,,";
  }
  os << quote(error) << '\n';
}

inline void write_sweep(std::ostream& os, const SweepResult& result) {
  os << kHeader << '\n';
  for (const SweepRow& row : result.rows) write_row(os, row.param1, row.param2, row.report, row.error);
}

inline void write_report(std::ostream& os, const MetricReport& r) {
  os << kHeader << '\n';
  write_row(os, std::nullopt, std::nullopt, r, "");
}

}  // namespace e3::csv
