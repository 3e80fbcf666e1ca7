#pragma once

// Reference computations for small instances. They share no code with the
// production paths in cache.hpp and allocation.hpp and exist to check them.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "e3/cache.hpp"

namespace e3::oracle {

/// Exact expected hit ratio of a uniformly random M-subset cache, by
/// enumerating all C(F, M) subsets.
inline double expected_random_hit_exact(std::size_t cache_size, const Popularity& pop) {
  const std::size_t f = pop.catalog_size();
  if (f > 20) throw std::invalid_argument("oracle instance too large");
  if (cache_size > f) throw std::invalid_argument("cache larger than catalog");
  if (cache_size == 0) return 0.0;
  double total = 0.0;
  std::uint64_t subsets = 0;
  for (std::uint32_t mask = 0; mask < (1u << f); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != cache_size) continue;
    double hit = 0.0;
    for (std::size_t i = 0; i < f; ++i)
      if (mask & (1u << i)) hit += pop.probabilities[i];
    total += hit;
    ++subsets;
  }
  return total / static_cast<double>(subsets);
}

/// Grid search for the allocation whose ascending-sorted rate vector is
/// lexicographically largest (the max-min fair point).
///
/// UE k may take any value in S_k = {0, g, 2g, ...} restricted to [0, d_k],
/// plus d_k itself, with g = step_fraction * C and sum r_k <= C. The search
/// goes one level at a time: scan every grid level for the largest one that
/// all unsettled UEs can reach together (each taking min(level, d_k)),
/// settle the UEs whose demand caps them there, and repeat. Once nobody is
/// capped, the spare budget is below one step per open UE, so the few values
/// each could still take are enumerated and the lexicographically best
/// feasible combination kept. Within one grid step of the continuous optimum.
inline std::vector<double> allocate_bruteforce(std::span<const double> demands, double capacity,
                                               double step_fraction = 1e-3) {
  const std::size_t n = demands.size();
  if (n > 4) throw std::invalid_argument("brute-force oracle limited to 4 UEs");
  if (!(capacity > 0.0)) return std::vector<double>(n, 0.0);

  const double step = step_fraction * capacity;
  const double tol = 1e-12 * capacity;
  const auto steps = static_cast<std::int64_t>(std::llround(1.0 / step_fraction));
  std::vector<double> levels;
  for (std::int64_t v = 0; v <= steps; ++v) levels.push_back(static_cast<double>(v) * step);

  std::vector<double> rates(n, 0.0);
  std::vector<bool> settled(n, false);
  double settled_sum = 0.0;
  std::size_t open = n;
  while (open > 0) {
    double level = 0.0;
    for (double v : levels) {
      double sum = settled_sum;
      for (std::size_t k = 0; k < n; ++k)
        if (!settled[k]) sum += std::min(v, demands[k]);
      if (sum <= capacity + tol) level = v;
    }
    bool capped_any = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (settled[k]) continue;
      rates[k] = std::min(level, demands[k]);
      if (demands[k] <= level) {
        settled[k] = true;
        settled_sum += rates[k];
        --open;
        capped_any = true;
      }
    }
    if (capped_any) continue;

    // Everyone open sits at `level` and the spare budget is under one grid
    // step per open UE: enumerate what each could still take.
    const double spare = capacity - settled_sum - static_cast<double>(open) * level;
    std::vector<std::vector<double>> choices(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (settled[k]) {
        choices[k] = {rates[k]};
        continue;
      }
      const double top = std::min(demands[k], level + spare + tol);
      for (double j = std::floor(level / step + 0.5); j * step <= top; j += 1.0) choices[k].push_back(j * step);
      if (demands[k] <= level + spare + tol) choices[k].push_back(demands[k]);
    }
    std::vector<double> best = rates;
    std::vector<double> best_sorted = rates;
    std::sort(best_sorted.begin(), best_sorted.end());
    std::vector<double> cand(n);
    auto search = [&](auto&& self, std::size_t k, double used) -> void {
      if (used > capacity + tol) return;
      if (k == n) {
        std::vector<double> sorted = cand;
        std::sort(sorted.begin(), sorted.end());
        if (std::lexicographical_compare(best_sorted.begin(), best_sorted.end(), sorted.begin(), sorted.end())) {
          best = cand;
          best_sorted = sorted;
        }
        return;
      }
      for (double v : choices[k]) {
        cand[k] = v;
        self(self, k + 1, used + v);
      }
    };
    search(search, 0, 0.0);
    rates = best;
    break;
  }
  return rates;
}

}  // namespace e3::oracle
