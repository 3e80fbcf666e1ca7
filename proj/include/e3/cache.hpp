#pragma once

// Zipf content popularity and closed-form cache hit ratios.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "e3/model.hpp"

namespace e3 {

/// Request probabilities by popularity rank, most popular first.
struct Popularity {
  std::vector<double> probabilities;

  std::size_t catalog_size() const { return probabilities.size(); }
};

inline Popularity zipf_popularity(std::size_t catalog_size, double exponent) {
  if (catalog_size < 1) throw std::invalid_argument("catalog must hold at least one item");
  if (!(exponent >= 0.0)) throw std::invalid_argument("zipf exponent must be >= 0");
  Popularity pop;
  pop.probabilities.resize(catalog_size);
  for (std::size_t i = 0; i < catalog_size; ++i)
    pop.probabilities[i] = std::pow(static_cast<double>(i + 1), -exponent);
  // Smallest terms first keeps the normalizer accurate for long tails.
  double norm = 0.0;
  for (auto it = pop.probabilities.rbegin(); it != pop.probabilities.rend(); ++it) norm += *it;
  for (double& p : pop.probabilities) p /= norm;
  return pop;
}

/// Expected fraction of requests served from a cache of `cache_size` items.
/// random_fill caches a uniformly random subset; top_popular caches the
/// most requested items.
inline double hit_ratio(CacheStrategy strategy, std::size_t cache_size, const Popularity& pop) {
  const std::size_t f = pop.catalog_size();
  if (cache_size > f) throw std::invalid_argument("cache larger than catalog");
  if (cache_size == f && f > 0) return strategy == CacheStrategy::none ? 0.0 : 1.0;
  switch (strategy) {
    case CacheStrategy::none:
      return 0.0;
    case CacheStrategy::random_fill:
      return static_cast<double>(cache_size) / static_cast<double>(f);
    case CacheStrategy::top_popular: {
      const auto first = pop.probabilities.begin();
      return std::accumulate(first, first + static_cast<std::ptrdiff_t>(cache_size), 0.0);
    }
  }
  return 0.0;
}

/// Hit ratio of every kind in the scenario, indexed like NetworkScenario::kinds.
inline std::vector<double> kind_hit_ratios(const NetworkScenario& s) {
  std::vector<double> out(s.kinds.size(), 0.0);
  if (s.cache.strategy == CacheStrategy::none) return out;
  const Popularity pop = zipf_popularity(s.cache.catalog_size, s.cache.zipf_exponent);
  for (std::size_t i = 0; i < s.kinds.size(); ++i) out[i] = hit_ratio(s.cache.strategy, s.kinds[i].cache_size, pop);
  return out;
}

}  // namespace e3
