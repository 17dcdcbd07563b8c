#pragma once

#include <cstdint>
#include <span>

#include "geometry.hpp"
#include "rng.hpp"

namespace swclus {

struct SolveConfig {
  std::uint32_t k = 1;
  std::uint32_t z = 2;  // 2: weighted-mean update; 1: weighted-medoid update
  std::uint32_t iterations = 10;
  std::uint32_t restarts = 1;
  Metric metric = Metric::kL2;
  std::uint64_t seed = 1;
};

struct SolveResult {
  CenterSet centers;
  double cost = 0.0;
  bool duplicated_centers = false;  // fewer distinct points than k
};

// Weighted k-means++ seeding: first center by weight, the rest by
// weight * dist^z to the chosen set.
SolveResult kmeanspp_init(std::span<const WeightedPoint> points,
                          std::uint32_t k, std::uint32_t z, Rng& rng,
                          Metric metric = Metric::kL2);

// Weighted Lloyd iterations from the given centers. For z=2 cluster centers
// move to the weighted mean; for z=1 to the weighted medoid among members.
// Empty clusters are reseeded from the point with the largest weighted cost.
SolveResult lloyd_iterate(std::span<const WeightedPoint> points,
                          const CenterSet& centers, const SolveConfig& config);

// Best of `restarts` seeded init+iterate runs.
SolveResult weighted_kmeans(std::span<const WeightedPoint> points,
                            const SolveConfig& config);

}  // namespace swclus
