#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swclus {

namespace {

// Index drawn proportionally to the (nonnegative) mass vector.
std::size_t draw_index(std::span<const double> mass, double total, Rng& rng) {
  const double r = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    acc += mass[i];
    if (r < acc) return i;
  }
  // Round-off may push r past the last positive entry.
  for (std::size_t i = mass.size(); i > 0; --i)
    if (mass[i - 1] > 0.0) return i - 1;
  return 0;
}

}  // namespace

SolveResult kmeanspp_init(std::span<const WeightedPoint> points,
                          std::uint32_t k, std::uint32_t z, Rng& rng,
                          Metric metric) {
  if (points.empty())
    throw std::invalid_argument("kmeanspp_init: empty input");
  if (k < 1) throw std::invalid_argument("kmeanspp_init: k must be >= 1");

  std::vector<double> weights(points.size());
  double total_weight = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].weight > 0.0))
      throw std::invalid_argument("kmeanspp_init: weights must be positive");
    weights[i] = points[i].weight;
    total_weight += weights[i];
  }

  SolveResult result;
  const std::size_t first = draw_index(weights, total_weight, rng);
  result.centers.centers.push_back(points[first].point);

  std::vector<double> best(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    best[i] = dist_pow(points[i].point, points[first].point, z, metric);

  std::vector<double> mass(points.size());
  while (result.centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      mass[i] = weights[i] * best[i];
      total += mass[i];
    }
    std::size_t chosen;
    if (total > 0.0) {
      chosen = draw_index(mass, total, rng);
    } else {
      // Every point coincides with a chosen center; duplicates are the only
      // way to fill the remaining slots.
      chosen = draw_index(weights, total_weight, rng);
      result.duplicated_centers = true;
    }
    result.centers.centers.push_back(points[chosen].point);
    for (std::size_t i = 0; i < points.size(); ++i) {
      best[i] = std::min(
          best[i], dist_pow(points[i].point, points[chosen].point, z, metric));
    }
  }

  result.cost = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    result.cost += weights[i] * best[i];
  return result;
}

SolveResult lloyd_iterate(std::span<const WeightedPoint> points,
                          const CenterSet& centers, const SolveConfig& config) {
  if (centers.empty())
    throw std::invalid_argument("lloyd_iterate: empty center set");
  if (config.iterations < 1)
    throw std::invalid_argument("lloyd_iterate: iterations must be >= 1");

  SolveResult result;
  result.centers = centers;
  const std::size_t k = centers.size();
  std::vector<std::size_t> owner(points.size());

  for (std::uint32_t it = 0; it < config.iterations; ++it) {
    // Assign.
    for (std::size_t i = 0; i < points.size(); ++i)
      owner[i] =
          nearest_center(points[i].point, result.centers, config.z, config.metric)
              .first;

    // Update.
    if (config.z == 2 && config.metric == Metric::kL2) {
      const std::size_t d = points.front().point.dim();
      std::vector<double> sums(k * d, 0.0);
      std::vector<double> mass(k, 0.0);
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double w = points[i].weight;
        mass[owner[i]] += w;
        for (std::size_t c = 0; c < d; ++c)
          sums[owner[i] * d + c] += w * points[i].point.coords[c];
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (mass[j] <= 0.0) continue;  // reseeded below
        for (std::size_t c = 0; c < d; ++c)
          result.centers.centers[j].coords[c] = sums[j * d + c] / mass[j];
      }
      // Reseed empty clusters from the worst-served point.
      for (std::size_t j = 0; j < k; ++j) {
        if (mass[j] > 0.0) continue;
        double worst = -1.0;
        std::size_t pick = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
          const double c =
              points[i].weight * min_dist_pow(points[i].point, result.centers,
                                              config.z, config.metric);
          if (c > worst) {
            worst = c;
            pick = i;
          }
        }
        result.centers.centers[j] = points[pick].point;
      }
    } else {
      // Medoid update: the member minimizing the weighted in-cluster cost.
      std::vector<std::vector<std::size_t>> members(k);
      for (std::size_t i = 0; i < points.size(); ++i)
        members[owner[i]].push_back(i);
      for (std::size_t j = 0; j < k; ++j) {
        if (members[j].empty()) {
          double worst = -1.0;
          std::size_t pick = 0;
          for (std::size_t i = 0; i < points.size(); ++i) {
            const double c =
                points[i].weight * min_dist_pow(points[i].point, result.centers,
                                                config.z, config.metric);
            if (c > worst) {
              worst = c;
              pick = i;
            }
          }
          result.centers.centers[j] = points[pick].point;
          continue;
        }
        double best_cost = std::numeric_limits<double>::infinity();
        std::size_t best_medoid = members[j].front();
        for (std::size_t cand : members[j]) {
          double c = 0.0;
          for (std::size_t i : members[j]) {
            c += points[i].weight * dist_pow(points[i].point,
                                             points[cand].point, config.z,
                                             config.metric);
            if (c >= best_cost) break;
          }
          if (c < best_cost) {
            best_cost = c;
            best_medoid = cand;
          }
        }
        result.centers.centers[j] = points[best_medoid].point;
      }
    }
  }

  result.cost = cost(points, result.centers, config.z, config.metric);
  return result;
}

SolveResult weighted_kmeans(std::span<const WeightedPoint> points,
                            const SolveConfig& config) {
  if (points.empty())
    throw std::invalid_argument("weighted_kmeans: empty input");
  if (config.restarts < 1)
    throw std::invalid_argument("weighted_kmeans: restarts must be >= 1");

  Rng master(config.seed);
  SolveResult best;
  best.cost = std::numeric_limits<double>::infinity();
  for (std::uint32_t r = 0; r < config.restarts; ++r) {
    Rng rng = master.fork(r + 1);
    SolveResult seeded =
        kmeanspp_init(points, config.k, config.z, rng, config.metric);
    SolveResult iterated = lloyd_iterate(points, seeded.centers, config);
    iterated.duplicated_centers = seeded.duplicated_centers;
    if (iterated.cost < best.cost) best = std::move(iterated);
  }
  return best;
}

}  // namespace swclus
