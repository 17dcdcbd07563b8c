#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace swclus {

void StreamParams::validate() const {
  if (dim < 1) throw std::invalid_argument("StreamParams: dim must be >= 1");
  if (k < 1) throw std::invalid_argument("StreamParams: k must be >= 1");
  if (z < 1) throw std::invalid_argument("StreamParams: z must be >= 1");
  if (!(aspect_bound >= 2.0))
    throw std::invalid_argument("StreamParams: aspect_bound must be >= 2");
  if (horizon < 1)
    throw std::invalid_argument("StreamParams: horizon must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("StreamParams: epsilon must be in (0,1)");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("StreamParams: delta must be in (0,1)");
}

namespace {

void check_dims(const Point& a, const Point& b) {
  if (a.coords.size() != b.coords.size())
    throw std::invalid_argument("dist: dimension mismatch (" +
                                std::to_string(a.coords.size()) + " vs " +
                                std::to_string(b.coords.size()) + ")");
}

}  // namespace

double dist(const Point& a, const Point& b, Metric metric) {
  check_dims(a, b);
  const std::size_t d = a.coords.size();
  switch (metric) {
    case Metric::kL2: {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double diff = a.coords[i] - b.coords[i];
        s += diff * diff;
      }
      return std::sqrt(s);
    }
    case Metric::kL1: {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        s += std::abs(a.coords[i] - b.coords[i]);
      return s;
    }
    case Metric::kLinf: {
      double s = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        s = std::max(s, std::abs(a.coords[i] - b.coords[i]));
      return s;
    }
  }
  throw std::invalid_argument("dist: unknown metric");
}

double dist_pow(const Point& a, const Point& b, std::uint32_t z,
                Metric metric) {
  if (metric == Metric::kL2 && z == 2) {
    check_dims(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
      const double diff = a.coords[i] - b.coords[i];
      s += diff * diff;
    }
    return s;
  }
  const double base = dist(a, b, metric);
  if (z == 1) return base;
  if (z == 2) return base * base;
  return std::pow(base, static_cast<double>(z));
}

double min_dist_pow(const Point& p, const CenterSet& centers, std::uint32_t z,
                    Metric metric) {
  return nearest_center(p, centers, z, metric).second;
}

std::pair<std::size_t, double> nearest_center(const Point& p,
                                              const CenterSet& centers,
                                              std::uint32_t z, Metric metric) {
  if (centers.empty())
    throw std::invalid_argument("nearest_center: empty center set");
  std::size_t best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centers.centers.size(); ++i) {
    const double c = dist_pow(p, centers.centers[i], z, metric);
    if (c < best_cost) {
      best_cost = c;
      best = i;
    }
  }
  return {best, best_cost};
}

double cost(std::span<const WeightedPoint> points, const CenterSet& centers,
            std::uint32_t z, Metric metric) {
  if (points.empty()) return 0.0;
  if (centers.empty()) throw std::invalid_argument("cost: empty center set");
  double total = 0.0;
  for (const auto& wp : points)
    total += wp.weight * min_dist_pow(wp.point, centers, z, metric);
  return total;
}

BruteForceResult opt_cost_bruteforce(std::span<const WeightedPoint> points,
                                     std::uint32_t k, std::uint32_t z,
                                     Metric metric, std::size_t max_distinct) {
  if (points.empty()) return {0.0, CenterSet{}};
  if (k < 1) throw std::invalid_argument("opt_cost_bruteforce: k must be >= 1");

  std::vector<Point> distinct;
  for (const auto& wp : points) {
    bool seen = false;
    for (const auto& q : distinct) {
      if (q.coords == wp.point.coords) {
        seen = true;
        break;
      }
    }
    if (!seen) distinct.push_back(wp.point);
  }
  if (distinct.size() > max_distinct)
    throw std::invalid_argument(
        "opt_cost_bruteforce: " + std::to_string(distinct.size()) +
        " distinct points exceeds cap " + std::to_string(max_distinct));

  // Adding a center never increases the cost, so the best set of size
  // exactly min(k, #distinct) is also the best over all sizes <= k.
  const std::size_t pick = std::min<std::size_t>(k, distinct.size());

  std::vector<std::size_t> choice(pick);
  for (std::size_t i = 0; i < pick; ++i) choice[i] = i;

  BruteForceResult best;
  best.cost = std::numeric_limits<double>::infinity();

  const std::size_t n = distinct.size();
  while (true) {
    CenterSet cand;
    cand.centers.reserve(pick);
    for (std::size_t idx : choice) cand.centers.push_back(distinct[idx]);
    const double c = cost(points, cand, z, metric);
    if (c < best.cost) {
      best.cost = c;
      best.centers = std::move(cand);
    }
    // Next combination in lexicographic order.
    std::size_t i = pick;
    while (i > 0) {
      --i;
      if (choice[i] != i + n - pick) {
        ++choice[i];
        for (std::size_t j = i + 1; j < pick; ++j) choice[j] = choice[j - 1] + 1;
        break;
      }
      if (i == 0) return best;
    }
    if (pick == 0) return best;
  }
}

}  // namespace swclus
