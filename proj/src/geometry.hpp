#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swclus {

enum class Metric { kL2 = 0, kL1 = 1, kLinf = 2 };

struct Point {
  std::vector<double> coords;
  std::uint64_t id = 0;
  std::uint64_t timestamp = 0;  // arrival index, 1-based

  std::size_t dim() const { return coords.size(); }
};

struct WeightedPoint {
  Point point;
  double weight = 1.0;
};

// Set of candidate centers for a (k,z) cost query. May hold more than k
// entries when produced by a bicriteria routine.
struct CenterSet {
  std::vector<Point> centers;

  bool empty() const { return centers.empty(); }
  std::size_t size() const { return centers.size(); }
};

// Stream-level knobs shared by every component.
//
// `aspect_bound` is a declared upper bound on the ratio of largest to
// smallest pairwise distance; it is configuration, not something measured
// from the data. All log factors are base 2 of `horizon` and `aspect_bound`.
struct StreamParams {
  std::uint32_t dim = 1;
  std::uint32_t k = 1;
  std::uint32_t z = 2;
  double aspect_bound = 1024.0;       // Δ, must be >= 2
  std::uint64_t horizon = 1u << 20;   // N, upper bound on stream length
  double epsilon = 0.5;               // in (0,1)
  double delta = 0.01;                // failure probability, in (0,1)
  Metric metric = Metric::kL2;

  void validate() const;
};

double dist(const Point& a, const Point& b, Metric metric = Metric::kL2);

// dist(a,b)^z without the detour through pow() for the common cases.
double dist_pow(const Point& a, const Point& b, std::uint32_t z,
                Metric metric = Metric::kL2);

double min_dist_pow(const Point& p, const CenterSet& centers, std::uint32_t z,
                    Metric metric = Metric::kL2);

// Index of the closest center plus dist^z to it.
std::pair<std::size_t, double> nearest_center(const Point& p,
                                              const CenterSet& centers,
                                              std::uint32_t z,
                                              Metric metric = Metric::kL2);

// Weighted (k,z)-clustering cost: sum over points of w * min_c dist(p,c)^z.
// Empty point set costs 0; empty center set is an error.
double cost(std::span<const WeightedPoint> points, const CenterSet& centers,
            std::uint32_t z, Metric metric = Metric::kL2);

struct BruteForceResult {
  double cost = 0.0;
  CenterSet centers;
};

// Exact optimum over all center sets of size <= k drawn from the distinct
// input points (discrete-metric oracle). Intended for tests; refuses
// instances with more than `max_distinct` distinct points.
BruteForceResult opt_cost_bruteforce(std::span<const WeightedPoint> points,
                                     std::uint32_t k, std::uint32_t z,
                                     Metric metric = Metric::kL2,
                                     std::size_t max_distinct = 12);

inline double log2_of(double x) { return std::log2(x); }

}  // namespace swclus
