#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "geometry.hpp"
#include "rng.hpp"

namespace swclus {

struct BaselineConfig {
  std::uint64_t budget = 10;           // m, stored points
  std::uint64_t window = 0;            // W; used by the expiry variant
  std::uint32_t z = 2;
  Metric metric = Metric::kL2;
  double cost_blowup_threshold = 8.0;  // theta, histogram deletion trigger
  std::uint64_t trigger_buffer = 64;   // recent raw points kept for the trigger
};

// m points drawn uniformly without replacement from the window, each
// weighted |window| / #drawn so the total weight is exact.
std::vector<WeightedPoint> uniform_coreset(std::span<const Point> window,
                                           std::uint64_t m, Rng& rng);

// Histogram-style importance sampler: points enter the summary with
// probability proportional to their distance from it, the closest pair is
// merged when the budget overflows, and the summary is pruned when its cost
// over a recent buffer blows past theta times the running average. Expired
// points are never removed unless `expire` is set, in which case anything
// older than t - W + 1 is discarded on every arrival.
//
// The trigger and merge rules are a concretization chosen to reproduce the
// qualitative failure modes of histogram baselines, not a faithful copy of
// any particular published variant.
class ImportanceSampler {
 public:
  ImportanceSampler(const BaselineConfig& config, bool expire, Rng rng);

  void ingest(const Point& x);
  const std::vector<WeightedPoint>& summary() const { return summary_; }
  std::uint64_t points_seen() const { return t_; }

 private:
  void enforce_budget();
  void maybe_prune();

  BaselineConfig config_;
  bool expire_;
  Rng rng_;

  std::vector<WeightedPoint> summary_;
  std::vector<Point> recent_;
  double total_cost_seen_ = 0.0;
  double running_avg_ = 0.0;
  std::uint64_t trigger_checks_ = 0;
  std::uint64_t t_ = 0;
};

std::vector<WeightedPoint> histogram_coreset(std::span<const Point> stream,
                                             const BaselineConfig& config,
                                             Rng rng);

std::vector<WeightedPoint> importance_expiry_coreset(
    std::span<const Point> stream, const BaselineConfig& config, Rng rng);

}  // namespace swclus
