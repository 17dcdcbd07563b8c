#include "baselines.hpp"

#include <algorithm>
#include <limits>

namespace swclus {

std::vector<WeightedPoint> uniform_coreset(std::span<const Point> window,
                                           std::uint64_t m, Rng& rng) {
  if (window.empty())
    throw std::invalid_argument("uniform_coreset: empty window");
  if (m == 0) throw std::invalid_argument("uniform_coreset: m must be >= 1");

  const std::uint64_t n = window.size();
  const std::uint64_t take = std::min(m, n);
  const double weight =
      static_cast<double>(n) / static_cast<double>(take);

  // Partial Fisher-Yates over an index array.
  std::vector<std::uint64_t> idx(n);
  for (std::uint64_t i = 0; i < n; ++i) idx[i] = i;
  std::vector<WeightedPoint> out;
  out.reserve(take);
  for (std::uint64_t i = 0; i < take; ++i) {
    const std::uint64_t pick = i + rng.uniform_index(n - i);
    std::swap(idx[i], idx[pick]);
    out.push_back(WeightedPoint{window[idx[i]], weight});
  }
  return out;
}

ImportanceSampler::ImportanceSampler(const BaselineConfig& config, bool expire,
                                     Rng rng)
    : config_(config), expire_(expire), rng_(rng) {
  if (config_.budget == 0)
    throw std::invalid_argument("ImportanceSampler: budget must be >= 1");
  if (expire_ && config_.window == 0)
    throw std::invalid_argument("ImportanceSampler: expiry needs a window");
}

void ImportanceSampler::ingest(const Point& x) {
  ++t_;

  if (expire_) {
    const std::uint64_t cutoff =
        t_ >= config_.window ? t_ - config_.window + 1 : 0;
    std::erase_if(summary_, [&](const WeightedPoint& wp) {
      return wp.point.timestamp < cutoff;
    });
  }

  Point stamped = x;
  stamped.timestamp = t_;  // expiry is counted in arrivals

  if (summary_.empty()) {
    summary_.push_back(WeightedPoint{stamped, 1.0});
    return;
  }

  double nearest = std::numeric_limits<double>::infinity();
  std::size_t owner = 0;
  for (std::size_t i = 0; i < summary_.size(); ++i) {
    const double c = dist_pow(x, summary_[i].point, config_.z, config_.metric);
    if (c < nearest) {
      nearest = c;
      owner = i;
    }
  }
  total_cost_seen_ += nearest;

  const double p =
      total_cost_seen_ > 0.0
          ? std::min(1.0, static_cast<double>(config_.budget) * nearest /
                              total_cost_seen_)
          : 0.0;
  if (rng_.bernoulli(p)) {
    summary_.push_back(WeightedPoint{stamped, 1.0});
    enforce_budget();
  } else {
    summary_[owner].weight += 1.0;
  }

  recent_.push_back(stamped);
  if (recent_.size() > config_.trigger_buffer) {
    recent_.erase(recent_.begin());
  }
  if (t_ % config_.trigger_buffer == 0) maybe_prune();
}

void ImportanceSampler::enforce_budget() {
  while (summary_.size() > config_.budget) {
    // Merge the closest pair; the survivor absorbs the weight.
    std::size_t a = 0, b = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < summary_.size(); ++i) {
      for (std::size_t j = i + 1; j < summary_.size(); ++j) {
        const double c = dist_pow(summary_[i].point, summary_[j].point,
                                  config_.z, config_.metric);
        if (c < best) {
          best = c;
          a = i;
          b = j;
        }
      }
    }
    summary_[a].weight += summary_[b].weight;
    summary_.erase(summary_.begin() + static_cast<std::ptrdiff_t>(b));
  }
}

void ImportanceSampler::maybe_prune() {
  if (recent_.size() < config_.trigger_buffer) return;

  CenterSet centers;
  centers.centers.reserve(summary_.size());
  for (const auto& wp : summary_) centers.centers.push_back(wp.point);
  double cost_now = 0.0;
  for (const auto& p : recent_)
    cost_now += min_dist_pow(p, centers, config_.z, config_.metric);

  ++trigger_checks_;
  if (trigger_checks_ > 1 && running_avg_ > 0.0 &&
      cost_now > config_.cost_blowup_threshold * running_avg_) {
    // The summary has drifted away from the live distribution; shed the
    // oldest half and start re-learning.
    std::sort(summary_.begin(), summary_.end(),
              [](const WeightedPoint& l, const WeightedPoint& r) {
                return l.point.timestamp < r.point.timestamp;
              });
    summary_.erase(summary_.begin(),
                   summary_.begin() +
                       static_cast<std::ptrdiff_t>(summary_.size() / 2));
  }
  running_avg_ = running_avg_ == 0.0 ? cost_now
                                     : 0.9 * running_avg_ + 0.1 * cost_now;
}

std::vector<WeightedPoint> histogram_coreset(std::span<const Point> stream,
                                             const BaselineConfig& config,
                                             Rng rng) {
  ImportanceSampler sampler(config, /*expire=*/false, rng);
  for (const Point& p : stream) sampler.ingest(p);
  return sampler.summary();
}

std::vector<WeightedPoint> importance_expiry_coreset(
    std::span<const Point> stream, const BaselineConfig& config, Rng rng) {
  ImportanceSampler sampler(config, /*expire=*/true, rng);
  for (const Point& p : stream) sampler.ingest(p);
  return sampler.summary();
}

}  // namespace swclus
