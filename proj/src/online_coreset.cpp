#include "online_coreset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>

#include "errors.hpp"

namespace swclus {

std::int32_t ring_index(double cost_z) {
  if (!(cost_z > 0.0))
    throw std::invalid_argument("ring_index: cost must be positive");
  return std::ilogb(cost_z);
}

std::uint32_t group_index(std::uint64_t ring_position) {
  if (ring_position == 0)
    throw std::invalid_argument("group_index: positions are 1-based");
  if (ring_position == 1) return 0;
  return static_cast<std::uint32_t>(std::bit_width(ring_position - 1));
}

double CoresetConfig::resolved_centroid_log() const {
  if (centroid_log > 0.0) return centroid_log;
  return stream.dim *
         std::log2(2.0 * stream.aspect_bound *
                   static_cast<double>(stream.horizon) / stream.epsilon);
}

double CoresetConfig::resolved_alpha() const {
  if (alpha > 0.0) return alpha;
  return std::pow(2.0, stream.z + 7.0);
}

double CoresetConfig::resolved_beta() const {
  if (beta > 0.0) return beta;
  return meyerson.c_beta * std::pow(2.0, 2.0 * stream.z) *
         std::max(1.0, std::log2(static_cast<double>(stream.horizon))) *
         std::max(1.0, std::log2(stream.aspect_bound));
}

double CoresetConfig::resolved_p_floor() const {
  if (p_floor > 0.0) return p_floor;
  const double n = static_cast<double>(stream.horizon);
  return 1.0 / (n * n);
}

double gamma_value(const CoresetConfig& config) {
  const double eps = config.stream.epsilon;
  const double z = static_cast<double>(config.stream.z);
  const double a = config.resolved_alpha();
  const double b = config.resolved_beta();
  const double log_inv_eps = std::log2(1.0 / eps);
  const double loglog = std::log2(std::max(1.0, log_inv_eps));
  const double log_n = std::log2(static_cast<double>(config.stream.horizon));
  const double head = config.c_gamma * std::max(a * a, std::pow(a, z)) * b /
                      std::min(eps * eps, std::pow(eps, z));
  const double inner =
      config.stream.k * config.resolved_centroid_log() + loglog + log_n;
  return head * log_inv_eps * log_inv_eps * inner * log_inv_eps * log_inv_eps;
}

OnlineCoreset::OnlineCoreset(const CoresetConfig& config, Rng rng)
    : config_(config), rng_(rng.fork(0xc0e5e7)) {
  config_.stream.validate();
  gamma_ = gamma_value(config_);
  fixed_rate_ =
      4.0 * gamma_ * std::log2(static_cast<double>(config_.stream.horizon));
  sketch_.emplace(config_.stream, config_.meyerson, rng.fork(0xa551fe));
}

double OnlineCoreset::current_rate() const {
  if (config_.exact_mode) return std::numeric_limits<double>::infinity();
  if (config_.target_samples > 0) {
    const double keys = static_cast<double>(std::max<std::size_t>(groups_.size(), 1));
    return std::max(1.0, static_cast<double>(config_.target_samples) / keys);
  }
  return fixed_rate_;
}

void OnlineCoreset::note_real_ts(std::uint64_t real_ts) {
  if (!saw_point_) {
    saw_point_ = true;
    last_real_ts_ = real_ts;
    return;
  }
  if (real_ts == last_real_ts_)
    throw std::invalid_argument("OnlineCoreset: duplicate timestamp");
  const int dir = real_ts > last_real_ts_ ? 1 : -1;
  if (ts_direction_ == 0) {
    ts_direction_ = dir;
  } else if (dir != ts_direction_) {
    throw std::invalid_argument(
        "OnlineCoreset: timestamps must be strictly monotone");
  }
  last_real_ts_ = real_ts;
}

std::optional<Sample> OnlineCoreset::ingest(const Point& x) {
  return ingest_weighted(WeightedPoint{x, 1.0});
}

std::optional<Sample> OnlineCoreset::ingest_weighted(const WeightedPoint& wp) {
  const AssignmentRecord record =
      sketch_->ingest_weighted(wp.point, wp.weight);
  return ingest_assigned(wp, record, sketch_->center(record.center_id));
}

std::optional<Sample> OnlineCoreset::ingest_assigned(
    const WeightedPoint& wp, const AssignmentRecord& assignment,
    const Point& center_site) {
  if (!(wp.weight > 0.0))
    throw std::invalid_argument("OnlineCoreset: weight must be positive");
  note_real_ts(wp.point.timestamp);
  ++t_;

  auto& center_stats = per_center_[assignment.center_id];
  center_stats.count += 1;
  center_stats.cost += wp.weight * assignment.cost_z;

  if (assignment.cost_z == 0.0) {
    // Exact representation: the point sits on its center, so the center
    // coordinates carry its mass with no cost error.
    (void)center_site;
    zero_entries_.push_back(ZeroEntry{assignment.center_id, t_, wp.point.id,
                                      wp.point.timestamp, wp.weight});
    if (config_.record_decisions) {
      decisions_.push_back(Decision{wp.point.id, assignment.center_id, 0, 0, 0,
                                    1.0, 0.0, wp.weight, true, false});
    }
    return std::nullopt;
  }

  const std::int32_t j = ring_index(assignment.cost_z);
  auto& ring = rings_[{assignment.center_id, j}];
  ring.count += 1;
  ring.cost += wp.weight * assignment.cost_z;
  const std::uint32_t b = group_index(ring.count);

  auto& group = groups_[{j, b}];
  group.count += 1;
  group.cost += wp.weight * assignment.cost_z;
  const std::uint64_t r_t = group.count;

  double p = 1.0;
  double rate = std::numeric_limits<double>::infinity();
  if (!config_.exact_mode) {
    rate = current_rate();
    p = std::min(1.0, std::max(rate / static_cast<double>(r_t),
                               config_.resolved_p_floor()));
  }

  const bool take = rng_.bernoulli(p);
  if (config_.record_decisions) {
    decisions_.push_back(Decision{wp.point.id, assignment.center_id, j, b, r_t,
                                  p, assignment.cost_z, wp.weight, false,
                                  take});
  }
  if (!take) return std::nullopt;

  Sample sample;
  sample.wp = WeightedPoint{wp.point, wp.weight / p};
  sample.ring = RingKey{assignment.center_id, j, false};
  sample.group = GroupKey{j, b};
  sample.p = p;
  sample.rate = rate;
  sample.r_t = r_t;
  sample.internal_t = t_;
  sample.carried_weight = wp.weight;
  sample.cost_z = assignment.cost_z;
  samples_.push_back(sample);
  sampled_per_group_[{j, b}] += 1;
  return sample;
}

std::vector<WeightedPoint> OnlineCoreset::extract(std::uint64_t t,
                                                  ExtractMode mode) const {
  if (t > t_) throw std::out_of_range("OnlineCoreset::extract: t out of range");

  std::vector<WeightedPoint> out;
  if (mode == ExtractMode::kDefault) {
    for (const auto& s : samples_) {
      if (s.internal_t > t) break;  // samples are ordered by arrival
      out.push_back(s.wp);
    }
    for (const auto& zc : zero_entries_) {
      if (zc.internal_t > t) break;
      Point p = sketch_.has_value() ? sketch_->center(zc.center_id) : Point{};
      p.id = zc.point_id;
      p.timestamp = zc.real_ts;
      out.push_back(WeightedPoint{std::move(p), zc.weight});
    }
    return out;
  }

  if (t != t_)
    throw std::invalid_argument(
        "substitute_centers extraction uses current statistics and is only "
        "defined for the full prefix");

  // Thm-style substitution: drop samples from inner rings, minimum-cost
  // ring groups, and minimum outer groups; their population is re-attached
  // to the bicriteria centers by exact counts.
  const double eps = config_.stream.epsilon;
  const double z = static_cast<double>(config_.stream.z);
  const double beta_k = config_.resolved_beta() * config_.stream.k;

  const double inner_factor = std::pow(eps / z, 2.0 * z);
  const double outer_factor = std::pow(z / eps, 2.0 * z);
  const double min_group_factor = 2.0 * std::pow(eps / (4.0 * z), z) / beta_k;

  // Per-ring-level totals and per-center outer-ring totals.
  std::map<std::int32_t, double> level_cost;
  std::map<std::uint64_t, double> outer_cost;
  double outer_total = 0.0;
  std::map<std::uint64_t, double> kappa;
  for (const auto& [cid, stats] : per_center_) {
    kappa[cid] = stats.count > 0 ? stats.cost / static_cast<double>(stats.count)
                                 : 0.0;
  }
  for (const auto& [key, rc] : rings_) {
    level_cost[key.second] += rc.cost;
    const double kap = kappa[key.first];
    if (kap > 0.0 && std::ldexp(1.0, key.second) >= outer_factor * kap) {
      outer_cost[key.first] += rc.cost;
      outer_total += rc.cost;
    }
  }

  auto removed = [&](std::uint64_t center_id, std::int32_t j,
                     double cost_z) {
    const double kap = kappa[center_id];
    if (kap <= 0.0) return false;
    if (cost_z <= inner_factor * kap) return true;  // inner ring
    auto it = rings_.find({center_id, j});
    const double ring_cost = it == rings_.end() ? 0.0 : it->second.cost;
    if (ring_cost < min_group_factor * level_cost[j]) return true;  // G_{j,min}
    if (cost_z >= outer_factor * kap) {
      auto oc = outer_cost.find(center_id);
      const double c = oc == outer_cost.end() ? 0.0 : oc->second;
      if (c < 2.0 * std::pow(eps / (4.0 * z), z) / beta_k * outer_total)
        return true;  // G^O_min
    }
    return false;
  };

  std::map<std::uint64_t, double> center_weight;
  for (const auto& s : samples_) {
    if (removed(s.ring.center_id, s.ring.j, s.cost_z)) {
      center_weight[s.ring.center_id] += s.carried_weight;
    } else {
      out.push_back(s.wp);
    }
  }
  for (const auto& zc : zero_entries_) center_weight[zc.center_id] += zc.weight;
  for (const auto& [cid, w] : center_weight) {
    Point p = sketch_->center(cid);
    p.timestamp = 0;
    out.push_back(WeightedPoint{std::move(p), w});
  }
  return out;
}

std::vector<WeightedPoint> OnlineCoreset::extract_all(ExtractMode mode) const {
  return extract(t_, mode);
}

std::vector<WeightedPoint> OnlineCoreset::extract_window(
    std::uint64_t min_real_ts) const {
  std::vector<WeightedPoint> out;
  for (const auto& s : samples_)
    if (s.wp.point.timestamp >= min_real_ts) out.push_back(s.wp);
  for (const auto& zc : zero_entries_) {
    if (zc.real_ts < min_real_ts) continue;
    Point p = sketch_->center(zc.center_id);
    p.id = zc.point_id;
    p.timestamp = zc.real_ts;
    out.push_back(WeightedPoint{std::move(p), zc.weight});
  }
  return out;
}

std::pair<std::uint64_t, double> OnlineCoreset::group_stats(
    std::int32_t j, std::uint32_t b) const {
  auto it = groups_.find({j, b});
  if (it == groups_.end()) return {0, 0.0};
  return {it->second.count, it->second.cost};
}

std::uint64_t OnlineCoreset::ring_count(std::uint64_t center_id,
                                        std::int32_t j) const {
  auto it = rings_.find({center_id, j});
  return it == rings_.end() ? 0 : it->second.count;
}

std::uint64_t OnlineCoreset::sampled_in_group(std::int32_t j,
                                              std::uint32_t b) const {
  auto it = sampled_per_group_.find({j, b});
  return it == sampled_per_group_.end() ? 0 : it->second;
}

void OnlineCoreset::export_samples_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "point_id,timestamp,weight,center_id,j,b,p_x\n";
  char line[256];
  for (const auto& s : samples_) {
    std::snprintf(line, sizeof(line), "%llu,%llu,%.17g,%llu,%d,%u,%.17g\n",
                  static_cast<unsigned long long>(s.wp.point.id),
                  static_cast<unsigned long long>(s.wp.point.timestamp),
                  s.wp.weight,
                  static_cast<unsigned long long>(s.ring.center_id), s.ring.j,
                  s.group.b, s.p);
    out << line;
  }
}

}  // namespace swclus
