#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "geometry.hpp"
#include "meyerson.hpp"
#include "rng.hpp"

namespace swclus {

// Band index j with 2^j <= cost_z < 2^(j+1). cost_z must be positive;
// zero-cost points are handled out of band.
std::int32_t ring_index(double cost_z);

// Group of the r-th point to arrive in its ring: 0 for the first point,
// ceil(log2 r) afterwards, so group b spans arrivals 2^(b-1)+1 .. 2^b.
std::uint32_t group_index(std::uint64_t ring_position);

struct CoresetConfig {
  StreamParams stream;
  MeyersonConfig meyerson;

  double c_gamma = 1.0;        // oversampling constant in the gamma formula
  double centroid_log = 0.0;   // stand-in for log2 |centroid set|; <=0 -> d*log2(2*aspect*N/eps)
  double alpha = 0.0;          // bicriteria cost factor; <=0 -> 2^(z+7)
  double beta = 0.0;           // bicriteria center factor; <=0 -> c_beta*2^(2z)*log2(N)*log2(aspect)
  double p_floor = 0.0;        // lower clamp on p_x; <=0 -> 1/N^2

  bool exact_mode = false;        // force p_x = 1 (lossless oracle mode)
  std::uint64_t target_samples = 0;  // >0: size-driven rate instead of gamma
  bool record_decisions = false;     // keep a per-point trace for tests

  double resolved_centroid_log() const;
  double resolved_alpha() const;
  double resolved_beta() const;
  double resolved_p_floor() const;
};

// Oversampling factor gamma =
//   c_gamma * max(alpha^2, alpha^z) * beta / min(eps^2, eps^z)
//   * log2^2(1/eps) * (k*centroid_log + log2 log2(1/eps) + log2 N)
//   * log2^2(1/eps).
// At theory constants this is astronomically large; target_samples exists to
// run the same sampler at desk scale.
double gamma_value(const CoresetConfig& config);

struct GroupCounter {
  std::uint64_t count = 0;
  double cost = 0.0;
};

struct RingKey {
  std::uint64_t center_id = 0;
  std::int32_t j = 0;
  bool zero_ring = false;
};

struct GroupKey {
  std::int32_t j = 0;
  std::uint32_t b = 0;
};

struct Sample {
  WeightedPoint wp;       // weight already rescaled by 1/p
  RingKey ring;
  GroupKey group;
  double p = 1.0;
  double rate = 0.0;      // sampling rate in effect at ingest
  std::uint64_t r_t = 0;  // |G_{j,b}| at ingest, including this point
  std::uint64_t internal_t = 0;
  double carried_weight = 1.0;
  double cost_z = 0.0;
};

struct ZeroEntry {
  std::uint64_t center_id = 0;
  std::uint64_t internal_t = 0;
  std::uint64_t point_id = 0;
  std::uint64_t real_ts = 0;
  double weight = 1.0;
};

// Per-point trace used by tests to audit sampling decisions.
struct Decision {
  std::uint64_t point_id = 0;
  std::uint64_t center_id = 0;
  std::int32_t j = 0;
  std::uint32_t b = 0;
  std::uint64_t r_t = 0;
  double p = 1.0;
  double cost_z = 0.0;
  double weight = 1.0;
  bool zero = false;
  bool sampled = false;
};

enum class ExtractMode { kDefault, kSubstituteCenters };

// Online importance sampler over the ring/group decomposition induced by a
// consistent bicriteria assignment. Samples are never revised or dropped;
// the sampled prefix at any time is a coreset for the ingested prefix.
class OnlineCoreset {
 public:
  OnlineCoreset(const CoresetConfig& config, Rng rng);

  // Assigns via the internal sketch, updates ring/group statistics, then
  // flips the sampling coin. Returns the stored sample, if any.
  std::optional<Sample> ingest(const Point& x);
  std::optional<Sample> ingest_weighted(const WeightedPoint& wp);

  // Same, with an assignment made by an external sketch (test entry point).
  std::optional<Sample> ingest_assigned(const WeightedPoint& wp,
                                        const AssignmentRecord& assignment,
                                        const Point& center_site);

  // Weighted points whose internal arrival index is <= t (t = 0 selects
  // nothing). Zero-cost arrivals are emitted at the coordinates of their
  // center, one entry per arrival so that timestamps survive re-ingestion.
  std::vector<WeightedPoint> extract(std::uint64_t t,
                                     ExtractMode mode = ExtractMode::kDefault) const;
  std::vector<WeightedPoint> extract_all(
      ExtractMode mode = ExtractMode::kDefault) const;

  // Suffix variant keyed by the points' own timestamps; used by the
  // sliding-window blocks, whose ingest order reverses real time.
  std::vector<WeightedPoint> extract_window(std::uint64_t min_real_ts) const;

  std::pair<std::uint64_t, double> group_stats(std::int32_t j,
                                               std::uint32_t b) const;
  std::uint64_t ring_count(std::uint64_t center_id, std::int32_t j) const;
  std::uint64_t sampled_in_group(std::int32_t j, std::uint32_t b) const;

  const std::vector<Sample>& samples() const { return samples_; }
  const std::vector<ZeroEntry>& zero_entries() const { return zero_entries_; }
  const std::vector<Decision>& decisions() const { return decisions_; }
  const MultiMeyerson& sketch() const { return *sketch_; }
  const CoresetConfig& config() const { return config_; }

  std::uint64_t points_seen() const { return t_; }
  std::uint64_t stored_points() const {
    return samples_.size() + zero_entries_.size();
  }
  double gamma() const { return gamma_; }
  double current_rate() const;

  void export_samples_csv(const std::string& path) const;

 private:
  void note_real_ts(std::uint64_t real_ts);

  CoresetConfig config_;
  Rng rng_;
  std::optional<MultiMeyerson> sketch_;

  std::uint64_t t_ = 0;
  double gamma_ = 0.0;
  double fixed_rate_ = 0.0;  // 4 * gamma * log2(N) when target_samples == 0

  std::map<std::pair<std::int32_t, std::uint32_t>, GroupCounter> groups_;
  std::map<std::pair<std::uint64_t, std::int32_t>, GroupCounter> rings_;
  std::map<std::uint64_t, GroupCounter> per_center_;  // assigned count/cost
  std::map<std::pair<std::int32_t, std::uint32_t>, std::uint64_t> sampled_per_group_;

  std::vector<Sample> samples_;
  std::vector<ZeroEntry> zero_entries_;
  std::vector<Decision> decisions_;

  // Points must arrive in strictly monotone timestamp order; the direction
  // (forward stream vs reversed replay) is fixed by the first two points.
  std::uint64_t last_real_ts_ = 0;
  int ts_direction_ = 0;
  bool saw_point_ = false;
};

}  // namespace swclus
