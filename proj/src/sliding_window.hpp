#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "online_coreset.hpp"

namespace swclus {

struct SlidingWindowConfig {
  CoresetConfig coreset;

  std::uint64_t block_capacity = 0;  // m; 0 derives a default from the mode
  std::uint64_t max_window = 0;      // W_max; 0 means the horizon
  // Stored-points bound constant: when positive, every ingest checks
  // stored <= m * (levels + 1) * c_samples and throws on violation.
  double c_samples = 0.0;
  bool drop_expired_blocks = true;

  std::uint64_t resolved_block_capacity() const;
  std::uint64_t resolved_max_window() const;
};

// Per-level accuracy split: each merge level runs the online coreset at
// epsilon / log2(N) and delta / N^2.
CoresetConfig level_config(const SlidingWindowConfig& config);

// True when the configured per-level budget composes to at most (1 + eps)
// across the maximum possible number of merge levels.
bool epsilon_composition_ok(const SlidingWindowConfig& config);

// Merge-and-reduce over the reversed stream. Level 0 buffers the newest m
// raw points; when it fills, levels 0..i-1 are replayed newest-first into a
// fresh online coreset at the lowest empty level i. Because each block is an
// online coreset of a reversed substream, restricting its output by
// timestamp yields a coreset for any suffix, i.e. any window length.
class SlidingWindow {
 public:
  SlidingWindow(const SlidingWindowConfig& config, Rng rng);

  // Points are stamped with their arrival index; the window is counted in
  // arrivals, matching the model's "W most recent updates".
  void ingest(Point x);

  // Weighted coreset of the W most recent points, newest first.
  std::vector<WeightedPoint> query(std::uint64_t window) const;

  std::uint64_t points_seen() const { return n_; }
  std::uint64_t stored_points() const;
  std::uint32_t live_blocks() const;
  std::uint64_t compression_count() const { return compressions_; }
  std::uint64_t block_capacity() const { return m_; }
  std::uint64_t max_window() const { return max_window_; }
  std::uint32_t level_slots() const { return static_cast<std::uint32_t>(levels_.size()) + 1; }

  struct BlockInfo {
    std::uint32_t level = 0;
    std::uint64_t min_ts = 0;
    std::uint64_t max_ts = 0;
    std::uint64_t stored = 0;
  };
  std::vector<BlockInfo> blocks() const;

 private:
  void compress(std::uint64_t now_ts);
  void drop_expired(std::uint64_t now_ts);
  void check_space() const;

  struct LevelBlock {
    OnlineCoreset coreset;
    std::uint64_t min_ts = 0;
    std::uint64_t max_ts = 0;
  };

  SlidingWindowConfig config_;
  CoresetConfig level_config_;
  Rng rng_;

  std::vector<Point> buffer_;  // level 0, arrival order
  std::vector<std::optional<LevelBlock>> levels_;  // levels 1..L

  std::uint64_t m_ = 0;
  std::uint64_t max_window_ = 0;
  std::uint64_t n_ = 0;
  std::uint64_t compressions_ = 0;
  bool rejecting_ = false;
};

}  // namespace swclus
