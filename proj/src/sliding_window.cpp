#include "sliding_window.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace swclus {

std::uint64_t SlidingWindowConfig::resolved_block_capacity() const {
  if (block_capacity > 0) return block_capacity;
  // Twice the expected per-block coreset size, following the framework's
  // m = Theta(S * log n) with the log folded into the constant.
  if (coreset.target_samples > 0)
    return 2 * std::max<std::uint64_t>(16, coreset.target_samples);
  return 256;
}

std::uint64_t SlidingWindowConfig::resolved_max_window() const {
  return max_window > 0 ? max_window : coreset.stream.horizon;
}

CoresetConfig level_config(const SlidingWindowConfig& config) {
  CoresetConfig level = config.coreset;
  const double n = static_cast<double>(level.stream.horizon);
  const double log_n = std::max(1.0, std::log2(n));
  level.stream.epsilon = config.coreset.stream.epsilon / log_n;
  level.stream.delta = config.coreset.stream.delta / (n * n);
  return level;
}

bool epsilon_composition_ok(const SlidingWindowConfig& config) {
  const double eps = config.coreset.stream.epsilon;
  const double n = static_cast<double>(config.coreset.stream.horizon);
  const double m = static_cast<double>(config.resolved_block_capacity());
  const double levels = std::ceil(std::log2(std::max(2.0, n / m))) + 1.0;
  const double per_level = eps / std::max(1.0, std::log2(n));
  return std::pow(1.0 + per_level, levels) <= 1.0 + eps;
}

SlidingWindow::SlidingWindow(const SlidingWindowConfig& config, Rng rng)
    : config_(config), level_config_(level_config(config)), rng_(rng) {
  config_.coreset.stream.validate();
  m_ = config_.resolved_block_capacity();
  max_window_ = config_.resolved_max_window();
  const double n = static_cast<double>(config_.coreset.stream.horizon);
  const std::uint32_t top_level = static_cast<std::uint32_t>(
      std::ceil(std::log2(std::max(2.0, n / static_cast<double>(m_))))) + 1;
  levels_.resize(top_level);  // slots for levels 1..L; level 0 is the buffer
}

void SlidingWindow::ingest(Point x) {
  if (rejecting_)
    throw ConfigError("SlidingWindow: merge levels exhausted, horizon too low");
  ++n_;
  x.timestamp = n_;
  if (x.id == 0) x.id = n_;

  if (buffer_.size() < m_) {
    buffer_.push_back(std::move(x));
  } else {
    compress(n_);
    if (config_.drop_expired_blocks) drop_expired(n_);
    buffer_.clear();
    buffer_.push_back(std::move(x));
  }
  if (config_.c_samples > 0.0) check_space();
}

void SlidingWindow::compress(std::uint64_t now_ts) {
  std::size_t target = levels_.size();
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!levels_[i].has_value()) {
      target = i;
      break;
    }
  }
  if (target == levels_.size()) {
    rejecting_ = true;
    throw ConfigError("SlidingWindow: no empty merge level left");
  }

  // Gather everything below the target level and replay it newest-first.
  std::vector<WeightedPoint> items;
  items.reserve(buffer_.size());
  for (const Point& p : buffer_) items.push_back(WeightedPoint{p, 1.0});
  for (std::size_t i = 0; i < target; ++i) {
    if (!levels_[i].has_value()) continue;
    auto extracted = levels_[i]->coreset.extract_all();
    items.insert(items.end(), std::make_move_iterator(extracted.begin()),
                 std::make_move_iterator(extracted.end()));
    levels_[i].reset();
  }

  std::sort(items.begin(), items.end(),
            [](const WeightedPoint& a, const WeightedPoint& b) {
              return a.point.timestamp > b.point.timestamp;
            });

  ++compressions_;
  LevelBlock block{OnlineCoreset(level_config_, rng_.fork(compressions_)),
                   items.empty() ? now_ts : items.back().point.timestamp,
                   items.empty() ? now_ts : items.front().point.timestamp};
  for (const auto& wp : items) block.coreset.ingest_weighted(wp);
  levels_[target] = std::move(block);
}

void SlidingWindow::drop_expired(std::uint64_t now_ts) {
  if (now_ts < max_window_) return;
  const std::uint64_t cutoff = now_ts - max_window_ + 1;
  for (auto& slot : levels_) {
    if (slot.has_value() && slot->max_ts < cutoff) slot.reset();
  }
}

std::vector<WeightedPoint> SlidingWindow::query(std::uint64_t window) const {
  if (window == 0 || window > max_window_ || window > n_)
    throw std::out_of_range("SlidingWindow::query: window out of range");
  const std::uint64_t cutoff = n_ - window + 1;

  std::vector<WeightedPoint> out;
  for (auto it = buffer_.rbegin(); it != buffer_.rend(); ++it) {
    if (it->timestamp >= cutoff) out.push_back(WeightedPoint{*it, 1.0});
  }
  for (const auto& slot : levels_) {
    if (!slot.has_value() || slot->max_ts < cutoff) continue;
    auto part = slot->coreset.extract_window(cutoff);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

std::uint64_t SlidingWindow::stored_points() const {
  std::uint64_t total = buffer_.size();
  for (const auto& slot : levels_)
    if (slot.has_value()) total += slot->coreset.stored_points();
  return total;
}

std::uint32_t SlidingWindow::live_blocks() const {
  std::uint32_t blocks = buffer_.empty() ? 0 : 1;
  for (const auto& slot : levels_)
    if (slot.has_value()) ++blocks;
  return blocks;
}

std::vector<SlidingWindow::BlockInfo> SlidingWindow::blocks() const {
  std::vector<BlockInfo> out;
  if (!buffer_.empty()) {
    out.push_back(BlockInfo{0, buffer_.front().timestamp,
                            buffer_.back().timestamp, buffer_.size()});
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!levels_[i].has_value()) continue;
    out.push_back(BlockInfo{static_cast<std::uint32_t>(i + 1),
                            levels_[i]->min_ts, levels_[i]->max_ts,
                            levels_[i]->coreset.stored_points()});
  }
  return out;
}

void SlidingWindow::check_space() const {
  const double bound = static_cast<double>(m_) *
                       static_cast<double>(levels_.size() + 1) *
                       config_.c_samples;
  if (static_cast<double>(stored_points()) > bound)
    throw std::logic_error("SlidingWindow: stored points exceed space bound");
}

}  // namespace swclus
