#include "meyerson.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace swclus {

std::uint64_t meyerson_capacity(std::uint32_t k, double aspect_bound,
                                double alpha, std::uint32_t z) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("meyerson_capacity: alpha must be in (0,1]");
  const double log_aspect = std::log2(aspect_bound);
  const double per_run = 4.0 * k * (1.0 + log_aspect) *
                         (std::pow(2.0, z + 3.0) / std::pow(alpha, z) + 1.0);
  return static_cast<std::uint64_t>(std::ceil(per_run));
}

MultiMeyerson::MultiMeyerson(const StreamParams& params,
                             const MeyersonConfig& config, Rng rng)
    : params_(params), config_(config), rng_(rng) {
  params_.validate();
  if (!(config_.alpha > 0.0 && config_.alpha <= 1.0))
    throw std::invalid_argument("MultiMeyerson: alpha must be in (0,1]");

  std::uint32_t reps = config_.repetitions;
  if (reps == 0) {
    reps = static_cast<std::uint32_t>(
        std::max(1.0, std::ceil(2.0 * std::log2(1.0 / params_.delta))));
  }
  config_.repetitions = reps;

  cap_ = meyerson_capacity(params_.k, params_.aspect_bound, config_.alpha,
                           params_.z);
  log_aspect_ = std::log2(params_.aspect_bound);

  const double log_n = std::log2(static_cast<double>(params_.horizon));
  const double log_aspect = log_aspect_;
  budget_ = static_cast<std::uint64_t>(
      std::ceil(config_.c_beta * std::pow(2.0, 2.0 * params_.z) * params_.k *
                std::max(1.0, log_n) * std::max(1.0, log_aspect)));

  // Guess grid over the optimum: 2^1 .. 2^G with
  // G = ceil(log2(N * d * aspect^z)).
  const double grid_log = std::log2(static_cast<double>(params_.horizon)) +
                          std::log2(static_cast<double>(params_.dim)) +
                          params_.z * log_aspect;
  const std::uint32_t num_guesses =
      std::max(1u, static_cast<std::uint32_t>(std::ceil(grid_log)));

  guesses_.resize(num_guesses);
  for (std::uint32_t i = 0; i < num_guesses; ++i) {
    guesses_[i].value = std::pow(2.0, static_cast<double>(i + 1));
    guesses_[i].runs.resize(reps);
  }
}

std::uint32_t MultiMeyerson::active_guess() const {
  for (std::size_t i = 0; i < guesses_.size(); ++i)
    if (guesses_[i].live) return static_cast<std::uint32_t>(i + 1);
  return 0;
}

void MultiMeyerson::step_run(Guess& guess, Run& run, const Point& x,
                             double weight, AssignmentRecord* assign) {
  if (run.centers.empty()) {
    // First point always opens.
    centers_.push_back(Center{x, weight, false});
    run.centers.push_back(centers_.size() - 1);
    if (assign) {
      *assign = AssignmentRecord{x.id, centers_.size() - 1, t_, 0.0, true};
    }
    return;
  }

  // Nearest existing center of this run.
  std::size_t best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t ci = 0; ci < run.centers.size(); ++ci) {
    const double c =
        dist_pow(x, centers_[run.centers[ci]].site, params_.z, params_.metric);
    if (c < best_cost) {
      best_cost = c;
      best = ci;
    }
  }

  const double open_p = std::min(
      params_.k * (1.0 + log_aspect_) * best_cost / guess.value, 1.0);

  if (rng_.bernoulli(open_p)) {
    centers_.push_back(Center{x, weight, false});
    run.centers.push_back(centers_.size() - 1);
    if (assign) {
      *assign = AssignmentRecord{x.id, centers_.size() - 1, t_, 0.0, true};
    }
    if (run.centers.size() > cap_) run.live = false;
    return;
  }

  const std::uint64_t target = run.centers[best];
  centers_[target].weight += weight;
  run.cost_mu += weight * best_cost;
  if (assign) {
    *assign = AssignmentRecord{x.id, target, t_, best_cost, false};
  }
}

AssignmentRecord MultiMeyerson::ingest(const Point& x) {
  return ingest_weighted(x, 1.0);
}

AssignmentRecord MultiMeyerson::ingest_weighted(const Point& x,
                                                double weight) {
  if (x.coords.size() != params_.dim)
    throw std::invalid_argument("MultiMeyerson: point dimension mismatch");
  if (!(weight > 0.0))
    throw std::invalid_argument("MultiMeyerson: weight must be positive");
  // Ids must be strictly monotone: ascending on a forward stream,
  // descending when a block replays points newest-first. Either way each
  // id is seen once, which is what the write-once assignment map needs.
  if (saw_point_) {
    if (x.id == last_point_id_)
      throw std::invalid_argument("MultiMeyerson: duplicate point id");
    const int dir = x.id > last_point_id_ ? 1 : -1;
    if (id_direction_ == 0)
      id_direction_ = dir;
    else if (dir != id_direction_)
      throw std::invalid_argument("MultiMeyerson: point ids must be monotone");
  }

  ++t_;
  last_point_id_ = x.id;
  saw_point_ = true;

  // The exposed run is fixed before any run processes the point, so the
  // assignment cannot be influenced by deaths caused by this very point.
  std::size_t exp_guess = guesses_.size(), exp_run = 0;
  for (std::size_t g = 0; g < guesses_.size() && exp_guess == guesses_.size();
       ++g) {
    if (!guesses_[g].live) continue;
    for (std::size_t r = 0; r < guesses_[g].runs.size(); ++r) {
      if (guesses_[g].runs[r].live) {
        exp_guess = g;
        exp_run = r;
        break;
      }
    }
  }
  if (exp_guess == guesses_.size())
    throw ConfigError(
        "MultiMeyerson: every guess overflowed; horizon or aspect bound is "
        "set too low for this stream");

  AssignmentRecord record{};
  for (std::size_t g = 0; g < guesses_.size(); ++g) {
    Guess& guess = guesses_[g];
    if (!guess.live) continue;
    bool any_live = false;
    for (std::size_t r = 0; r < guess.runs.size(); ++r) {
      Run& run = guess.runs[r];
      if (!run.live) continue;
      const bool exposed = (g == exp_guess && r == exp_run);
      step_run(guess, run, x, weight, exposed ? &record : nullptr);
      any_live = any_live || run.live;
    }
    if (!any_live) guess.live = false;
  }

  if (!centers_[record.center_id].pinned) {
    centers_[record.center_id].pinned = true;
    ++pinned_count_;
  }
  assign_cost_ += weight * record.cost_z;
  log_.push_back(record);
  return record;
}

const Point& MultiMeyerson::center(std::uint64_t center_id) const {
  return centers_.at(center_id).site;
}

CenterSet MultiMeyerson::retained_centers() const {
  CenterSet out;
  std::vector<bool> taken(centers_.size(), false);
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    if (centers_[i].pinned) {
      taken[i] = true;
      out.centers.push_back(centers_[i].site);
    }
  }
  // Live centers of the exposed run answer for future points.
  for (const auto& guess : guesses_) {
    if (!guess.live) continue;
    for (const auto& run : guess.runs) {
      if (!run.live) continue;
      for (std::uint64_t id : run.centers) {
        if (!taken[id]) out.centers.push_back(centers_[id].site);
      }
      return out;
    }
  }
  return out;
}

std::uint64_t MultiMeyerson::retained_center_count() const {
  std::uint64_t count = pinned_count_;
  for (const auto& guess : guesses_) {
    if (!guess.live) continue;
    for (const auto& run : guess.runs) {
      if (!run.live) continue;
      for (std::uint64_t id : run.centers)
        if (!centers_[id].pinned) ++count;
      return count;
    }
  }
  return count;
}

MultiMeyerson::GuessStats MultiMeyerson::guess_stats(
    std::uint32_t index) const {
  const Guess& guess = guesses_.at(index - 1);
  GuessStats stats;
  stats.live = guess.live;
  for (const auto& run : guess.runs) {
    stats.total_centers += run.centers.size();
    if (run.live) stats.min_valid_cost = std::min(stats.min_valid_cost, run.cost_mu);
  }
  return stats;
}

std::uint32_t MultiMeyerson::select_guess() const {
  const double size_bound =
      static_cast<double>(config_.repetitions) * static_cast<double>(cap_);
  for (std::uint32_t j = 1; j <= guesses_.size(); ++j) {
    const GuessStats stats = guess_stats(j);
    if (static_cast<double>(stats.total_centers) >= size_bound) continue;
    const double cost_bound = std::pow(2.0, params_.z + 6.0 + j);
    if (stats.min_valid_cost < cost_bound) return j;
  }
  return 0;
}

std::vector<std::pair<std::uint64_t, double>> MultiMeyerson::selected_weights()
    const {
  const std::uint32_t j = select_guess();
  std::vector<std::pair<std::uint64_t, double>> out;
  if (j == 0) return out;
  const Guess& guess = guesses_[j - 1];
  const Run* best = nullptr;
  for (const auto& run : guess.runs) {
    if (!run.live) continue;
    if (best == nullptr || run.cost_mu < best->cost_mu) best = &run;
  }
  if (best == nullptr) return out;
  out.reserve(best->centers.size());
  for (std::uint64_t id : best->centers)
    out.emplace_back(id, centers_[id].weight);
  return out;
}

}  // namespace swclus
