#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "geometry.hpp"
#include "rng.hpp"

namespace swclus {

// One irrevocable point -> center decision. cost_z is dist(point, center)^z
// at assignment time; it never changes afterwards even if closer centers
// open later.
struct AssignmentRecord {
  std::uint64_t point_id = 0;
  std::uint64_t center_id = 0;
  std::uint64_t assign_time = 0;
  double cost_z = 0.0;
  bool opened_center = false;  // the point became its own center
};

struct MeyersonConfig {
  // Parallel repetitions per guess. 0 means the high-probability default
  // ceil(2*log2(1/delta)); desk-scale runs typically set 1.
  std::uint32_t repetitions = 0;
  // Budget constant c_beta in the retained-center check
  // c_beta * 2^(2z) * k * log2(N) * log2(aspect).
  double c_beta = 4.0;
  // Under-estimation factor alpha of the per-guess optimum estimate.
  double alpha = 0.5;
};

// Center capacity of a single facility-location run:
// 4k(1+log2 aspect)(2^(z+3)/alpha^z + 1), rounded up.
std::uint64_t meyerson_capacity(std::uint32_t k, double aspect_bound,
                                double alpha, std::uint32_t z);

// Online facility-location sketch bank with a guess grid 2^1..2^G over the
// optimum, G = ceil(log2(N * d * aspect^z)). Every point is fed to all live
// runs; the assignment exposed to the caller comes from the lowest live
// guess, and once written it is never revised. Centers that back an exposed
// assignment are retained for the rest of the stream.
class MultiMeyerson {
 public:
  MultiMeyerson(const StreamParams& params, const MeyersonConfig& config,
                Rng rng);

  // Feeds one point to every live run and returns the irrevocable
  // assignment. Throws config_error (std::runtime_error) when every guess
  // has overflowed, which signals a mis-declared horizon or aspect bound.
  AssignmentRecord ingest(const Point& x);

  const std::vector<AssignmentRecord>& assignment_log() const { return log_; }

  // Coordinates of the center a log entry refers to.
  const Point& center(std::uint64_t center_id) const;

  // Centers the structure currently answers for: every past assignment
  // target plus the live centers of the active run. This is the set the
  // beta*k budget is checked against.
  CenterSet retained_centers() const;
  std::uint64_t retained_center_count() const;

  std::uint64_t center_budget() const { return budget_; }

  // Sum of cost_z over the assignment log.
  double assignment_cost() const { return assign_cost_; }

  std::uint64_t points_seen() const { return t_; }
  std::uint32_t guess_count() const { return static_cast<std::uint32_t>(guesses_.size()); }
  std::uint32_t active_guess() const;  // 1-based index of lowest live guess

  // Minimal guess index whose instance meets both the size bound
  // reps * capacity and the cost bound 2^(z+6+j); 0 when none qualifies.
  std::uint32_t select_guess() const;

  struct GuessStats {
    std::uint64_t total_centers = 0;  // across all runs, dead or alive
    double min_valid_cost = std::numeric_limits<double>::infinity();
    bool live = false;
  };
  GuessStats guess_stats(std::uint32_t index) const;  // 1-based

  // Weights of the selected guess's best run, as (center_id, weight) pairs.
  std::vector<std::pair<std::uint64_t, double>> selected_weights() const;

 private:
  struct Run {
    std::vector<std::uint64_t> centers;  // ids into centers_
    double cost_mu = 0.0;                // cost of points this run assigned
    bool live = true;
  };
  struct Guess {
    double value = 0.0;  // 2^i
    std::vector<Run> runs;
    bool live = true;
  };
  struct Center {
    Point site;
    double weight = 0.0;
    bool pinned = false;  // referenced by the assignment log
  };

  // Feeds x to one run; fills `assign` when this run is the exposed one.
  void step_run(Guess& guess, Run& run, const Point& x, double weight,
                AssignmentRecord* assign);

  StreamParams params_;
  MeyersonConfig config_;
  Rng rng_;

  std::vector<Guess> guesses_;
  std::vector<Center> centers_;
  std::vector<AssignmentRecord> log_;

  std::uint64_t cap_ = 0;        // per-run center capacity
  std::uint64_t budget_ = 0;     // retained-center budget
  double log_aspect_ = 1.0;
  std::uint64_t t_ = 0;
  std::uint64_t last_point_id_ = 0;
  int id_direction_ = 0;
  bool saw_point_ = false;
  double assign_cost_ = 0.0;
  std::uint64_t pinned_count_ = 0;

 public:
  // Weighted ingest used when coreset points are replayed through a new
  // sketch. The weight scales bookkeeping costs but not the open/assign
  // coin; see the sliding-window module for the composition rule.
  AssignmentRecord ingest_weighted(const Point& x, double weight);
};

}  // namespace swclus
