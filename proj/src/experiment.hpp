#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "datasets.hpp"
#include "online_coreset.hpp"
#include "sliding_window.hpp"
#include "solver.hpp"

namespace swclus {

struct ResultRow {
  std::string algo;
  std::uint32_t k = 0;
  std::uint64_t m = 0;
  std::uint64_t seed = 0;
  double true_cost = 0.0;     // evaluated on the materialized window
  double coreset_cost = 0.0;  // the solver's estimate on its own input
  std::uint64_t coreset_size = 0;
  double wall_ms = 0.0;
  std::string error;  // nonempty when the cell failed
};

struct ExperimentConfig {
  DatasetSpec dataset;
  std::vector<std::string> algorithms;  // ours, uniform, histogram, importance, offline
  std::vector<std::uint32_t> ks;
  std::vector<std::uint64_t> ms;
  std::uint32_t z = 2;
  std::uint32_t repetitions = 30;
  std::uint64_t master_seed = 1;
  std::uint32_t solve_iterations = 10;
  std::uint32_t solve_restarts = 1;
  double epsilon = 0.5;
  double delta = 0.01;
  double aspect_bound = 1 << 20;
  std::uint32_t meyerson_repetitions = 1;
  double histogram_theta = 8.0;
  bool record_wall_ms = true;  // off for byte-identical reruns

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
};

std::vector<ResultRow> run_experiment(const ExperimentConfig& config,
                                      std::uint32_t jobs = 1);

// Header: algo,k,m,seed,true_cost,coreset_cost,coreset_size,wall_ms
void write_rows_csv(const std::string& path, std::span<const ResultRow> rows);

// Per-(algo,k,m) means and standard deviations of the true cost.
void write_summary_json(const std::string& path,
                        std::span<const ResultRow> rows);

// Max over probe times and center sets of the relative error between the
// extracted prefix cost and the exact prefix cost; zero-cost prefixes are
// skipped.
double measure_online_coreset_error(std::span<const Point> stream,
                                    const CoresetConfig& config,
                                    std::uint64_t seed,
                                    std::span<const std::uint64_t> probe_times,
                                    std::span<const CenterSet> center_sets);

// Convenience probes: `count` times evenly spaced over (0, n].
std::vector<std::uint64_t> default_probe_times(std::uint64_t n,
                                               std::uint32_t count);

// Center sets of k distinct stream points each, drawn by seed.
std::vector<CenterSet> sample_center_sets(std::span<const Point> stream,
                                          std::uint32_t k, std::uint32_t sets,
                                          std::uint64_t seed);

struct LowerBoundSweepResult {
  std::uint32_t gamma_lb = 0;
  std::uint64_t min_target_samples = 0;
  double achieved_error = 0.0;
};

// For each gamma_lb, bisect over target_samples for the smallest budget
// whose median max-prefix-error over `seeds` runs is at most `target_error`.
std::vector<LowerBoundSweepResult> lowerbound_sweep(
    std::uint32_t d_prime, std::uint32_t tau,
    std::span<const std::uint32_t> gammas, std::uint32_t k, std::uint32_t z,
    std::uint32_t seeds, double target_error, std::uint64_t master_seed);

}  // namespace swclus
