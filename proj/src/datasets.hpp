#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "rng.hpp"

namespace swclus {

struct GaussianComponent {
  std::vector<double> mean;
  double stddev = 1.0;
  std::uint64_t count = 0;
};

struct DatasetSpec {
  enum class Kind { kGaussianMixture, kSkinCsv, kNoisySkin, kLowerBound };

  Kind kind = Kind::kGaussianMixture;
  std::uint64_t window = 0;  // 0 means the whole stream

  // gaussian_mixture: points expired by the window precede the components.
  std::vector<GaussianComponent> prepend;
  std::vector<GaussianComponent> components;

  // skin_csv / noisy_skin
  std::string path;

  // lowerbound
  std::uint32_t d_prime = 0;
  std::uint32_t gamma_lb = 0;
  std::uint32_t tau = 100;

  static DatasetSpec from_json_text(const std::string& text);
  static DatasetSpec from_json_file(const std::string& path);

  std::uint64_t expected_length() const;
  std::uint64_t effective_window(std::uint64_t stream_length) const;

  void validate() const;
};

std::vector<Point> gen_gaussian_mixture(const DatasetSpec& spec, Rng& rng);

// UCI SKIN file: rows of 4 numeric fields. Each column is standardized to
// zero mean and unit (population) standard deviation.
std::vector<Point> load_skin_dataset(const std::string& path);

// The stream used for the noisy-SKIN evaluation: 2 expired warm-up points,
// the standardized SKIN rows, then 201 synthetic noise points.
std::vector<Point> build_noisy_skin_stream(std::vector<Point> skin, Rng& rng);

// Sparse-support hard stream: instance i in [gamma_lb] emits d' elementary
// vectors, each repeated tau^(i-1) times consecutively, embedded in
// dimension 2 * d' * gamma_lb with disjoint support per instance.
std::vector<Point> gen_lowerbound_stream(std::uint32_t d_prime,
                                         std::uint32_t gamma_lb,
                                         std::uint32_t tau);

std::vector<Point> generate_stream(const DatasetSpec& spec, Rng& rng);

}  // namespace swclus
