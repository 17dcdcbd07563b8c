#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace swclus {

// Point streams: `id,timestamp,c1,...,cd`. Weighted sets append a trailing
// `weight` column. Both forms carry a header row.

void write_stream_csv(const std::string& path, std::span<const Point> points);
void write_weighted_csv(const std::string& path,
                        std::span<const WeightedPoint> points);

std::vector<Point> read_stream_csv(const std::string& path);
std::vector<WeightedPoint> read_weighted_csv(const std::string& path);

// Incremental reader for the CLI, which must not materialize streams.
class StreamCsvReader {
 public:
  explicit StreamCsvReader(const std::string& path);
  ~StreamCsvReader();
  StreamCsvReader(const StreamCsvReader&) = delete;
  StreamCsvReader& operator=(const StreamCsvReader&) = delete;

  // nullopt at end of file. Dimension is inferred from the first row and
  // enforced afterwards.
  std::optional<Point> next();
  std::uint32_t dim() const { return dim_; }
  bool has_weight_column() const { return has_weight_; }
  double last_weight() const { return last_weight_; }

 private:
  void* stream_ = nullptr;
  std::uint32_t dim_ = 0;
  bool has_weight_ = false;
  bool header_checked_ = false;
  double last_weight_ = 1.0;
  std::string path_;
  std::uint64_t line_no_ = 0;
};

// Splits a CSV/TSV row on commas, tabs, semicolons, or runs of spaces.
std::vector<std::string> split_fields(const std::string& line);

std::string format_double(double v);

}  // namespace swclus
