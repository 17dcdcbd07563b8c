#include "csv.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>

#include "errors.hpp"

namespace swclus {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',' || c == '\t' || c == ';' || c == ' ') {
      if (!field.empty()) {
        out.push_back(std::move(field));
        field.clear();
      } else if (c == ',' || c == ';') {
        out.emplace_back();
      }
      continue;
    }
    if (c == '\r') continue;
    field.push_back(c);
  }
  if (!field.empty()) out.push_back(std::move(field));
  return out;
}

namespace {

double parse_double(const std::string& s, const std::string& path,
                    std::uint64_t line_no) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end)
    throw ParseError(path + ":" + std::to_string(line_no) +
                     ": not a number: '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& path,
                        std::uint64_t line_no) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(path + ":" + std::to_string(line_no) +
                     ": not an integer: '" + s + "'");
  return v;
}

bool is_header(const std::vector<std::string>& fields) {
  return !fields.empty() && fields[0] == "id";
}

}  // namespace

void write_stream_csv(const std::string& path, std::span<const Point> points) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  const std::size_t d = points.empty() ? 0 : points.front().dim();
  out << "id,timestamp";
  for (std::size_t c = 0; c < d; ++c) out << ",c" << (c + 1);
  out << "\n";
  for (const Point& p : points) {
    out << p.id << ',' << p.timestamp;
    for (double v : p.coords) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_weighted_csv(const std::string& path,
                        std::span<const WeightedPoint> points) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  const std::size_t d = points.empty() ? 0 : points.front().point.dim();
  out << "id,timestamp";
  for (std::size_t c = 0; c < d; ++c) out << ",c" << (c + 1);
  out << ",weight\n";
  for (const WeightedPoint& wp : points) {
    out << wp.point.id << ',' << wp.point.timestamp;
    for (double v : wp.point.coords) out << ',' << format_double(v);
    out << ',' << format_double(wp.weight) << '\n';
  }
}

StreamCsvReader::StreamCsvReader(const std::string& path) : path_(path) {
  auto* f = new std::ifstream(path);
  if (!*f) {
    delete f;
    throw IoError("cannot open " + path);
  }
  stream_ = f;
}

StreamCsvReader::~StreamCsvReader() {
  delete static_cast<std::ifstream*>(stream_);
}

std::optional<Point> StreamCsvReader::next() {
  auto& in = *static_cast<std::ifstream*>(stream_);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no_;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (!header_checked_) {
      header_checked_ = true;
      if (is_header(fields)) {
        has_weight_ = fields.back() == "weight";
        continue;
      }
    }
    const std::size_t extra = has_weight_ ? 3 : 2;
    if (fields.size() < extra + 1)
      throw ParseError(path_ + ":" + std::to_string(line_no_) +
                       ": expected id,timestamp,coords...");
    Point p;
    p.id = parse_u64(fields[0], path_, line_no_);
    p.timestamp = parse_u64(fields[1], path_, line_no_);
    const std::size_t d = fields.size() - extra;
    if (dim_ == 0) {
      dim_ = static_cast<std::uint32_t>(d);
    } else if (d != dim_) {
      throw ParseError(path_ + ":" + std::to_string(line_no_) +
                       ": inconsistent dimension");
    }
    p.coords.resize(d);
    for (std::size_t c = 0; c < d; ++c)
      p.coords[c] = parse_double(fields[2 + c], path_, line_no_);
    last_weight_ =
        has_weight_ ? parse_double(fields.back(), path_, line_no_) : 1.0;
    return p;
  }
  return std::nullopt;
}

std::vector<Point> read_stream_csv(const std::string& path) {
  StreamCsvReader reader(path);
  std::vector<Point> out;
  while (auto p = reader.next()) out.push_back(std::move(*p));
  return out;
}

std::vector<WeightedPoint> read_weighted_csv(const std::string& path) {
  StreamCsvReader reader(path);
  std::vector<WeightedPoint> out;
  while (auto p = reader.next())
    out.push_back(WeightedPoint{std::move(*p), reader.last_weight()});
  return out;
}

}  // namespace swclus
