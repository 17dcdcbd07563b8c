#include "datasets.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "csv.hpp"
#include "errors.hpp"

namespace swclus {

namespace {

using nlohmann::json;

GaussianComponent component_from_json(const json& j) {
  GaussianComponent c;
  c.mean = j.at("mean").get<std::vector<double>>();
  c.stddev = j.at("stddev").get<double>();
  c.count = j.at("count").get<std::uint64_t>();
  if (c.mean.empty()) throw ParseError("dataset: empty component mean");
  if (!(c.stddev > 0.0)) throw ParseError("dataset: stddev must be positive");
  return c;
}

void append_gaussian(std::vector<Point>& out, const GaussianComponent& c,
                     Rng& rng) {
  for (std::uint64_t i = 0; i < c.count; ++i) {
    Point p;
    p.coords.resize(c.mean.size());
    for (std::size_t d = 0; d < c.mean.size(); ++d)
      p.coords[d] = rng.gaussian(c.mean[d], c.stddev);
    out.push_back(std::move(p));
  }
}

void stamp(std::vector<Point>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    points[i].id = i + 1;
    points[i].timestamp = i + 1;
  }
}

}  // namespace

DatasetSpec DatasetSpec::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("dataset spec: ") + e.what());
  }

  DatasetSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gaussian_mixture")
    spec.kind = Kind::kGaussianMixture;
  else if (kind == "skin_csv")
    spec.kind = Kind::kSkinCsv;
  else if (kind == "noisy_skin")
    spec.kind = Kind::kNoisySkin;
  else if (kind == "lowerbound")
    spec.kind = Kind::kLowerBound;
  else
    throw ParseError("dataset spec: unknown kind '" + kind + "'");

  spec.window = j.value("window", std::uint64_t{0});
  if (j.contains("components"))
    for (const auto& c : j.at("components"))
      spec.components.push_back(component_from_json(c));
  if (j.contains("prepend"))
    for (const auto& c : j.at("prepend"))
      spec.prepend.push_back(component_from_json(c));
  spec.path = j.value("path", std::string{});
  spec.d_prime = j.value("d_prime", std::uint32_t{0});
  spec.gamma_lb = j.value("gamma_lb", std::uint32_t{0});
  spec.tau = j.value("tau", std::uint32_t{100});
  spec.validate();
  return spec;
}

DatasetSpec DatasetSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json_text(text);
}

void DatasetSpec::validate() const {
  switch (kind) {
    case Kind::kGaussianMixture: {
      std::size_t dim = 0;
      for (const auto* list : {&prepend, &components}) {
        for (const auto& c : *list) {
          if (dim == 0) dim = c.mean.size();
          if (c.mean.size() != dim)
            throw ParseError("dataset: inconsistent component dimensions");
        }
      }
      if (dim == 0)
        throw ParseError("dataset: gaussian_mixture needs components");
      break;
    }
    case Kind::kSkinCsv:
    case Kind::kNoisySkin:
      if (path.empty()) throw ParseError("dataset: missing 'path'");
      break;
    case Kind::kLowerBound:
      if (d_prime < 1) throw ParseError("dataset: d_prime must be >= 1");
      if (gamma_lb < 1) throw ParseError("dataset: gamma_lb must be >= 1");
      if (tau < 2) throw ParseError("dataset: tau must be >= 2");
      break;
  }
}

std::uint64_t DatasetSpec::expected_length() const {
  std::uint64_t n = 0;
  for (const auto& c : prepend) n += c.count;
  for (const auto& c : components) n += c.count;
  if (kind == Kind::kLowerBound) {
    double total = 0.0;
    for (std::uint32_t i = 1; i <= gamma_lb; ++i)
      total += d_prime * std::pow(static_cast<double>(tau), i - 1.0);
    n = static_cast<std::uint64_t>(total);
  }
  return n;
}

std::uint64_t DatasetSpec::effective_window(std::uint64_t stream_length) const {
  if (window == 0 || window > stream_length) return stream_length;
  return window;
}

std::vector<Point> gen_gaussian_mixture(const DatasetSpec& spec, Rng& rng) {
  spec.validate();
  std::vector<Point> out;
  for (const auto& c : spec.prepend) append_gaussian(out, c, rng);
  for (const auto& c : spec.components) append_gaussian(out, c, rng);
  stamp(out);
  return out;
}

std::vector<Point> load_skin_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::vector<Point> points;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 4)
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": expected 4 columns, got " +
                       std::to_string(fields.size()));
    Point p;
    p.coords.resize(4);
    for (std::size_t c = 0; c < 4; ++c) {
      try {
        p.coords[c] = std::stod(fields[c]);
      } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(line_no) +
                         ": not a number: '" + fields[c] + "'");
      }
    }
    points.push_back(std::move(p));
  }
  if (points.empty()) throw ParseError(path + ": no rows");

  // Standardize each column to zero mean, unit population std.
  for (std::size_t c = 0; c < 4; ++c) {
    double mean = 0.0;
    for (const auto& p : points) mean += p.coords[c];
    mean /= static_cast<double>(points.size());
    double var = 0.0;
    for (const auto& p : points) {
      const double dev = p.coords[c] - mean;
      var += dev * dev;
    }
    var /= static_cast<double>(points.size());
    const double stddev = std::sqrt(var);
    for (auto& p : points)
      p.coords[c] = stddev > 0.0 ? (p.coords[c] - mean) / stddev : 0.0;
  }
  stamp(points);
  return points;
}

std::vector<Point> build_noisy_skin_stream(std::vector<Point> skin, Rng& rng) {
  std::vector<Point> out;
  out.reserve(skin.size() + 203);

  const GaussianComponent warmup[] = {
      {{-10.0, 10.0, 0.0, 0.0}, 2.75, 1},
      {{-10.0, -10.0, 0.0, 0.0}, 2.75, 1},
  };
  for (const auto& c : warmup) append_gaussian(out, c, rng);

  out.insert(out.end(), std::make_move_iterator(skin.begin()),
             std::make_move_iterator(skin.end()));

  const GaussianComponent noise[] = {
      {{-10.0, 10.0, 0.0, 0.0}, 1.0, 100},
      {{10.0, -10.0, 0.0, 0.0}, 1.0, 100},
      {{500.0, 500.0, 0.0, 0.0}, 1.0, 1},
  };
  for (const auto& c : noise) append_gaussian(out, c, rng);

  stamp(out);
  return out;
}

std::vector<Point> gen_lowerbound_stream(std::uint32_t d_prime,
                                         std::uint32_t gamma_lb,
                                         std::uint32_t tau) {
  if (d_prime < 1 || gamma_lb < 1 || tau < 2)
    throw std::invalid_argument("gen_lowerbound_stream: bad parameters");

  double total = 0.0;
  for (std::uint32_t i = 1; i <= gamma_lb; ++i)
    total += d_prime * std::pow(static_cast<double>(tau), i - 1.0);
  if (total > 1e8)
    throw std::invalid_argument(
        "gen_lowerbound_stream: stream length exceeds the 1e8 budget");

  const std::uint32_t dim = 2 * d_prime * gamma_lb;
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(total));
  for (std::uint32_t i = 1; i <= gamma_lb; ++i) {
    std::uint64_t copies = 1;
    for (std::uint32_t c = 1; c < i; ++c) copies *= tau;
    for (std::uint32_t v = 0; v < d_prime; ++v) {
      const std::uint32_t coord = 2 * (i - 1) * d_prime + v;
      for (std::uint64_t rep = 0; rep < copies; ++rep) {
        Point p;
        p.coords.assign(dim, 0.0);
        p.coords[coord] = 1.0;
        out.push_back(std::move(p));
      }
    }
  }
  stamp(out);
  return out;
}

std::vector<Point> generate_stream(const DatasetSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case DatasetSpec::Kind::kGaussianMixture:
      return gen_gaussian_mixture(spec, rng);
    case DatasetSpec::Kind::kSkinCsv:
      return load_skin_dataset(spec.path);
    case DatasetSpec::Kind::kNoisySkin:
      return build_noisy_skin_stream(load_skin_dataset(spec.path), rng);
    case DatasetSpec::Kind::kLowerBound:
      return gen_lowerbound_stream(spec.d_prime, spec.gamma_lb, spec.tau);
  }
  throw std::logic_error("generate_stream: unreachable");
}

}  // namespace swclus
