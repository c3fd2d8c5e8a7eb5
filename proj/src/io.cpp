#include "mebkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "mebkit/errors.hpp"
#include "mebkit/random.hpp"

namespace mebkit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Standard normal via Box-Muller on our own uniform draws, so instances are
// identical across standard libraries.
double normal(Rng& rng) {
  double u1;
  do {
    u1 = uniform01(rng);
  } while (u1 <= 0.0);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> unit_direction(Rng& rng, std::size_t d) {
  std::vector<double> v(d);
  double norm = 0.0;
  while (norm == 0.0) {
    norm = 0.0;
    for (auto& x : v) {
      x = normal(rng);
      norm += x * x;
    }
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

// Uniform in the ball of radius r centered at c.
std::vector<double> in_ball(Rng& rng, std::span<const double> c, double r) {
  const std::size_t d = c.size();
  auto v = unit_direction(rng, d);
  const double len = r * std::pow(uniform01(rng), 1.0 / static_cast<double>(d));
  for (std::size_t a = 0; a < d; ++a) v[a] = c[a] + len * v[a];
  return v;
}

std::vector<double> axis_point(std::size_t d, double x0) {
  std::vector<double> v(d, 0.0);
  v[0] = x0;
  return v;
}

}  // namespace

PointFormat parse_format(std::string_view name) {
  if (name == "csv") return PointFormat::csv;
  if (name == "json") return PointFormat::json;
  throw InvalidArgument("unknown point format '" + std::string(name) + "' (csv, json)");
}

PointFormat infer_format(const std::filesystem::path& path) {
  return path.extension() == ".json" ? PointFormat::json : PointFormat::csv;
}

PointSet parse_points_csv(std::string_view text) {
  PointSet out;
  std::size_t line_no = 0;
  std::size_t arity = 0;
  std::vector<double> row;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty()) continue;
    row.clear();
    while (true) {
      const auto comma = line.find(',');
      std::string_view cell = trim(line.substr(0, comma));
      double x = 0.0;
      if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), x);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() ||
          !std::isfinite(x)) {
        throw ParseError("non-numeric cell '" + std::string(cell) + "'", line_no);
      }
      row.push_back(x);
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    if (arity == 0) arity = row.size();
    if (row.size() != arity) {
      throw ParseError("row has " + std::to_string(row.size()) + " columns, expected " +
                           std::to_string(arity),
                       line_no);
    }
    out.push_back(row);
  }
  if (out.empty()) throw ParseError("no points in input", std::max<std::size_t>(line_no, 1));
  return out;
}

PointSet parse_points_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_of_offset(text, e.byte));
  }
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    throw ParseError("expected an object with a \"points\" array", 1);
  }
  const auto& rows = doc["points"];
  if (rows.empty()) throw ParseError("no points in input", 1);
  PointSet out;
  std::vector<double> row;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!r.is_array() || r.empty()) throw ParseError("point " + std::to_string(i) + " is not a nonempty array", 1);
    row.clear();
    for (const auto& x : r) {
      if (!x.is_number()) throw ParseError("point " + std::to_string(i) + " has a non-numeric entry", 1);
      row.push_back(x.get<double>());
    }
    if (out.dim() != 0 && row.size() != out.dim()) {
      throw ParseError("point " + std::to_string(i) + " has dimension " +
                           std::to_string(row.size()) + ", expected " + std::to_string(out.dim()),
                       1);
    }
    out.push_back(row);
  }
  return out;
}

PointSet read_points(const std::filesystem::path& path, std::optional<PointFormat> format) {
  const std::string text = read_file(path);
  const PointFormat f = format.value_or(infer_format(path));
  return f == PointFormat::json ? parse_points_json(text) : parse_points_csv(text);
}

std::string points_to_csv(const PointSet& points) {
  std::string out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    PointView p = points[i];
    for (std::size_t a = 0; a < p.size(); ++a) {
      if (a) out += ',';
      out += format_double(p[a]);
    }
    out += '\n';
  }
  return out;
}

std::string points_to_json(const PointSet& points) {
  std::string out = "{\"points\": [";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out += i ? ",\n  [" : "\n  [";
    PointView p = points[i];
    for (std::size_t a = 0; a < p.size(); ++a) {
      if (a) out += ", ";
      out += format_double(p[a]);
    }
    out += ']';
  }
  out += "\n]}\n";
  return out;
}

void write_points(const std::filesystem::path& path, const PointSet& points, PointFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << (format == PointFormat::json ? points_to_json(points) : points_to_csv(points));
}

GeneratedInstance gen_instance(std::string_view kind, std::size_t n, std::size_t d,
                               std::uint64_t seed, const GenParams& params) {
  if (std::find(std::begin(kInstanceKinds), std::end(kInstanceKinds), kind) ==
      std::end(kInstanceKinds)) {
    std::string known;
    for (auto k : kInstanceKinds) known += (known.empty() ? "" : ", ") + std::string(k);
    throw InvalidArgument("unknown instance kind '" + std::string(kind) + "' (" + known + ")");
  }
  if (n == 0 || d == 0) throw InvalidArgument("gen_instance: n and d must be >= 1");
  Rng rng(derive_seed(seed, std::string("gen/") + std::string(kind)));
  GeneratedInstance g;
  g.kind = std::string(kind);
  g.points = PointSet(d);
  const std::vector<double> origin(d, 0.0);

  if (kind == "uniform-ball") {
    for (std::size_t i = 0; i < n; ++i) g.points.push_back(in_ball(rng, origin, params.radius));
  } else if (kind == "sphere-surface") {
    for (std::size_t i = 0; i < n; ++i) {
      auto v = unit_direction(rng, d);
      for (auto& x : v) x *= params.radius;
      g.points.push_back(v);
    }
  } else if (kind == "gaussian") {
    std::vector<double> v(d);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& x : v) x = params.sigma * normal(rng);
      g.points.push_back(v);
    }
  } else if (kind == "clustered" || kind == "clusterable") {
    if (params.k == 0) throw InvalidArgument("gen_instance: k must be >= 1");
    const bool cover = kind == "clusterable";
    // Cover radius shrunk by a hair so the certificate holds after rounding.
    const double r = cover ? params.eps * (1.0 - 1e-12) : params.radius;
    const double spacing = cover ? std::max(params.separation, 4.0 * params.eps) : params.separation;
    for (std::size_t j = 0; j < params.k; ++j) {
      g.centers.emplace_back(axis_point(d, spacing * static_cast<double>(j)));
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = i % params.k;
      g.points.push_back(in_ball(rng, g.centers[j].coords(), r));
      g.labels.push_back(static_cast<int>(j));
    }
    if (cover) g.cover_radius = params.eps;
  } else {  // far
    if (params.k > n) throw InvalidArgument("gen_instance: far needs k <= n");
    // Planted points on a line at spacing delta; the rest near the origin.
    for (std::size_t j = 0; j < params.k; ++j) {
      g.points.push_back(axis_point(d, params.delta * static_cast<double>(j)));
      g.scattered.push_back(j);
    }
    for (std::size_t i = params.k; i < n; ++i) {
      g.points.push_back(in_ball(rng, origin, params.delta / 2.0));
    }
  }
  return g;
}

}  // namespace mebkit
