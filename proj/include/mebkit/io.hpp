#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mebkit/geometry.hpp"

namespace mebkit {

enum class PointFormat { csv, json };

PointFormat parse_format(std::string_view name);
// From the file extension; csv unless it ends in ".json".
PointFormat infer_format(const std::filesystem::path& path);

// One point per non-empty line, comma-separated decimals, uniform arity.
PointSet parse_points_csv(std::string_view text);
// {"points": [[...], ...]} with equal-length numeric rows.
PointSet parse_points_json(std::string_view text);

PointSet read_points(const std::filesystem::path& path,
                     std::optional<PointFormat> format = std::nullopt);

// Decimal text with 17 significant digits, which round-trips every double.
std::string points_to_csv(const PointSet& points);
std::string points_to_json(const PointSet& points);
void write_points(const std::filesystem::path& path, const PointSet& points,
                  PointFormat format);

struct GenParams {
  std::size_t k = 2;          // clusters (clustered, clusterable, far)
  double separation = 10.0;   // distance between consecutive cluster centers
  double radius = 1.0;        // ball radius (uniform-ball, sphere-surface); cluster radius
  double sigma = 1.0;         // gaussian standard deviation
  double eps = 1.0;           // clusterable: cover radius
  double delta = 1.0;         // far: minimum pairwise distance of the planted points
};

// Synthetic instance plus the ground truth it was built from.
struct GeneratedInstance {
  std::string kind;
  PointSet points;
  std::vector<int> labels;            // cluster id per point, when meaningful
  std::vector<Point> centers;         // clustered / clusterable certificate
  double cover_radius = 0.0;          // clusterable certificate radius
  std::vector<std::size_t> scattered; // far certificate: planted indices
};

inline constexpr std::string_view kInstanceKinds[] = {
    "uniform-ball", "sphere-surface", "gaussian", "clustered", "clusterable", "far"};

// Deterministic for a fixed seed. Throws InvalidArgument naming the known
// kinds when `kind` is not one of them.
GeneratedInstance gen_instance(std::string_view kind, std::size_t n, std::size_t d,
                               std::uint64_t seed, const GenParams& params = {});

}  // namespace mebkit
