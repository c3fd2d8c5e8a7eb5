#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mebkit/geometry.hpp"

namespace mebkit {

struct DiameterResult {
  double value = 0.0;
  std::optional<std::pair<std::size_t, std::size_t>> pair;  // i < j
  bool exact = true;
  std::size_t pairs_at_max = 0;  // pairs within tol of `value`
};

// All pairs, O(n^2). Ties go to the lexicographically smallest index pair.
DiameterResult diameter_bruteforce(const PointSet& points);

// Convex hull indices in counter-clockwise order (Andrew's monotone chain);
// collinear and duplicate points are dropped. d must be 2.
std::vector<std::size_t> convex_hull_2d(const PointSet& points);

// Rotating calipers over the antipodal pairs of the hull. The diameter of the
// hull equals that of the set, so only hull vertices are examined.
// `pairs_at_max` counts antipodal hull pairs.
DiameterResult diameter_calipers_2d(const PointSet& points);

// Iterated farthest-point sweeps from `restarts` seeded start points; stops a
// sweep when the farthest distance no longer grows. A lower bound.
DiameterResult diameter_doublesweep(const PointSet& points, std::uint64_t seed = 0,
                                    std::size_t restarts = 3);

// One-pass sketch: anchor = first point, estimate = max distance to anchor.
// estimate <= diam <= 2 * estimate.
class TwoApproxSketch {
 public:
  void push(PointView p);
  // Throws InvalidArgument on an empty stream.
  double estimate() const;
  std::size_t count() const { return count_; }
  const std::optional<Point>& anchor() const { return anchor_; }

 private:
  std::optional<Point> anchor_;
  double max_dist_ = 0.0;
  std::size_t count_ = 0;
};

// One-pass planar sketch keeping the min/max projection on m directions
// evenly spaced in [0, pi), m the least integer with cos(pi/(2m)) >= 1/(1+eps).
// estimate <= diam <= (1 + eps) * estimate.
class DirectionalSketch {
 public:
  explicit DirectionalSketch(double eps);

  static std::size_t direction_count(double eps);

  void push(PointView p);
  // Per-direction union of extents; both sketches need the same eps.
  void merge(const DirectionalSketch& other);
  double estimate() const;

  double eps() const { return eps_; }
  std::size_t count() const { return count_; }
  const std::vector<std::pair<double, double>>& directions() const { return directions_; }
  const std::vector<std::pair<double, double>>& extents() const { return extents_; }

 private:
  double eps_;
  std::vector<std::pair<double, double>> directions_;  // unit (cos, sin)
  std::vector<std::pair<double, double>> extents_;     // (min, max)
  std::size_t count_ = 0;
};

struct StreamEstimate {
  double estimate = 0.0;
  std::size_t count = 0;
};

StreamEstimate stream_2approx(const PointSet& stream);
StreamEstimate stream_eps_2d(const PointSet& stream, double eps);

}  // namespace mebkit
