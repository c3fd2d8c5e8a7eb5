#include "mebkit/diameter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <string>

#include "mebkit/errors.hpp"
#include "mebkit/random.hpp"

namespace mebkit {

namespace {

void require_pairs(const PointSet& points, const char* who) {
  if (points.size() < 2) throw InvalidArgument(std::string(who) + ": needs at least two points");
}

void require_planar(std::size_t dim, const char* who) {
  if (dim != 2) {
    throw DimensionMismatch(std::string(who) + ": requires d = 2, got d = " + std::to_string(dim));
  }
}

double cross(PointView o, PointView a, PointView b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::pair<std::size_t, std::size_t> ordered(std::size_t a, std::size_t b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

}  // namespace

DiameterResult diameter_bruteforce(const PointSet& points) {
  require_pairs(points, "diameter_bruteforce");
  const std::size_t n = points.size();
  DiameterResult out;
  out.value = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(points[i], points[j]);
      if (d > out.value) {
        out.value = d;
        out.pair = std::pair{i, j};
      }
    }
  }
  const double tol = geometric_tol(points);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(points[i], points[j]) >= out.value - tol) ++out.pairs_at_max;
    }
  }
  out.exact = true;
  return out;
}

std::vector<std::size_t> convex_hull_2d(const PointSet& points) {
  require_planar(points.dim(), "convex_hull_2d");
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto lex = [&](std::size_t a, std::size_t b) {
    const PointView p = points[a], q = points[b];
    if (p[0] != q[0]) return p[0] < q[0];
    if (p[1] != q[1]) return p[1] < q[1];
    return a < b;
  };
  std::sort(idx.begin(), idx.end(), lex);
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](std::size_t a, std::size_t b) {
                          return points[a][0] == points[b][0] && points[a][1] == points[b][1];
                        }),
            idx.end());
  if (idx.size() <= 2) return idx;

  std::vector<std::size_t> hull(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i : idx) {
    while (k >= 2 && cross(points[hull[k - 2]], points[hull[k - 1]], points[i]) <= 0.0) --k;
    hull[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
    const std::size_t i = idx[t];
    while (k >= lower && cross(points[hull[k - 2]], points[hull[k - 1]], points[i]) <= 0.0) --k;
    hull[k++] = i;
  }
  hull.resize(k - 1);
  return hull;
}

DiameterResult diameter_calipers_2d(const PointSet& points) {
  require_planar(points.dim(), "diameter_calipers_2d");
  require_pairs(points, "diameter_calipers_2d");
  const std::vector<std::size_t> hull = convex_hull_2d(points);
  const std::size_t m = hull.size();
  DiameterResult out;
  out.exact = true;
  if (m == 1) {
    // Every point coincides.
    out.value = 0.0;
    out.pair = std::pair<std::size_t, std::size_t>{0, 1};
    out.pairs_at_max = points.size() * (points.size() - 1) / 2;
    return out;
  }

  std::set<std::pair<std::size_t, std::size_t>> candidates;
  if (m == 2) {
    candidates.insert(ordered(hull[0], hull[1]));
  } else {
    auto area = [&](std::size_t a, std::size_t b, std::size_t c) {
      return std::abs(cross(points[hull[a]], points[hull[b]], points[hull[c]]));
    };
    std::size_t j = 1;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t ni = (i + 1) % m;
      while (area(i, ni, (j + 1) % m) > area(i, ni, j)) j = (j + 1) % m;
      candidates.insert(ordered(hull[i], hull[j]));
      candidates.insert(ordered(hull[ni], hull[j]));
      candidates.insert(ordered(hull[i], hull[(j + 1) % m]));
    }
  }
  out.value = -1.0;
  for (const auto& [a, b] : candidates) {
    const double d = distance(points[a], points[b]);
    if (d > out.value) {
      out.value = d;
      out.pair = std::pair{a, b};
    }
  }
  const double tol = geometric_tol(points);
  for (const auto& [a, b] : candidates) {
    if (distance(points[a], points[b]) >= out.value - tol) ++out.pairs_at_max;
  }
  return out;
}

DiameterResult diameter_doublesweep(const PointSet& points, std::uint64_t seed,
                                    std::size_t restarts) {
  require_pairs(points, "diameter_doublesweep");
  const std::size_t n = points.size();
  Rng rng(derive_seed(seed, "diameter_doublesweep"));
  DiameterResult out;
  out.exact = false;
  out.value = -1.0;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, restarts); ++r) {
    std::size_t current = uniform_index(rng, n);
    double reached = -1.0;
    for (;;) {
      std::size_t far = current;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = distance(points[current], points[i]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far_d <= reached) break;
      reached = far_d;
      if (far_d > out.value) {
        out.value = far_d;
        out.pair = ordered(current, far);
      }
      current = far;
    }
  }
  out.pairs_at_max = 1;
  return out;
}

void TwoApproxSketch::push(PointView p) {
  if (!anchor_) {
    anchor_ = Point(p);
  } else {
    max_dist_ = std::max(max_dist_, distance(*anchor_, p));
  }
  ++count_;
}

double TwoApproxSketch::estimate() const {
  if (count_ == 0) throw InvalidArgument("stream_2approx: empty stream");
  return max_dist_;
}

std::size_t DirectionalSketch::direction_count(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("stream_eps_2d: eps must lie in (0, 1]");
  const double target = 1.0 / (1.0 + eps);
  std::size_t m = 1;
  while (std::cos(std::numbers::pi / (2.0 * static_cast<double>(m))) < target) ++m;
  return m;
}

DirectionalSketch::DirectionalSketch(double eps) : eps_(eps) {
  const std::size_t m = direction_count(eps);
  for (std::size_t j = 0; j < m; ++j) {
    const double theta = std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
    directions_.emplace_back(std::cos(theta), std::sin(theta));
  }
  extents_.assign(m, {std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity()});
}

void DirectionalSketch::push(PointView p) {
  require_planar(p.size(), "stream_eps_2d");
  for (std::size_t j = 0; j < directions_.size(); ++j) {
    const double proj = directions_[j].first * p[0] + directions_[j].second * p[1];
    extents_[j].first = std::min(extents_[j].first, proj);
    extents_[j].second = std::max(extents_[j].second, proj);
  }
  ++count_;
}

void DirectionalSketch::merge(const DirectionalSketch& other) {
  if (other.directions_.size() != directions_.size() || other.eps_ != eps_) {
    throw InvalidArgument("stream_eps_2d: cannot merge sketches built with different eps");
  }
  for (std::size_t j = 0; j < extents_.size(); ++j) {
    extents_[j].first = std::min(extents_[j].first, other.extents_[j].first);
    extents_[j].second = std::max(extents_[j].second, other.extents_[j].second);
  }
  count_ += other.count_;
}

double DirectionalSketch::estimate() const {
  if (count_ == 0) throw InvalidArgument("stream_eps_2d: empty stream");
  double best = 0.0;
  for (const auto& [lo, hi] : extents_) best = std::max(best, hi - lo);
  return best;
}

StreamEstimate stream_2approx(const PointSet& stream) {
  TwoApproxSketch sketch;
  for (std::size_t i = 0; i < stream.size(); ++i) sketch.push(stream[i]);
  return {sketch.estimate(), sketch.count()};
}

StreamEstimate stream_eps_2d(const PointSet& stream, double eps) {
  DirectionalSketch sketch(eps);
  if (!stream.empty()) require_planar(stream.dim(), "stream_eps_2d");
  for (std::size_t i = 0; i < stream.size(); ++i) sketch.push(stream[i]);
  return {sketch.estimate(), sketch.count()};
}

}  // namespace mebkit
