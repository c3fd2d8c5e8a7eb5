#include "mebkit/convexity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "mebkit/diameter.hpp"
#include "mebkit/errors.hpp"
#include "mebkit/meb.hpp"

namespace mebkit {

namespace {

constexpr double kSumTol = 1e-9;

// A nonzero alpha with sum alpha_i = 0 and sum alpha_i p_i = 0 over the
// listed points (more than d+1 of them).
Eigen::VectorXd affine_dependence(const PointSet& points, std::span<const std::size_t> idx) {
  const auto d = static_cast<Eigen::Index>(points.dim());
  const auto m = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd a(d + 1, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    PointView p = points[idx[static_cast<std::size_t>(j)]];
    for (Eigen::Index k = 0; k < d; ++k) a(k, j) = p[static_cast<std::size_t>(k)];
    a(d, j) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  Eigen::VectorXd alpha = svd.matrixV().col(m - 1);
  const double peak = alpha.cwiseAbs().maxCoeff();
  for (auto& x : alpha) {
    if (std::abs(x) <= 1e-12 * peak) x = 0.0;
  }
  return alpha;
}

}  // namespace

void validate(const ConvexCombination& combo, const PointSet& points) {
  if (combo.indices.empty() || combo.indices.size() != combo.coefficients.size()) {
    throw InvalidArgument("convex combination: indices and coefficients must be nonempty and aligned");
  }
  if (combo.target.dim() != points.dim()) {
    throw DimensionMismatch("convex combination: target dimension");
  }
  double sum = 0.0;
  std::vector<double> recon(points.dim(), 0.0);
  for (std::size_t j = 0; j < combo.indices.size(); ++j) {
    const double w = combo.coefficients[j];
    if (combo.indices[j] >= points.size()) {
      throw InvalidArgument("convex combination: index out of range");
    }
    if (!(w >= 0.0)) throw InvalidArgument("convex combination: negative coefficient");
    sum += w;
    PointView p = points[combo.indices[j]];
    for (std::size_t a = 0; a < recon.size(); ++a) recon[a] += w * p[a];
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    throw InvalidArgument("convex combination: coefficients sum to " + std::to_string(sum));
  }
  double scale = points.max_abs_coord();
  for (double x : combo.target.coords()) scale = std::max(scale, std::abs(x));
  const double tol = geometric_tol(scale);
  if (distance(recon, combo.target) > tol) {
    throw InvalidArgument("convex combination: coefficients do not reproduce the target");
  }
}

ConvexCombination caratheodory_reduce(const PointSet& points, const ConvexCombination& combo) {
  validate(combo, points);
  const std::size_t d = points.dim();
  std::vector<std::size_t> idx;
  std::vector<double> w;
  for (std::size_t j = 0; j < combo.indices.size(); ++j) {
    if (combo.coefficients[j] > 0.0) {
      idx.push_back(combo.indices[j]);
      w.push_back(combo.coefficients[j]);
    }
  }
  while (idx.size() > d + 1) {
    const std::span<const std::size_t> head(idx.data(), d + 2);
    Eigen::VectorXd alpha = affine_dependence(points, head);
    if (alpha.maxCoeff() <= 0.0) alpha = -alpha;
    // Largest t keeping w - t alpha >= 0 on the head.
    double t = std::numeric_limits<double>::infinity();
    std::size_t hit = 0;
    for (std::size_t j = 0; j < d + 2; ++j) {
      const double a = alpha(static_cast<Eigen::Index>(j));
      if (a > 0.0 && w[j] / a < t) {
        t = w[j] / a;
        hit = j;
      }
    }
    for (std::size_t j = 0; j < d + 2; ++j) w[j] -= t * alpha(static_cast<Eigen::Index>(j));
    w[hit] = 0.0;
    std::size_t keep = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (w[j] > 1e-15) {
        idx[keep] = idx[j];
        w[keep] = w[j];
        ++keep;
      }
    }
    idx.resize(keep);
    w.resize(keep);
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return ConvexCombination{std::move(idx), std::move(w), combo.target};
}

RadonPartition radon_partition(const PointSet& points) {
  const std::size_t d = points.dim();
  if (points.size() != d + 2) {
    throw InvalidArgument("radon_partition: needs exactly d+2 = " + std::to_string(d + 2) +
                          " points, got " + std::to_string(points.size()));
  }
  std::vector<std::size_t> all(d + 2);
  std::iota(all.begin(), all.end(), 0);
  Eigen::VectorXd alpha = affine_dependence(points, all);
  // Sign convention: the first nonzero coefficient is positive.
  for (double x : alpha) {
    if (x != 0.0) {
      if (x < 0.0) alpha = -alpha;
      break;
    }
  }
  RadonPartition out;
  std::vector<double> witness(d, 0.0);
  double mass = 0.0;
  for (std::size_t i = 0; i < d + 2; ++i) {
    const double a = alpha(static_cast<Eigen::Index>(i));
    out.alpha.push_back(a);
    if (a > 0.0) {
      out.positive.push_back(i);
      mass += a;
      for (std::size_t k = 0; k < d; ++k) witness[k] += a * points[i][k];
    } else {
      out.rest.push_back(i);
    }
  }
  if (!(mass > 0.0)) throw ConvergenceError("radon_partition: zero null vector");
  for (double& x : witness) x /= mass;
  out.witness = Point(std::move(witness));
  return out;
}

AABox::AABox(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw InvalidArgument("box bounds must be nonempty and of equal dimension");
  }
  for (std::size_t a = 0; a < lower.size(); ++a) {
    if (!(lower[a] <= upper[a])) throw InvalidArgument("box lower bound exceeds upper bound");
  }
}

HellyReport helly_check_boxes(std::span<const AABox> family) {
  if (family.empty()) throw InvalidArgument("helly_check_boxes: empty family");
  const std::size_t d = family[0].dim();
  for (const auto& b : family) {
    if (b.dim() != d) throw DimensionMismatch("helly_check_boxes: mixed dimensions");
  }
  const std::size_t k = family.size();
  if (k < d + 1) {
    throw InvalidArgument("helly_check_boxes: needs at least d+1 boxes");
  }

  auto meet = [&](std::span<const std::size_t> members, std::vector<double>* point) {
    for (std::size_t a = 0; a < d; ++a) {
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      for (std::size_t i : members) {
        lo = std::max(lo, family[i].lower[a]);
        hi = std::min(hi, family[i].upper[a]);
      }
      if (lo > hi) return false;
      if (point) (*point)[a] = 0.5 * (lo + hi);
    }
    return true;
  };

  HellyReport report;
  report.subfamilies_intersect = true;
  std::vector<std::size_t> combo(d + 1);
  std::iota(combo.begin(), combo.end(), 0);
  for (;;) {
    if (!meet(combo, nullptr)) {
      report.subfamilies_intersect = false;
      report.failing_subfamily = combo;
      break;
    }
    // Next combination in lexicographic order.
    std::size_t i = d + 1;
    while (i-- > 0 && combo[i] == k - (d + 1) + i) {
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++combo[i];
    for (std::size_t j = i + 1; j <= d; ++j) combo[j] = combo[j - 1] + 1;
  }

  std::vector<std::size_t> all(k);
  std::iota(all.begin(), all.end(), 0);
  std::vector<double> point(d);
  report.family_intersects = meet(all, &point);
  if (report.family_intersects) report.common_point = Point(std::move(point));
  report.implication_holds = !report.subfamilies_intersect || report.family_intersects;
  return report;
}

double fractional_helly_beta(std::size_t d, double alpha) {
  if (d < 1) throw InvalidArgument("fractional_helly_beta: d must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("fractional_helly_beta: alpha must lie in (0, 1]");
  }
  return 1.0 - std::pow(1.0 - alpha, 1.0 / static_cast<double>(d + 1));
}

JungBound jung_bound(const PointSet& points) {
  if (points.size() < 2) throw InvalidArgument("jung_bound: needs at least two points");
  const double d = static_cast<double>(points.dim());
  JungBound out;
  out.diameter = diameter_bruteforce(points).value;
  out.bound = std::sqrt(d / (2.0 * (d + 1.0))) * out.diameter;
  out.meb_radius = exact_meb(points).ball.radius;
  out.tight = std::abs(out.meb_radius - out.bound) <= geometric_tol(points);
  return out;
}

double barycentric_circumradius(const PointSet& points) {
  const std::size_t n = points.size();
  if (n < 2) throw InvalidArgument("barycentric_circumradius: needs at least two points");
  if (n > kMaxBarycentricPoints) {
    throw GuardExceeded("barycentric_circumradius: n exceeds the enumeration guard of 16");
  }
  const std::size_t d = points.dim();
  const std::size_t max_size = std::min(n, d + 1);
  double best = 0.0;
  std::vector<std::size_t> members;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size < 2 || size > max_size) continue;
    members.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) members.push_back(i);
    }
    const PointSet subset = points.subset(members);
    const Point bary = barycenter(subset);
    for (std::size_t i = 0; i < subset.size(); ++i) {
      best = std::max(best, distance(subset[i], bary));
    }
  }
  return best;
}

double dist_to_hull(PointView a, const PointSet& hull) {
  return nearest_in_hull(a, hull).distance;
}

NodimSelection nodim_caratheodory(const PointSet& points, const ConvexCombination& combo,
                                  std::size_t r) {
  validate(combo, points);
  const std::size_t n = points.size();
  if (r < 1 || r > n) {
    throw InvalidArgument("nodim_caratheodory: r must lie in [1, n], got " + std::to_string(r));
  }
  NodimSelection out;
  out.diameter = n >= 2 ? diameter_bruteforce(points).value : 0.0;
  std::vector<char> used(n, 0);
  std::vector<std::size_t> trial;
  for (std::size_t step = 0; step < r; ++step) {
    std::size_t best = n;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      trial = out.chosen;
      trial.push_back(i);
      const double dist = dist_to_hull(combo.target, points.subset(trial));
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    used[best] = 1;
    out.chosen.push_back(best);
    out.achieved = best_dist;
  }
  return out;
}

}  // namespace mebkit
