#include "mebkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "mebkit/errors.hpp"
#include "mebkit/meb.hpp"

namespace mebkit {

namespace {

void check_finite(PointView p) {
  for (double x : p) {
    if (!std::isfinite(x)) throw InvalidArgument("point coordinate is not finite");
  }
}

void check_same_dim(PointView p, PointView q) {
  if (p.size() != q.size()) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(p.size()) +
                            " vs " + std::to_string(q.size()));
  }
}

// Scaled-pivot threshold deciding affine dependence.
constexpr double kPivotTol = 1e-12;

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidArgument("point dimension must be >= 1");
  check_finite(coords_);
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::vector<double>(coords)) {}

Point::Point(PointView coords)
    : Point(std::vector<double>(coords.begin(), coords.end())) {}

PointSet::PointSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidArgument("point set dimension must be >= 1");
}

PointSet::PointSet(std::initializer_list<std::initializer_list<double>> rows) {
  for (const auto& row : rows) {
    std::vector<double> r(row);
    push_back(r);
  }
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  PointSet out;
  for (const auto& r : rows) out.push_back(r);
  return out;
}

PointSet PointSet::from_flat(std::size_t dim, std::vector<double> flat) {
  PointSet out(dim);
  if (flat.size() % dim != 0) {
    throw InvalidArgument("flat coordinate array is not a multiple of the dimension");
  }
  check_finite(flat);
  out.data_ = std::move(flat);
  return out;
}

void PointSet::push_back(PointView p) {
  if (p.empty()) throw InvalidArgument("point dimension must be >= 1");
  if (dim_ == 0) dim_ = p.size();
  if (p.size() != dim_) {
    throw DimensionMismatch("point of dimension " + std::to_string(p.size()) +
                            " added to set of dimension " + std::to_string(dim_));
  }
  check_finite(p);
  data_.insert(data_.end(), p.begin(), p.end());
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  PointSet out;
  out.dim_ = dim_;
  out.data_.reserve(indices.size() * dim_);
  for (std::size_t i : indices) {
    auto p = (*this)[i];
    out.data_.insert(out.data_.end(), p.begin(), p.end());
  }
  return out;
}

double PointSet::max_abs_coord() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

bool Ball::contains(PointView p, double tol) const {
  return distance(center, p) <= radius + tol;
}

ConvexBody ConvexBody::ball(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument("ball body radius must be positive");
  }
  return ConvexBody(BallBody{radius});
}

ConvexBody ConvexBody::box(std::vector<double> half_extents) {
  if (half_extents.empty()) throw InvalidArgument("box body needs at least one axis");
  for (double h : half_extents) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw InvalidArgument("box body half-extents must be positive");
    }
  }
  return ConvexBody(BoxBody{std::move(half_extents)});
}

double geometric_tol(const PointSet& points) {
  return geometric_tol(points.max_abs_coord());
}

double squared_distance(PointView p, PointView q) {
  check_same_dim(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double t = p[i] - q[i];
    s += t * t;
  }
  return s;
}

double distance(PointView p, PointView q) { return std::sqrt(squared_distance(p, q)); }

double dot(PointView p, PointView q) {
  check_same_dim(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * q[i];
  return s;
}

std::optional<Ball> try_circumball(const PointSet& points,
                                   std::span<const std::size_t> indices) {
  const std::size_t m = indices.size();
  const std::size_t d = points.dim();
  if (m == 0) throw InvalidArgument("circumball of an empty set");
  if (m > d + 1) return std::nullopt;

  PointView origin = points[indices[0]];
  if (m == 1) return Ball{Point(origin), 0.0};
  if (m == 2) {
    PointView q = points[indices[1]];
    std::vector<double> mid(d);
    for (std::size_t a = 0; a < d; ++a) mid[a] = 0.5 * (origin[a] + q[a]);
    if (distance(origin, q) == 0.0) return std::nullopt;
    const double r = std::max(distance(mid, origin), distance(mid, q));
    return Ball{Point(std::move(mid)), r};
  }

  // With v_j = p_j - p_0 and center c = p_0 + sum_j mu_j v_j, equating
  // |c - p_j|^2 = |c - p_0|^2 gives the Gram system G mu = |v|^2 / 2.
  const std::size_t k = m - 1;
  std::vector<std::vector<double>> v(k, std::vector<double>(d));
  for (std::size_t j = 0; j < k; ++j) {
    PointView p = points[indices[j + 1]];
    for (std::size_t a = 0; a < d; ++a) v[j][a] = p[a] - origin[a];
  }
  std::vector<double> g(k * k), rhs(k);
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      double s = 0.0;
      for (std::size_t a = 0; a < d; ++a) s += v[i][a] * v[j][a];
      g[i * k + j] = g[j * k + i] = s;
    }
    rhs[i] = 0.5 * g[i * k + i];
    scale = std::max(scale, g[i * k + i]);
  }
  if (scale == 0.0) return std::nullopt;

  // Gaussian elimination with partial pivoting.
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(g[r * k + col]) > std::abs(g[best * k + col])) best = r;
    }
    if (std::abs(g[best * k + col]) <= kPivotTol * scale) return std::nullopt;
    if (best != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(g[best * k + c], g[col * k + c]);
      std::swap(rhs[best], rhs[col]);
    }
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = g[r * k + col] / g[col * k + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < k; ++c) g[r * k + c] -= f * g[col * k + c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> mu(k);
  for (std::size_t i = k; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t c = i + 1; c < k; ++c) s -= g[i * k + c] * mu[c];
    mu[i] = s / g[i * k + i];
  }

  std::vector<double> center(origin.begin(), origin.end());
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t a = 0; a < d; ++a) center[a] += mu[j] * v[j][a];
  }
  double radius = 0.0;
  for (std::size_t i : indices) radius = std::max(radius, distance(center, points[i]));
  return Ball{Point(std::move(center)), radius};
}

Ball circumball(const PointSet& points) {
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (idx.empty()) throw InvalidArgument("circumball of an empty set");
  if (auto b = try_circumball(points, idx)) return *b;
  throw DegenerateInput("circumball: points are affinely dependent", std::move(idx));
}

Point barycenter(const PointSet& points) {
  if (points.empty()) throw InvalidArgument("barycenter of an empty set");
  std::vector<double> c(points.dim(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    PointView p = points[i];
    for (std::size_t a = 0; a < c.size(); ++a) c[a] += p[a];
  }
  const double n = static_cast<double>(points.size());
  for (double& x : c) x /= n;
  return Point(std::move(c));
}

bool fits_in_translate(const ConvexBody& body, const PointSet& points) {
  if (points.empty()) throw InvalidArgument("containment test on an empty set");
  const double tol = geometric_tol(points);
  if (const auto* ball = std::get_if<BallBody>(&body.shape())) {
    return exact_meb(points).ball.radius <= ball->radius + tol;
  }
  const auto& box = std::get<BoxBody>(body.shape());
  if (box.half_extents.size() != points.dim()) {
    throw DimensionMismatch("box body dimension does not match the point set");
  }
  for (std::size_t a = 0; a < points.dim(); ++a) {
    double lo = points[0][a], hi = lo;
    for (std::size_t i = 1; i < points.size(); ++i) {
      lo = std::min(lo, points[i][a]);
      hi = std::max(hi, points[i][a]);
    }
    if ((hi - lo) / 2.0 > box.half_extents[a] + tol) return false;
  }
  return true;
}

HullProjection nearest_in_hull(PointView a, const PointSet& hull, double rel_tol) {
  if (hull.empty()) throw InvalidArgument("projection onto an empty hull");
  check_same_dim(a, hull[0]);
  const std::size_t n = hull.size();
  const std::size_t d = hull.dim();

  Eigen::MatrixXd y(d, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) y(k, i) = hull[i][k] - a[k];
  }
  const double spread = y.colwise().squaredNorm().maxCoeff();
  const double stop = rel_tol * spread;
  constexpr double kWeightEps = 1e-14;

  // Corral: active indices with their convex weights.
  std::vector<std::size_t> active;
  std::vector<double> w;
  {
    Eigen::Index best = 0;
    y.colwise().squaredNorm().minCoeff(&best);
    active.push_back(static_cast<std::size_t>(best));
    w.push_back(1.0);
  }
  auto current = [&]() {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < active.size(); ++i) {
      x += w[i] * y.col(static_cast<Eigen::Index>(active[i]));
    }
    return x;
  };
  // Affine minimizer over the corral: minimize |y_0 + D mu|.
  auto affine_min = [&]() {
    const std::size_t k = active.size();
    std::vector<double> v(k, 0.0);
    if (k == 1) {
      v[0] = 1.0;
      return v;
    }
    Eigen::MatrixXd dmat(d, k - 1);
    const auto y0 = y.col(static_cast<Eigen::Index>(active[0]));
    for (std::size_t j = 1; j < k; ++j) {
      dmat.col(static_cast<Eigen::Index>(j - 1)) =
          y.col(static_cast<Eigen::Index>(active[j])) - y0;
    }
    Eigen::VectorXd mu = dmat.colPivHouseholderQr().solve(-y0);
    v[0] = 1.0 - mu.sum();
    for (std::size_t j = 1; j < k; ++j) v[j] = mu(static_cast<Eigen::Index>(j - 1));
    return v;
  };

  HullProjection out;
  Eigen::VectorXd x = current();
  const std::size_t max_major = 50 * (n + d) + 100;
  std::size_t iter = 0;
  for (; iter < max_major; ++iter) {
    if (x.squaredNorm() <= stop) break;
    Eigen::Index j = 0;
    (x.transpose() * y).minCoeff(&j);
    const double gap = x.squaredNorm() - x.dot(y.col(j));
    if (gap <= stop) break;
    if (std::find(active.begin(), active.end(), static_cast<std::size_t>(j)) !=
        active.end()) {
      break;
    }
    active.push_back(static_cast<std::size_t>(j));
    w.push_back(0.0);

    for (std::size_t minor = 0; minor <= d + 2; ++minor) {
      std::vector<double> v = affine_min();
      bool interior = true;
      for (double vi : v) interior = interior && vi > kWeightEps;
      if (interior) {
        w = std::move(v);
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] <= kWeightEps && w[i] - v[i] > 0.0) {
          theta = std::min(theta, w[i] / (w[i] - v[i]));
        }
      }
      for (std::size_t i = 0; i < v.size(); ++i) w[i] = theta * v[i] + (1.0 - theta) * w[i];
      std::size_t keep = 0;
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (w[i] > kWeightEps) {
          active[keep] = active[i];
          w[keep] = w[i];
          ++keep;
        }
      }
      if (keep == 0) {
        // Cannot happen in exact arithmetic; fall back to the newest point.
        active.assign(1, static_cast<std::size_t>(j));
        w.assign(1, 1.0);
        break;
      }
      active.resize(keep);
      w.resize(keep);
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      for (double& wi : w) wi /= total;
    }
    x = current();
  }
  out.iterations = iter;
  out.converged = iter < max_major;
  out.weights.assign(n, 0.0);
  for (std::size_t i = 0; i < active.size(); ++i) out.weights[active[i]] = w[i];
  out.distance = x.norm();
  std::vector<double> nearest(d);
  for (std::size_t k = 0; k < d; ++k) nearest[k] = a[k] + x(static_cast<Eigen::Index>(k));
  out.nearest = Point(std::move(nearest));
  return out;
}

}  // namespace mebkit
