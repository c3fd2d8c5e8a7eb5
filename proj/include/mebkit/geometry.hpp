#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace mebkit {

using PointView = std::span<const double>;

// A point in R^d with finite coordinates, d >= 1.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);
  explicit Point(PointView coords);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }
  PointView view() const { return coords_; }
  operator PointView() const { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

// Finite set (multiset) of points sharing one dimension, stored row-major.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim);
  PointSet(std::initializer_list<std::initializer_list<double>> rows);

  static PointSet from_rows(const std::vector<std::vector<double>>& rows);
  // `flat` holds n*dim coordinates, row-major.
  static PointSet from_flat(std::size_t dim, std::vector<double> flat);

  void push_back(PointView p);

  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return data_.empty(); }

  PointView operator[](std::size_t i) const {
    return PointView(data_.data() + i * dim_, dim_);
  }
  Point point(std::size_t i) const { return Point((*this)[i]); }
  PointSet subset(std::span<const std::size_t> indices) const;
  std::span<const double> data() const { return data_; }

  // Largest absolute coordinate, 0 for an empty set.
  double max_abs_coord() const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

struct Ball {
  Point center;
  double radius = 0.0;

  bool contains(PointView p, double tol) const;
};

struct BallBody {
  double radius;
};

struct BoxBody {
  std::vector<double> half_extents;
};

// Symmetric convex body in translation-free form. Only its shape matters; the
// testers ask whether some translate of it contains a point set.
class ConvexBody {
 public:
  static ConvexBody ball(double radius);
  static ConvexBody box(std::vector<double> half_extents);

  const std::variant<BallBody, BoxBody>& shape() const { return shape_; }
  bool is_ball() const { return std::holds_alternative<BallBody>(shape_); }

 private:
  explicit ConvexBody(std::variant<BallBody, BoxBody> shape)
      : shape_(std::move(shape)) {}
  std::variant<BallBody, BoxBody> shape_;
};

// Comparison tolerance used for every boundary/containment test:
// 1e-9 * (1 + scale), scale being the largest absolute coordinate involved.
inline constexpr double kRelativeTol = 1e-9;
inline double geometric_tol(double scale) { return kRelativeTol * (1.0 + scale); }
double geometric_tol(const PointSet& points);

double squared_distance(PointView p, PointView q);
double distance(PointView p, PointView q);
double dot(PointView p, PointView q);

// Ball through all points whose center lies in their affine hull. Requires
// 1 <= m <= d+1 affinely independent points; throws DegenerateInput otherwise.
Ball circumball(const PointSet& points);

// Same, over `points[indices]`. Returns nullopt when the subset is affinely
// dependent (scaled pivot below 1e-12).
std::optional<Ball> try_circumball(const PointSet& points,
                                   std::span<const std::size_t> indices);

Point barycenter(const PointSet& points);

// True iff some translate of `body` contains all of `points`.
bool fits_in_translate(const ConvexBody& body, const PointSet& points);

// Euclidean projection of a point onto the convex hull of a finite set.
struct HullProjection {
  double distance = 0.0;
  Point nearest;
  std::vector<double> weights;  // one per hull point, convex combination
  std::size_t iterations = 0;
  bool converged = true;
};

// Wolfe's minimum-norm-point method on the translated set {q - a}. Each major
// step adds the support point minimizing <x, q - a>; the loop stops once the
// improvement certificate |x|^2 - <x, q_j - a> falls below
// `rel_tol * max_j |q_j - a|^2`. At most d+1 weights are nonzero.
HullProjection nearest_in_hull(PointView a, const PointSet& hull,
                               double rel_tol = 1e-15);

}  // namespace mebkit
