#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mebkit/geometry.hpp"

namespace mebkit {

// sum_i coefficients[i] * P[indices[i]] == target, coefficients on the simplex.
struct ConvexCombination {
  std::vector<std::size_t> indices;
  std::vector<double> coefficients;
  Point target;
};

// Throws InvalidArgument unless the combination is valid over `points`:
// nonnegative coefficients summing to 1 (within 1e-9) that reproduce the
// target within the geometric tolerance.
void validate(const ConvexCombination& combo, const PointSet& points);

// Equivalent combination with at most d+1 positive coefficients. While more
// than d+1 points are active, an affine dependence among d+2 of them is found
// and weight is shifted along it until one coefficient reaches zero.
ConvexCombination caratheodory_reduce(const PointSet& points, const ConvexCombination& combo);

struct RadonPartition {
  std::vector<std::size_t> positive;   // alpha_i > 0
  std::vector<std::size_t> rest;       // alpha_i <= 0
  std::vector<double> alpha;           // sum alpha = 0, sum alpha_i p_i = 0
  Point witness;                       // in conv(positive) and conv(rest)
};

// Radon partition of exactly d+2 points from a null vector of
// [p_1 ... p_{d+2}; 1 ... 1].
RadonPartition radon_partition(const PointSet& points);

// Axis-aligned box, lower <= upper on every axis.
struct AABox {
  std::vector<double> lower;
  std::vector<double> upper;

  AABox(std::vector<double> lower, std::vector<double> upper);
  std::size_t dim() const { return lower.size(); }
};

struct HellyReport {
  bool subfamilies_intersect = false;  // every (d+1)-subfamily meets
  bool family_intersects = false;      // the whole family meets
  bool implication_holds = true;       // !subfamilies_intersect || family_intersects
  std::optional<Point> common_point;   // present when the family meets
  std::vector<std::size_t> failing_subfamily;  // a (d+1)-subfamily that does not meet
};

// Checks Helly's implication on a family of k >= d+1 boxes by enumerating
// all (d+1)-subfamilies.
HellyReport helly_check_boxes(std::span<const AABox> family);

// 1 - (1 - alpha)^(1/(d+1)).
double fractional_helly_beta(std::size_t d, double alpha);

struct JungBound {
  double bound = 0.0;       // sqrt(d / (2(d+1))) * diam
  double diameter = 0.0;
  double meb_radius = 0.0;
  bool tight = false;       // meb radius attains the bound within tol
};

JungBound jung_bound(const PointSet& points);

inline constexpr std::size_t kMaxBarycentricPoints = 16;

// max over subsets T with 2 <= |T| <= d+1 of max_{v in T} |v - bary(T)|.
double barycentric_circumradius(const PointSet& points);

double dist_to_hull(PointView a, const PointSet& hull);

struct NodimSelection {
  std::vector<std::size_t> chosen;
  double achieved = 0.0;  // dist(a, conv chosen)
  double diameter = 0.0;
};

// Greedily picks r points, each step adding the point that brings conv(Q)
// closest to the target of `combo`. Guarantees achieved <= diam / sqrt(r).
NodimSelection nodim_caratheodory(const PointSet& points, const ConvexCombination& combo,
                                  std::size_t r);

}  // namespace mebkit
