#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mebkit/errors.hpp"
#include "mebkit/geometry.hpp"

namespace mebkit {

enum class MebAlgorithm { exact, hopp_reeve, badoiu_clarkson, elzinga_hearn };

const char* to_string(MebAlgorithm algo);

// Boundary points with convex multipliers expressing the center: the
// Kuhn-Tucker certificate of an enclosing ball. Empty for approximate solvers.
struct SupportSet {
  std::vector<std::size_t> indices;
  std::vector<double> multipliers;
};

struct MebSolution {
  Ball ball;
  SupportSet support;
  double squared_radius = 0.0;
  std::size_t iterations = 0;
  MebAlgorithm algorithm = MebAlgorithm::exact;
};

// Exact minimum enclosing ball by move-to-front recursion over boundary sets
// of size <= d+1. The processing order is a shuffle seeded by `seed`.
MebSolution exact_meb(const PointSet& points, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Hopp-Reeve geometric construction.

// Worst-case iteration count sum_{i=2}^{min(n, d+1)} C(n, i), computed in
// exact integer arithmetic. Returns nullopt on 64-bit overflow.
std::optional<std::uint64_t> hopp_reeve_iteration_bound(std::size_t n, std::size_t d);

// min(bound, 10 n (d+1)); an overflowing bound saturates to the hard cap.
std::uint64_t hopp_reeve_iteration_cap(std::size_t n, std::size_t d);

// Thrown when the construction cycles past its iteration cap, which happens
// in floating point when contact sets start repeating.
class HoppReeveLoopError : public ConvergenceError {
 public:
  HoppReeveLoopError(const std::string& what, MebSolution best)
      : ConvergenceError(what), best_(std::move(best)) {}
  const MebSolution& best() const noexcept { return best_; }

 private:
  MebSolution best_;
};

// Starts from center p_1 with Q = {farthest point from p_1}. Each iteration
// replaces Q by the constraining points of MEB(Q), then slides the center
// toward that ball's center until a new point touches the sphere. The
// reported iteration count excludes the initial singleton-Q step.
MebSolution hopp_reeve_meb(const PointSet& points);

// ---------------------------------------------------------------------------
// Badoiu-Clarkson core-set iteration.

struct BadoiuClarksonResult {
  MebSolution solution;
  // Start index followed by the farthest point chosen at each iteration.
  std::vector<std::size_t> core_indices;
  // c_1 .. c_k, filled only when requested.
  std::vector<Point> centers;
};

// c_1 = start point; c_i = c_{i-1} + (p_i - c_{i-1}) / i with p_i the point
// farthest from c_{i-1} (lowest index on ties); radius max_x |x - c_k|.
// Without a seed the start is the first point, otherwise a seeded uniform pick.
BadoiuClarksonResult badoiu_clarkson(const PointSet& points, std::size_t k,
                                     std::optional<std::uint64_t> seed = std::nullopt,
                                     bool record_centers = false);

// ---------------------------------------------------------------------------
// Elzinga-Hearn quadratic programming dual.

struct DualSolution {
  MebSolution solution;
  std::vector<double> lambda;  // one multiplier per input point
  double dual_objective = 0.0;
  double duality_gap = 0.0;    // max_i |p_i - c|^2 - s, absolute
};

class DualConvergenceError : public ConvergenceError {
 public:
  DualConvergenceError(const std::string& what, double gap)
      : ConvergenceError(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

// sum_i lambda_i p_i^T p_i - lambda^T (A^T A) lambda.
double dual_objective(const PointSet& points, std::span<const double> lambda);

// Maximizes the dual over the unit simplex with away-step Frank-Wolfe and
// exact line search, then recovers c = sum lambda_i p_i and
// s = sum lambda_i |p_i - c|^2. Stops when the duality gap is at most
// `tol * s`. Throws DualConvergenceError after `max_iter` steps.
DualSolution elzinga_hearn_dual(const PointSet& points, double tol = 1e-6,
                                std::size_t max_iter = 100000);

// Max-norm residuals of the Kuhn-Tucker system for (c, s = r^2, lambda).
struct KtResiduals {
  double multiplier_sum = 0.0;   // |sum lambda - 1|
  double stationarity = 0.0;     // |sum lambda_i (p_i - c)|_inf
  double slackness = 0.0;        // max |lambda_i (s - |p_i - c|^2)|
  double negativity = 0.0;       // max(0, -min lambda_i)
  double feasibility = 0.0;      // max(0, max_i |p_i - c|^2 - s)

  double max() const;
};

KtResiduals kt_residuals(const PointSet& points, const Ball& ball,
                         std::span<const double> lambda);

}  // namespace mebkit
