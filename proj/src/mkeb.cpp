#include "mebkit/mkeb.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "mebkit/errors.hpp"
#include "mebkit/meb.hpp"
#include "mebkit/parallel.hpp"
#include "mebkit/random.hpp"

namespace mebkit {

namespace {

// (radius, lexicographic center) order; makes the reduction schedule-free.
bool better(const Ball& a, const Ball& b) {
  if (a.radius != b.radius) return a.radius < b.radius;
  return a.center.coords() < b.center.coords();
}

std::vector<std::size_t> covered_by(const PointSet& points, const Ball& ball, double tol) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (ball.contains(points[i], tol)) out.push_back(i);
  }
  return out;
}

class CandidateSearch {
 public:
  CandidateSearch(const PointSet& points, std::size_t k, double tol)
      : points_(points), k_(k), tol_(tol) {}

  // All candidates whose smallest index is `first`.
  void run_from(std::size_t first) {
    subset_.assign(1, first);
    visit();
  }

  const std::optional<Ball>& best() const { return best_; }

 private:
  void consider(const Ball& ball) {
    if (best_ && !better(ball, *best_)) return;
    std::size_t count = 0;
    for (std::size_t i = 0; i < points_.size() && count < k_; ++i) {
      if (ball.contains(points_[i], tol_)) ++count;
    }
    if (count >= k_) best_ = ball;
  }

  void visit() {
    if (auto ball = try_circumball(points_, subset_)) {
      consider(*ball);
    } else {
      return;  // supersets of a dependent set are dependent too
    }
    if (subset_.size() == points_.dim() + 1) return;
    for (std::size_t j = subset_.back() + 1; j < points_.size(); ++j) {
      subset_.push_back(j);
      visit();
      subset_.pop_back();
    }
  }

  const PointSet& points_;
  std::size_t k_;
  double tol_;
  std::vector<std::size_t> subset_;
  std::optional<Ball> best_;
};

}  // namespace

MkebSolution exact_mkeb(const PointSet& points, std::size_t k) {
  const std::size_t n = points.size();
  if (n == 0) throw InvalidArgument("exact_mkeb: empty point set");
  if (k < 1 || k > n) {
    throw InvalidArgument("exact_mkeb: k must lie in [1, n], got " + std::to_string(k));
  }
  const double budget = std::pow(static_cast<double>(n), static_cast<double>(points.dim() + 1));
  if (budget > kMkebCandidateBudget) {
    throw GuardExceeded("exact_mkeb: n^(d+1) = " + std::to_string(budget) +
                        " exceeds the candidate budget 1e7; use the sampled variant");
  }
  const double tol = geometric_tol(points);

  std::vector<std::optional<Ball>> per_task(n);
  parallel_tasks(n, [&](std::size_t first) {
    CandidateSearch search(points, k, tol);
    search.run_from(first);
    per_task[first] = search.best();
  });
  std::optional<Ball> best;
  for (auto& b : per_task) {
    if (b && (!best || better(*b, *best))) best = std::move(b);
  }
  // k <= n and the zero-radius ball at any point covers >= 1 point, and
  // circumballs of the full support cover everything, so a candidate exists.
  if (!best) throw ConvergenceError("exact_mkeb: no candidate covers k points");

  MkebSolution out;
  out.covered = covered_by(points, *best, tol);
  out.ball = std::move(*best);
  out.k = k;
  return out;
}

std::size_t outlier_sample_size(std::size_t d, double eps, double delta) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidArgument("eps must lie in (0, 1]");
  if (!(delta > 0.0 && delta <= 1.0)) throw InvalidArgument("delta must lie in (0, 1]");
  const double dd = static_cast<double>(d);
  const double m = (dd + 1.0) / std::pow(eps, dd + 1.0) * std::log(1.0 / delta);
  if (!std::isfinite(m) || m > 1e15) return static_cast<std::size_t>(1e15);
  return std::max<std::size_t>(1, ceil_count(m));
}

MkebSolution outlier_meb_sample(const PointSet& points, double eps, double delta,
                                std::uint64_t seed) {
  const std::size_t n = points.size();
  if (n == 0) throw InvalidArgument("outlier_meb_sample: empty point set");
  const std::size_t m = outlier_sample_size(points.dim(), eps, delta);
  const double tol = geometric_tol(points);

  MkebSolution out;
  out.k = ceil_count((1.0 - eps) * static_cast<double>(n));
  out.sample_size = std::min(m, n);
  if (m >= n) {
    out.ball = exact_meb(points).ball;
    out.exact_path = true;
  } else {
    Rng rng(derive_seed(seed, "outlier_meb_sample"));
    std::vector<std::size_t> sample(m);
    for (auto& s : sample) s = uniform_index(rng, n);
    out.ball = exact_meb(points.subset(sample)).ball;
    out.exact_path = false;
  }
  out.covered = covered_by(points, out.ball, tol);
  return out;
}

}  // namespace mebkit
