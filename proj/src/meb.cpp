#include "mebkit/meb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <numeric>
#include <string>

#include "mebkit/random.hpp"

namespace mebkit {

namespace {

constexpr double kPruneMultiplier = 1e-10;

void require_nonempty(const PointSet& points, const char* who) {
  if (points.empty()) throw InvalidArgument(std::string(who) + ": empty point set");
}

// Lowest-index farthest point from `c`.
std::size_t farthest_from(const PointSet& points, PointView c, double* dist2 = nullptr) {
  std::size_t best = 0;
  double best_d = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = squared_distance(points[i], c);
    if (d > best_d) {
      best_d = d;
      best = i;
    }
  }
  if (dist2) *dist2 = best_d;
  return best;
}

double enclosing_radius(const PointSet& points, PointView c) {
  double r2 = 0.0;
  farthest_from(points, c, &r2);
  return std::sqrt(r2);
}

// Move-to-front recursion. `boundary` holds the points forced onto the sphere.
class MoveToFront {
 public:
  MoveToFront(const PointSet& points, std::uint64_t seed)
      : points_(points), dim_(points.dim()), tol_(geometric_tol(points)) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, "exact_meb"));
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[uniform_index(rng, i)]);
    }
    order_.assign(order.begin(), order.end());
  }

  void run() { solve(order_.end()); }

  // Pivot a violating point to the front and rerun. Returns false when every
  // point is enclosed.
  bool repair() {
    for (auto it = order_.begin(); it != order_.end(); ++it) {
      if (!inside(*it)) {
        order_.splice(order_.begin(), order_, it);
        boundary_.clear();
        solve(order_.end());
        return true;
      }
    }
    return false;
  }

  const Ball& ball() const { return ball_; }

 private:
  bool inside(std::size_t i) const {
    return has_ball_ && distance(ball_.center, points_[i]) <= ball_.radius + tol_;
  }

  void set_ball_from_boundary() {
    if (boundary_.empty()) {
      has_ball_ = false;
      return;
    }
    auto b = try_circumball(points_, boundary_);
    // The caller only pushes points that keep the boundary independent.
    ball_ = *b;
    has_ball_ = true;
  }

  void solve(std::list<std::size_t>::iterator end) {
    set_ball_from_boundary();
    if (boundary_.size() == dim_ + 1) return;
    for (auto it = order_.begin(); it != end;) {
      auto next = std::next(it);
      const std::size_t i = *it;
      if (!inside(i)) {
        boundary_.push_back(i);
        if (!try_circumball(points_, boundary_)) {
          // Affinely dependent with the boundary: in exact arithmetic such a
          // point is already on the sphere.
          boundary_.pop_back();
        } else {
          solve(it);
          boundary_.pop_back();
          order_.splice(order_.begin(), order_, it);
        }
      }
      it = next;
    }
  }

  const PointSet& points_;
  std::size_t dim_;
  double tol_;
  std::list<std::size_t> order_;
  std::vector<std::size_t> boundary_;
  Ball ball_;
  bool has_ball_ = false;
};

// Convex multipliers expressing `center` over the boundary points of the ball.
SupportSet support_of(const PointSet& points, const Ball& ball) {
  const double tol = geometric_tol(points);
  std::vector<std::size_t> boundary;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (ball.radius - distance(ball.center, points[i]) <= tol) boundary.push_back(i);
  }
  SupportSet out;
  if (boundary.empty()) return out;
  const HullProjection proj = nearest_in_hull(ball.center, points.subset(boundary));
  double total = 0.0;
  for (std::size_t j = 0; j < boundary.size(); ++j) {
    if (proj.weights[j] >= kPruneMultiplier) total += proj.weights[j];
  }
  for (std::size_t j = 0; j < boundary.size(); ++j) {
    if (proj.weights[j] >= kPruneMultiplier) {
      out.indices.push_back(boundary[j]);
      out.multipliers.push_back(proj.weights[j] / total);
    }
  }
  return out;
}

MebSolution make_solution(Ball ball, SupportSet support, std::size_t iterations,
                          MebAlgorithm algo) {
  MebSolution s;
  s.squared_radius = ball.radius * ball.radius;
  s.ball = std::move(ball);
  s.support = std::move(support);
  s.iterations = iterations;
  s.algorithm = algo;
  return s;
}

}  // namespace

const char* to_string(MebAlgorithm algo) {
  switch (algo) {
    case MebAlgorithm::exact: return "exact";
    case MebAlgorithm::hopp_reeve: return "hopp_reeve";
    case MebAlgorithm::badoiu_clarkson: return "badoiu_clarkson";
    case MebAlgorithm::elzinga_hearn: return "elzinga_hearn";
  }
  return "unknown";
}

MebSolution exact_meb(const PointSet& points, std::uint64_t seed) {
  require_nonempty(points, "exact_meb");
  MoveToFront mtf(points, seed);
  mtf.run();
  std::size_t passes = 1;
  while (mtf.repair()) {
    if (++passes > points.size() + 2) {
      throw ConvergenceError("exact_meb: move-to-front did not stabilize");
    }
  }
  Ball ball = mtf.ball();
  ball.radius = enclosing_radius(points, ball.center);
  SupportSet support = support_of(points, ball);
  return make_solution(std::move(ball), std::move(support), passes, MebAlgorithm::exact);
}

std::optional<std::uint64_t> hopp_reeve_iteration_bound(std::size_t n, std::size_t d) {
  using wide = unsigned __int128;
  constexpr wide kMax = std::numeric_limits<std::uint64_t>::max();
  const std::size_t top = std::min(n, d + 1);
  wide total = 0;
  wide binom = n;  // C(n, 1)
  for (std::size_t i = 2; i <= top; ++i) {
    // C(n, i) = C(n, i-1) * (n - i + 1) / i, exact since binom < 2^64.
    binom = binom * (n - i + 1) / i;
    total += binom;
    if (binom > kMax || total > kMax) return std::nullopt;
  }
  return static_cast<std::uint64_t>(total);
}

std::uint64_t hopp_reeve_iteration_cap(std::size_t n, std::size_t d) {
  const std::uint64_t hard = 10ULL * n * (d + 1);
  const auto bound = hopp_reeve_iteration_bound(n, d);
  return bound ? std::min(*bound, hard) : hard;
}

MebSolution hopp_reeve_meb(const PointSet& points) {
  const std::size_t n = points.size();
  const std::size_t d = points.dim();
  if (n < 2) throw InvalidArgument("hopp_reeve_meb: needs at least two points");
  const double tol = geometric_tol(points);
  const std::uint64_t cap = hopp_reeve_iteration_cap(n, d);

  std::vector<double> c(points[0].begin(), points[0].end());
  std::vector<std::size_t> q{farthest_from(points, c)};
  std::vector<char> in_q(n, 0);
  in_q[q[0]] = 1;
  SupportSet support;
  std::uint64_t iterations = 0;

  auto current = [&](std::size_t iters) {
    Ball b{Point(c), enclosing_radius(points, c)};
    return make_solution(std::move(b), support, iters, MebAlgorithm::hopp_reeve);
  };

  for (;;) {
    if (q.size() >= 2 && ++iterations > cap) {
      throw HoppReeveLoopError(
          "hopp_reeve_meb: iteration cap " + std::to_string(cap) + " exceeded",
          current(iterations - 1));
    }
    // Step 1: target t = center of MEB(Q); keep only constraining points.
    const MebSolution inner = exact_meb(points.subset(q));
    std::vector<std::size_t> kept;
    support = SupportSet{};
    for (std::size_t j = 0; j < inner.support.indices.size(); ++j) {
      if (inner.support.multipliers[j] >= kPruneMultiplier) {
        const std::size_t idx = q[inner.support.indices[j]];
        kept.push_back(idx);
        support.indices.push_back(idx);
        support.multipliers.push_back(inner.support.multipliers[j]);
      }
    }
    std::fill(in_q.begin(), in_q.end(), 0);
    for (std::size_t i : kept) in_q[i] = 1;
    q = std::move(kept);
    const auto& t = inner.ball.center.coords();

    if (q.size() == d + 1) {
      c = t;
      break;
    }

    // Step 2: slide c toward t. Along c + s v every point of Q stays on the
    // sphere; an outside point p touches it where
    //   |c - q|^2 - |c - p|^2 = 2 s v.(q - p).
    std::vector<double> v(d);
    for (std::size_t a = 0; a < d; ++a) v[a] = t[a] - c[a];
    const PointView anchor = points[q[0]];
    const double r2 = squared_distance(c, anchor);
    double best_s = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, std::size_t>> contacts;
    for (std::size_t i = 0; i < n; ++i) {
      if (in_q[i]) continue;
      PointView p = points[i];
      double denom = 0.0;
      for (std::size_t a = 0; a < d; ++a) denom += 2.0 * v[a] * (anchor[a] - p[a]);
      if (denom <= 0.0) continue;
      const double s = std::max(0.0, r2 - squared_distance(c, p)) / denom;
      if (s > 1.0) continue;
      contacts.emplace_back(s, i);
      best_s = std::min(best_s, s);
    }
    if (contacts.empty()) {
      c = t;
      break;
    }
    for (std::size_t a = 0; a < d; ++a) c[a] += best_s * v[a];
    const double r_new = std::sqrt(squared_distance(c, anchor));
    for (const auto& [s, i] : contacts) {
      // Simultaneous contacts all join Q.
      const bool touching = s <= best_s + 1e-12 ||
                            std::abs(distance(c, points[i]) - r_new) <= tol;
      if (touching) {
        q.push_back(i);
        in_q[i] = 1;
      }
    }
  }
  return current(iterations);
}

BadoiuClarksonResult badoiu_clarkson(const PointSet& points, std::size_t k,
                                     std::optional<std::uint64_t> seed,
                                     bool record_centers) {
  require_nonempty(points, "badoiu_clarkson");
  if (k < 1) throw InvalidArgument("badoiu_clarkson: k must be >= 1");
  const std::size_t d = points.dim();

  std::size_t start = 0;
  if (seed) {
    Rng rng(derive_seed(*seed, "badoiu_clarkson"));
    start = uniform_index(rng, points.size());
  }
  BadoiuClarksonResult out;
  std::vector<double> c(points[start].begin(), points[start].end());
  out.core_indices.push_back(start);
  if (record_centers) out.centers.emplace_back(c);

  for (std::size_t i = 2; i <= k; ++i) {
    const std::size_t far = farthest_from(points, c);
    PointView p = points[far];
    const double step = 1.0 / static_cast<double>(i);
    for (std::size_t a = 0; a < d; ++a) c[a] += (p[a] - c[a]) * step;
    out.core_indices.push_back(far);
    if (record_centers) out.centers.emplace_back(c);
  }
  Ball ball{Point(c), enclosing_radius(points, c)};
  out.solution = make_solution(std::move(ball), {}, k, MebAlgorithm::badoiu_clarkson);
  return out;
}

double dual_objective(const PointSet& points, std::span<const double> lambda) {
  if (lambda.size() != points.size()) {
    throw InvalidArgument("dual_objective: multiplier vector length mismatch");
  }
  const std::size_t d = points.dim();
  std::vector<double> c(d, 0.0);
  double linear = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    PointView p = points[i];
    linear += lambda[i] * dot(p, p);
    for (std::size_t a = 0; a < d; ++a) c[a] += lambda[i] * p[a];
  }
  return linear - dot(c, c);
}

DualSolution elzinga_hearn_dual(const PointSet& points, double tol, std::size_t max_iter) {
  require_nonempty(points, "elzinga_hearn_dual");
  if (!(tol > 0.0)) throw InvalidArgument("elzinga_hearn_dual: tol must be positive");
  const std::size_t n = points.size();
  const std::size_t d = points.dim();

  // The objective equals sum lambda_i |p_i - c|^2, which is invariant under
  // translation, so iterate on points centered at their barycenter.
  const Point shift = barycenter(points);
  std::vector<double> y(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) y[i * d + a] = points[i][a] - shift[a];
  }
  auto row = [&](std::size_t i) { return PointView(y.data() + i * d, d); };

  std::vector<double> lambda(n, 0.0);
  lambda[0] = 1.0;
  std::vector<double> c(row(0).begin(), row(0).end());
  std::vector<double> dist2(n);
  double scale2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale2 = std::max(scale2, dot(row(i), row(i)));
  const double floor = (kRelativeTol * kRelativeTol) * (1.0 + scale2);

  // s(lambda) and primal radius^2 at c(lambda).
  auto evaluate = [&](const std::vector<double>& lam, const std::vector<double>& cen,
                      double& s, double& r2, std::size_t& far) {
    s = 0.0;
    r2 = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      dist2[i] = squared_distance(row(i), cen);
      s += lam[i] * dist2[i];
      if (dist2[i] > r2) {
        r2 = dist2[i];
        far = i;
      }
    }
  };

  double s = 0.0, r2 = 0.0;
  std::size_t far = 0;
  std::size_t iter = 0;
  for (;; ++iter) {
    evaluate(lambda, c, s, r2, far);
    const double gap = r2 - s;
    if (gap <= tol * s + floor) break;
    if (iter >= max_iter) {
      throw DualConvergenceError("elzinga_hearn_dual: no convergence within " +
                                     std::to_string(max_iter) + " iterations, gap " +
                                     std::to_string(gap),
                                 gap);
    }
    // Gradient g_i = |p_i - c|^2 - |c|^2 (up to a constant shared by all i).
    // Frank-Wolfe vertex: farthest point. Away vertex: nearest active point.
    std::size_t away = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (lambda[i] > 0.0 && (away == n || dist2[i] < dist2[away])) away = i;
    }
    const double fw_gain = r2 - s;
    const double away_gain = s - dist2[away];
    std::vector<double> dir(d);
    double gain, max_step;
    std::size_t vertex;
    bool toward;
    if (fw_gain >= away_gain || lambda[away] >= 1.0) {
      vertex = far;
      toward = true;
      gain = fw_gain;
      max_step = 1.0;
      for (std::size_t a = 0; a < d; ++a) dir[a] = row(far)[a] - c[a];
    } else {
      vertex = away;
      toward = false;
      gain = away_gain;
      max_step = lambda[away] / (1.0 - lambda[away]);
      for (std::size_t a = 0; a < d; ++a) dir[a] = c[a] - row(away)[a];
    }
    const double curvature = dot(dir, dir);
    if (curvature <= 0.0) break;
    // f(lambda + g dir) = f + g * gain - g^2 * |A dir|^2.
    const double step = std::min(max_step, gain / (2.0 * curvature));
    for (std::size_t i = 0; i < n; ++i) lambda[i] *= toward ? (1.0 - step) : (1.0 + step);
    if (toward) {
      lambda[vertex] += step;
    } else {
      lambda[vertex] -= step;
      if (step == max_step || lambda[vertex] < 0.0) lambda[vertex] = 0.0;
    }
    for (std::size_t a = 0; a < d; ++a) c[a] += step * dir[a];
  }

  // Polish: the active points near the sphere determine the center exactly
  // when they are affinely independent. Keep whichever iterate has the
  // smaller gap.
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n; ++i) {
    if (lambda[i] > 0.0 && r2 - dist2[i] <= 1e-3 * r2 + floor) active.push_back(i);
  }
  const PointSet shifted = PointSet::from_flat(d, y);
  if (!active.empty() && active.size() <= d + 1) {
    if (auto ball = try_circumball(shifted, active)) {
      const HullProjection proj = nearest_in_hull(ball->center, shifted.subset(active));
      std::vector<double> lam2(n, 0.0);
      std::vector<double> c2(d, 0.0);
      for (std::size_t j = 0; j < active.size(); ++j) {
        lam2[active[j]] = proj.weights[j];
        for (std::size_t a = 0; a < d; ++a) c2[a] += proj.weights[j] * row(active[j])[a];
      }
      double s2 = 0.0, r22 = 0.0;
      std::size_t far2 = 0;
      const std::vector<double> saved = dist2;
      evaluate(lam2, c2, s2, r22, far2);
      if (r22 - s2 <= r2 - s) {
        lambda = std::move(lam2);
        c = std::move(c2);
        s = s2;
        r2 = r22;
      } else {
        dist2 = saved;
      }
    }
  }

  DualSolution out;
  std::vector<double> center(d);
  for (std::size_t a = 0; a < d; ++a) center[a] = c[a] + shift[a];
  out.lambda = lambda;
  out.duality_gap = std::max(0.0, r2 - s);
  out.dual_objective = s;
  SupportSet support;
  for (std::size_t i = 0; i < n; ++i) {
    if (lambda[i] >= kPruneMultiplier) {
      support.indices.push_back(i);
      support.multipliers.push_back(lambda[i]);
    }
  }
  // The ball is the primal point (s, c) recovered from the multipliers; its
  // radius is sqrt(s), which encloses P up to the duality gap.
  MebSolution sol;
  sol.ball = Ball{Point(std::move(center)), std::sqrt(s)};
  sol.squared_radius = s;
  sol.support = std::move(support);
  sol.iterations = iter;
  sol.algorithm = MebAlgorithm::elzinga_hearn;
  out.solution = std::move(sol);
  return out;
}

double KtResiduals::max() const {
  return std::max({multiplier_sum, stationarity, slackness, negativity, feasibility});
}

KtResiduals kt_residuals(const PointSet& points, const Ball& ball,
                         std::span<const double> lambda) {
  if (lambda.size() != points.size()) {
    throw InvalidArgument("kt_residuals: multiplier vector has length " +
                          std::to_string(lambda.size()) + ", expected " +
                          std::to_string(points.size()));
  }
  const std::size_t d = points.dim();
  if (ball.center.dim() != d) throw DimensionMismatch("kt_residuals: center dimension");
  const double s = ball.radius * ball.radius;
  KtResiduals r;
  double sum = 0.0;
  std::vector<double> stat(d, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    PointView p = points[i];
    sum += lambda[i];
    for (std::size_t a = 0; a < d; ++a) stat[a] += lambda[i] * (p[a] - ball.center[a]);
    const double dist2 = squared_distance(p, ball.center);
    r.slackness = std::max(r.slackness, std::abs(lambda[i] * (s - dist2)));
    r.negativity = std::max(r.negativity, -lambda[i]);
    r.feasibility = std::max(r.feasibility, dist2 - s);
  }
  r.multiplier_sum = std::abs(sum - 1.0);
  for (double x : stat) r.stationarity = std::max(r.stationarity, std::abs(x));
  return r;
}

}  // namespace mebkit
