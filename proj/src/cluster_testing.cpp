#include "mebkit/cluster_testing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "mebkit/errors.hpp"
#include "mebkit/meb.hpp"
#include "mebkit/random.hpp"

namespace mebkit {

namespace {

void check_unit_interval(double x, const char* name) {
  if (!(x > 0.0 && x <= 1.0)) {
    throw InvalidArgument(std::string(name) + " must lie in (0, 1]");
  }
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t m, Rng& rng) {
  std::vector<std::size_t> out(m);
  for (auto& i : out) i = uniform_index(rng, n);
  return out;
}

// Assigns sample items one at a time to at most k groups, each group kept
// feasible. Groups are unlabeled, so a new group is only ever opened last.
class PartitionSearch {
 public:
  PartitionSearch(const ConvexBody& body, const PointSet& points, std::size_t k)
      : body_(body), points_(points), k_(k) {}

  bool run() { return place(0); }

 private:
  bool group_fits(const std::vector<std::size_t>& members) const {
    return fits_in_translate(body_, points_.subset(members));
  }

  bool place(std::size_t item) {
    if (item == points_.size()) return true;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      groups_[g].push_back(item);
      if (group_fits(groups_[g]) && place(item + 1)) return true;
      groups_[g].pop_back();
    }
    if (groups_.size() < k_) {
      groups_.push_back({item});
      if (place(item + 1)) return true;
      groups_.pop_back();
    }
    return false;
  }

  const ConvexBody& body_;
  const PointSet& points_;
  std::size_t k_;
  std::vector<std::vector<std::size_t>> groups_;
};

}  // namespace

const char* to_string(Outcome outcome) {
  return outcome == Outcome::accept ? "accept" : "reject";
}

const char* to_string(PromiseClass label) {
  switch (label) {
    case PromiseClass::yes: return "YES";
    case PromiseClass::no: return "NO";
    case PromiseClass::violates: return "VIOLATES";
    case PromiseClass::both: return "BOTH";
  }
  return "unknown";
}

std::size_t one_s_round_budget(std::size_t d, double eps, double delta) {
  check_unit_interval(eps, "eps");
  check_unit_interval(delta, "delta");
  const double dd = static_cast<double>(d);
  return ceil_count(std::log(1.0 / delta) / std::pow(eps, dd + 1.0));
}

std::size_t k_g_round_budget(double c, double delta) {
  check_unit_interval(c, "c");
  check_unit_interval(delta, "delta");
  return ceil_count(std::log(1.0 / delta) / c);
}

TestVerdict one_s_tester(const PointSet& points, const ConvexBody& body, double eps,
                         double delta, std::uint64_t seed) {
  const std::size_t n = points.size();
  if (n == 0) throw InvalidArgument("one_s_tester: empty point set");
  const std::size_t d = points.dim();
  TestVerdict v;
  v.seed = seed;
  v.round_budget = one_s_round_budget(d, eps, delta);

  if (n < d + 1) {
    v.rounds_used = 1;
    if (!fits_in_translate(body, points)) {
      v.outcome = Outcome::reject;
      v.witness_indices.resize(n);
      std::iota(v.witness_indices.begin(), v.witness_indices.end(), 0);
      v.witness = points;
    }
    return v;
  }
  for (std::size_t r = 0; r < v.round_budget; ++r) {
    Rng rng(round_seed(seed, r));
    auto idx = sample_indices(n, d + 1, rng);
    PointSet w = points.subset(idx);
    if (!fits_in_translate(body, w)) {
      v.outcome = Outcome::reject;
      v.rounds_used = r + 1;
      v.witness = std::move(w);
      v.witness_indices = std::move(idx);
      return v;
    }
  }
  v.rounds_used = v.round_budget;
  return v;
}

bool coverable_by_translates(const ConvexBody& body, const PointSet& points, std::size_t k) {
  if (points.empty()) return true;
  if (k == 0) return false;
  return PartitionSearch(body, points, k).run();
}

TestVerdict k_g_tester(const PointSet& points, const ConvexBody& body, std::size_t k,
                       double c, double delta, std::uint64_t seed) {
  const std::size_t n = points.size();
  if (k < 1) throw InvalidArgument("k_g_tester: k must be >= 1");
  if (k > kMaxTranslates) {
    throw GuardExceeded("k_g_tester: k = " + std::to_string(k) +
                        " exceeds the partition-enumeration guard of 8");
  }
  if (n < k + 1) throw InvalidArgument("k_g_tester: needs n >= k + 1 points");
  TestVerdict v;
  v.seed = seed;
  v.round_budget = k_g_round_budget(c, delta);
  for (std::size_t r = 0; r < v.round_budget; ++r) {
    Rng rng(round_seed(seed, r));
    auto idx = sample_indices(n, k + 1, rng);
    PointSet w = points.subset(idx);
    if (!coverable_by_translates(body, w, k)) {
      v.outcome = Outcome::reject;
      v.rounds_used = r + 1;
      v.witness = std::move(w);
      v.witness_indices = std::move(idx);
      return v;
    }
  }
  v.rounds_used = v.round_budget;
  return v;
}

PromiseClass classify(bool yes_holds, bool no_holds) {
  if (yes_holds && no_holds) return PromiseClass::both;
  if (yes_holds) return PromiseClass::yes;
  if (no_holds) return PromiseClass::no;
  return PromiseClass::violates;
}

namespace {

using Mask = std::uint64_t;

// Maximum clique with greedy-coloring bounds (Tomita and Seki style).
class MaxClique {
 public:
  explicit MaxClique(std::vector<Mask> adjacency) : adj_(std::move(adjacency)) {}

  Mask run() {
    const std::size_t n = adj_.size();
    Mask all = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
    expand(0, 0, all);
    return best_;
  }

 private:
  void expand(Mask current, int size, Mask candidates) {
    if (candidates == 0) {
      if (size > best_size_) {
        best_size_ = size;
        best_ = current;
      }
      return;
    }
    // Color classes in order; colors[i] bounds the clique within order[0..i].
    std::vector<int> order, colors;
    Mask uncolored = candidates;
    int color = 0;
    while (uncolored) {
      ++color;
      Mask available = uncolored;
      while (available) {
        const int v = std::countr_zero(available);
        available &= ~(Mask{1} << v);
        available &= ~adj_[static_cast<std::size_t>(v)];
        uncolored &= ~(Mask{1} << v);
        order.push_back(v);
        colors.push_back(color);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (size + colors[i] <= best_size_) return;
      const int v = order[i];
      const Mask bit = Mask{1} << v;
      expand(current | bit, size + 1, candidates & adj_[static_cast<std::size_t>(v)]);
      candidates &= ~bit;
    }
  }

  std::vector<Mask> adj_;
  Mask best_ = 0;
  int best_size_ = 0;
};

ScatteredPoints greedy_scattered(const PointSet& points, double delta, double tol) {
  const std::size_t n = points.size();
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<char> taken(n, 0);
  ScatteredPoints out;
  out.exact = false;
  std::size_t next = 0;
  for (;;) {
    out.indices.push_back(next);
    taken[next] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], distance(points[i], points[next]));
    }
    std::size_t far = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i] || nearest[i] < delta - tol) continue;
      if (far == n || nearest[i] > nearest[far]) far = i;
    }
    if (far == n) break;
    next = far;
  }
  std::sort(out.indices.begin(), out.indices.end());
  out.count = out.indices.size();
  return out;
}

// Branch and bound over assignments of points to at most k clusters of
// radius <= eps. Points arrive in farthest-first order so that conflicts
// surface early.
class ClusterSearch {
 public:
  ClusterSearch(const PointSet& points, std::size_t k, double eps)
      : points_(points), k_(k), eps_(eps), tol_(geometric_tol(points)) {
    const std::size_t n = points.size();
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    std::vector<char> taken(n, 0);
    std::size_t next = 0;
    for (std::size_t step = 0; step < n; ++step) {
      order_.push_back(next);
      taken[next] = 1;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        nearest[i] = std::min(nearest[i], distance(points[i], points[next]));
        if (!taken[i] && (far == n || nearest[i] > nearest[far])) far = i;
      }
      next = far;
    }
  }

  bool run() { return place(0); }

 private:
  struct Cluster {
    std::vector<std::size_t> members;
    Ball ball;
  };

  static constexpr std::size_t kNodeBudget = 20'000'000;

  bool place(std::size_t step) {
    if (++nodes_ > kNodeBudget) {
      throw GuardExceeded("clusterability search exceeded its node budget");
    }
    if (step == order_.size()) return true;
    const std::size_t p = order_[step];
    // A point already inside a cluster's ball joins it at no cost; any other
    // placement can be rearranged into this one.
    for (auto& cl : clusters_) {
      if (cl.ball.contains(points_[p], tol_)) {
        cl.members.push_back(p);
        const bool ok = place(step + 1);
        cl.members.pop_back();
        return ok;
      }
    }
    for (auto& cl : clusters_) {
      cl.members.push_back(p);
      const Ball grown = exact_meb(points_.subset(cl.members)).ball;
      if (grown.radius <= eps_ + tol_) {
        Ball saved = std::exchange(cl.ball, grown);
        if (place(step + 1)) return true;
        cl.ball = std::move(saved);
      }
      cl.members.pop_back();
    }
    if (clusters_.size() < k_) {
      clusters_.push_back({{p}, Ball{points_.point(p), 0.0}});
      if (place(step + 1)) return true;
      clusters_.pop_back();
    }
    return false;
  }

  const PointSet& points_;
  std::size_t k_;
  double eps_;
  double tol_;
  std::vector<std::size_t> order_;
  std::vector<Cluster> clusters_;
  std::size_t nodes_ = 0;
};

}  // namespace

ScatteredPoints scattered_points(const PointSet& points, double delta) {
  const std::size_t n = points.size();
  if (n == 0) throw InvalidArgument("scattered_points: empty point set");
  if (!(delta >= 0.0)) throw InvalidArgument("scattered_points: delta must be >= 0");
  const double tol = geometric_tol(points);
  if (n > kMaxExactScattered) return greedy_scattered(points, delta, tol);

  std::vector<Mask> adj(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(points[i], points[j]) >= delta - tol) {
        adj[i] |= Mask{1} << j;
        adj[j] |= Mask{1} << i;
      }
    }
  }
  const Mask best = MaxClique(std::move(adj)).run();
  ScatteredPoints out;
  for (std::size_t i = 0; i < n; ++i) {
    if (best & (Mask{1} << i)) out.indices.push_back(i);
  }
  out.count = out.indices.size();
  return out;
}

bool is_clusterable(const PointSet& points, std::size_t k, double eps) {
  if (points.empty()) return true;
  if (k == 0) return false;
  if (!(eps >= 0.0)) throw InvalidArgument("is_clusterable: eps must be >= 0");
  const double tol = geometric_tol(points);
  if (k == 1) return exact_meb(points).ball.radius <= eps + tol;
  if (points.size() > kMaxPromiseSize) {
    throw GuardExceeded("is_clusterable: n exceeds the exact-decider guard of 200");
  }
  // Points pairwise farther than 2 eps need distinct balls.
  if (greedy_scattered(points, 2.0 * (eps + tol) * (1.0 + 1e-12) + 1e-300, 0.0).count > k) return false;
  return ClusterSearch(points, k, eps).run();
}

PromiseLabel promise_label(const PointSet& points, std::size_t k1, double eps,
                           std::size_t k2, double delta) {
  if (points.empty()) throw InvalidArgument("promise_label: empty point set");
  PromiseLabel out;
  out.yes_holds = is_clusterable(points, k1, eps);
  out.no_holds = scattered_points(points, delta).count >= k2;
  out.label = classify(out.yes_holds, out.no_holds);
  return out;
}

}  // namespace mebkit
