#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <optional>
#include <random>

#include "mebkit/cluster_testing.hpp"
#include "mebkit/errors.hpp"
#include "mebkit/io.hpp"
#include "mebkit/meb.hpp"
#include "mebkit/random.hpp"
#include "oracles.hpp"

using namespace mebkit;

namespace {

// Two clusters of unit diameter whose centers are 10 apart.
PointSet two_clusters(std::uint64_t seed, std::size_t n) {
  GenParams gp;
  gp.k = 2;
  gp.separation = 10.0;
  gp.radius = 0.5;
  return gen_instance("clustered", n, 2, seed, gp).points;
}

}  // namespace

TEST_CASE("round budgets") {
  CHECK(one_s_round_budget(2, 0.4, 0.1) == 36);
  CHECK(one_s_round_budget(2, 0.5, 1.0) == 0);
  CHECK(k_g_round_budget(0.01, 0.1) == 231);
  CHECK(k_g_round_budget(1.0, 1.0) == 0);
  CHECK_THROWS_AS(one_s_round_budget(2, 0.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(k_g_round_budget(0.5, 1.5), InvalidArgument);
}

TEST_CASE("one_s_tester accepts coverable inputs for every seed") {
  std::mt19937_64 rng(1);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PointSet p = oracle::uniform_cube(rng, 30, 2, 0.7);  // within radius 0.99
    const TestVerdict v = one_s_tester(p, ConvexBody::ball(1.0), 0.3, 0.1, seed);
    CHECK(v.outcome == Outcome::accept);
    CHECK_FALSE(v.witness.has_value());
    CHECK(v.rounds_used == v.round_budget);
  }
}

TEST_CASE("one_s_tester rejects the two-cluster fixture with verified witnesses") {
  const PointSet p = two_clusters(3, 100);
  std::size_t rejects = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const TestVerdict v = one_s_tester(p, ConvexBody::ball(1.0), 0.4, 0.1, seed);
    if (v.outcome == Outcome::reject) {
      ++rejects;
      REQUIRE(v.witness.has_value());
      CHECK_FALSE(fits_in_translate(ConvexBody::ball(1.0), *v.witness));
      CHECK(v.witness->size() == 3);
      CHECK(v.witness_indices.size() == 3);
      CHECK(v.rounds_used >= 1);
      CHECK(v.rounds_used <= v.round_budget);
    }
  }
  CHECK(rejects >= 85);
}

TEST_CASE("one_s_tester boxes and degenerate budgets") {
  const PointSet p{{0, 0}, {3, 0}};
  const TestVerdict v = one_s_tester(p, ConvexBody::box({1, 1}), 0.5, 0.5, 1);
  // n < d + 1: the set itself is checked.
  CHECK(v.outcome == Outcome::reject);
  const TestVerdict vac = one_s_tester(two_clusters(1, 20), ConvexBody::ball(1.0), 0.5, 1.0, 1);
  CHECK(vac.outcome == Outcome::accept);
  CHECK(vac.round_budget == 0);
}

TEST_CASE("one_s_tester is deterministic") {
  const PointSet p = two_clusters(9, 50);
  const TestVerdict a = one_s_tester(p, ConvexBody::ball(1.0), 0.4, 0.1, 17);
  const TestVerdict b = one_s_tester(p, ConvexBody::ball(1.0), 0.4, 0.1, 17);
  CHECK(a.outcome == b.outcome);
  CHECK(a.witness_indices == b.witness_indices);
  CHECK(a.rounds_used == b.rounds_used);
}

TEST_CASE("coverable_by_translates against labeling oracle") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 60; ++t) {
    const PointSet p = oracle::uniform_cube(rng, 5, 2, 2.0);
    const std::size_t k = 1 + static_cast<std::size_t>(t % 3);
    CHECK(coverable_by_translates(ConvexBody::ball(0.9), p, k) ==
          oracle::clusterable(p, k, 0.9, 1e-9 * 3.0));
  }
}

TEST_CASE("k_g_tester") {
  // k+1 far points: the verdict rejects exactly at the first round whose
  // with-replacement sample hits all of them.
  const PointSet far{{0, 0}, {10, 0}, {20, 0}};
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const TestVerdict v = k_g_tester(far, ConvexBody::ball(1.0), 2, 0.2, 0.1, seed);
    std::optional<std::size_t> first;
    for (std::size_t r = 0; r < v.round_budget && !first; ++r) {
      Rng rng(round_seed(seed, r));
      std::vector<bool> hit(3, false);
      for (int j = 0; j < 3; ++j) hit[uniform_index(rng, 3)] = true;
      if (hit[0] && hit[1] && hit[2]) first = r;
    }
    if (first) {
      CHECK(v.outcome == Outcome::reject);
      CHECK(v.rounds_used == *first + 1);
      REQUIRE(v.witness.has_value());
      CHECK_FALSE(coverable_by_translates(ConvexBody::ball(1.0), *v.witness, 2));
    } else {
      CHECK(v.outcome == Outcome::accept);
    }
  }

  const PointSet p = two_clusters(2, 40);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(k_g_tester(p, ConvexBody::ball(1.0), 2, 0.05, 0.1, seed).outcome == Outcome::accept);
  }
  CHECK_THROWS_AS(k_g_tester(p, ConvexBody::ball(1.0), 9, 0.5, 0.5, 1), GuardExceeded);
  CHECK_THROWS_AS(k_g_tester(far, ConvexBody::ball(1.0), 3, 0.5, 0.5, 1), InvalidArgument);
}

TEST_CASE("k_g_tester with k = 1 follows the single-body test") {
  const PointSet p = two_clusters(5, 60);
  std::size_t rejects = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const TestVerdict v = k_g_tester(p, ConvexBody::ball(1.0), 1, 0.25, 0.1, seed);
    if (v.outcome == Outcome::reject) {
      ++rejects;
      CHECK_FALSE(fits_in_translate(ConvexBody::ball(1.0), *v.witness));
    }
  }
  CHECK(rejects >= 36);
}

TEST_CASE("scattered_points") {
  const PointSet line{{0}, {1}, {2}, {3}};
  const ScatteredPoints s = scattered_points(line, 2.0);
  CHECK(s.count == 2);
  CHECK(s.exact);
  CHECK(scattered_points(line, 1.0).count == 4);
  CHECK(scattered_points(line, 0.5).count == 4);
}

TEST_CASE("scattered_points matches exhaustive enumeration and is antitone") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const PointSet p = oracle::uniform_cube(rng, 16, 2);
    std::size_t prev = p.size() + 1;
    for (double delta : {0.1, 0.3, 0.6, 1.0, 1.5}) {
      const ScatteredPoints s = scattered_points(p, delta);
      CHECK(s.count == oracle::scattered_count(p, delta, geometric_tol(p)));
      CHECK(s.indices.size() == s.count);
      CHECK(s.count <= prev);
      prev = s.count;
    }
  }
  const PointSet p20 = oracle::uniform_cube(rng, 20, 2);
  CHECK(scattered_points(p20, 0.7).count == oracle::scattered_count(p20, 0.7, geometric_tol(p20)));
}

TEST_CASE("is_clusterable against labeling oracle") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    const PointSet p = oracle::uniform_cube(rng, 7, 2, 2.0);
    const std::size_t k = 1 + static_cast<std::size_t>(t % 3);
    for (double eps : {0.5, 1.0, 1.6}) {
      CHECK(is_clusterable(p, k, eps) == oracle::clusterable(p, k, eps, geometric_tol(p)));
    }
  }
}

TEST_CASE("promise labels") {
  const PointSet tight{{0, 0}, {0.5, 0}, {0, 0.5}};
  CHECK(promise_label(tight, 1, 1.0, 3, 5.0).yes_holds);
  CHECK(promise_label(tight, 1, 1.0, 3, 5.0).label == PromiseClass::yes);

  const PointSet spread{{0, 0}, {10, 0}, {20, 0}};
  CHECK(promise_label(spread, 1, 1.0, 3, 10.0).no_holds);
  CHECK(promise_label(spread, 1, 1.0, 3, 10.0).label == PromiseClass::no);
  CHECK(promise_label(spread, 1, 1.0, 3, 11.0).label == PromiseClass::violates);
  CHECK(promise_label(spread, 3, 1.0, 3, 10.0).label == PromiseClass::both);
  CHECK(std::string(to_string(PromiseClass::violates)) == "VIOLATES");
}

TEST_CASE("promise yes with k1 = 1 agrees with the enclosing radius") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    const PointSet p = oracle::uniform_cube(rng, 12, 3);
    const double r = exact_meb(p).ball.radius;
    for (double eps : {0.5 * r, r * (1 - 1e-6), r, r * 1.5}) {
      CHECK(promise_label(p, 1, eps, 2, 100.0).yes_holds == (r <= eps + geometric_tol(p)));
    }
  }
}

TEST_CASE("generated clusterable and far instances carry valid certificates") {
  GenParams gp;
  gp.k = 1;
  gp.eps = 1.0;
  const GeneratedInstance c = gen_instance("clusterable", 50, 3, 4, gp);
  REQUIRE(c.centers.size() == 1);
  for (std::size_t i = 0; i < c.points.size(); ++i) CHECK(distance(c.points[i], c.centers[0]) <= 1.0);
  CHECK(promise_label(c.points, 1, 1.0, 2, 100.0).yes_holds);

  gp.k = 3;
  gp.delta = 10.0;
  const GeneratedInstance f = gen_instance("far", 30, 2, 4, gp);
  REQUIRE(f.scattered.size() == 3);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      CHECK(distance(f.points[f.scattered[a]], f.points[f.scattered[b]]) >= 10.0);
    }
  }
  CHECK(promise_label(f.points, 1, 0.1, 3, 10.0).no_holds);
}
