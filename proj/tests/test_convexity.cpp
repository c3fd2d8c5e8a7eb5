#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "mebkit/convexity.hpp"
#include "mebkit/errors.hpp"
#include "mebkit/meb.hpp"
#include "oracles.hpp"

using namespace mebkit;

namespace {

ConvexCombination random_combination(std::mt19937_64& rng, const PointSet& p) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(p.size());
  for (auto& x : w) x = e(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  std::vector<double> target(p.dim(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t a = 0; a < p.dim(); ++a) target[a] += w[i] * p[i][a];
  }
  std::vector<std::size_t> idx(p.size());
  std::iota(idx.begin(), idx.end(), 0);
  return {idx, w, Point(target)};
}

void check_reconstruction(const PointSet& p, const ConvexCombination& c) {
  std::vector<double> recon(p.dim(), 0.0);
  double sum = 0.0;
  for (std::size_t j = 0; j < c.indices.size(); ++j) {
    CHECK(c.coefficients[j] >= 0.0);
    CHECK(c.coefficients[j] <= 1.0);
    sum += c.coefficients[j];
    for (std::size_t a = 0; a < p.dim(); ++a) recon[a] += c.coefficients[j] * p[c.indices[j]][a];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(distance(recon, c.target) <= 1e-9 * (1.0 + p.max_abs_coord()));
}

}  // namespace

TEST_CASE("caratheodory_reduce fixtures") {
  const PointSet sq = oracle::square();
  const ConvexCombination quarter{{0, 1, 2, 3}, {0.25, 0.25, 0.25, 0.25}, Point{0, 0}};
  const ConvexCombination r = caratheodory_reduce(sq, quarter);
  CHECK(r.indices.size() <= 3);
  check_reconstruction(sq, r);

  const ConvexCombination small{{0, 2}, {0.5, 0.5}, Point{0, 0}};
  const ConvexCombination same = caratheodory_reduce(sq, small);
  CHECK(same.indices == small.indices);
  CHECK(same.coefficients == small.coefficients);

  const ConvexCombination vertex{{0, 1, 2}, {0.0, 1.0, 0.0}, Point{1, -1}};
  const ConvexCombination single = caratheodory_reduce(sq, vertex);
  CHECK(single.indices == std::vector<std::size_t>{1});
  CHECK(single.coefficients == std::vector<double>{1.0});

  const ConvexCombination bad{{0, 1}, {0.5, 0.6}, Point{0, -1}};
  CHECK_THROWS_AS(caratheodory_reduce(sq, bad), InvalidArgument);
  const ConvexCombination wrong_target{{0, 1}, {0.5, 0.5}, Point{0, 0}};
  CHECK_THROWS_AS(caratheodory_reduce(sq, wrong_target), InvalidArgument);
}

TEST_CASE("caratheodory_reduce on random combinations") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 5);
    const PointSet p = oracle::uniform_cube(rng, d + 2 + static_cast<std::size_t>(t % 20), d, 4.0);
    const ConvexCombination r = caratheodory_reduce(p, random_combination(rng, p));
    CHECK(r.indices.size() <= d + 1);
    check_reconstruction(p, r);
  }
}

TEST_CASE("radon_partition fixtures") {
  const RadonPartition sq = radon_partition(oracle::square());
  // Diagonals: (-1,-1),(1,1) against (1,-1),(-1,1).
  std::vector<std::size_t> pos = sq.positive, rest = sq.rest;
  CHECK(((pos == std::vector<std::size_t>{0, 2} && rest == std::vector<std::size_t>{1, 3}) ||
         (pos == std::vector<std::size_t>{1, 3} && rest == std::vector<std::size_t>{0, 2})));
  CHECK(distance(sq.witness, Point{0, 0}) <= 1e-12);

  const PointSet tri{{0, 0}, {3, 0}, {0, 3}, {1, 1}};
  const RadonPartition t = radon_partition(tri);
  const bool singleton = (t.positive == std::vector<std::size_t>{3}) ||
                         (t.rest == std::vector<std::size_t>{3});
  CHECK(singleton);
  CHECK(distance(t.witness, Point{1, 1}) <= 1e-12);

  CHECK_THROWS_AS(radon_partition(PointSet{{0, 0}, {1, 0}, {0, 1}}), InvalidArgument);
}

TEST_CASE("radon witness lies in both hulls") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 5);
    const PointSet p = oracle::uniform_cube(rng, d + 2, d, 3.0);
    const RadonPartition r = radon_partition(p);
    REQUIRE_FALSE(r.positive.empty());
    REQUIRE_FALSE(r.rest.empty());
    CHECK(r.positive.size() + r.rest.size() == d + 2);
    const double tol = geometric_tol(p);
    CHECK(oracle::dist_to_hull(r.witness.coords().data(), p.subset(r.positive)) <= tol);
    CHECK(oracle::dist_to_hull(r.witness.coords().data(), p.subset(r.rest)) <= tol);
    CHECK(std::abs(std::accumulate(r.alpha.begin(), r.alpha.end(), 0.0)) <= 1e-9);
  }
}

TEST_CASE("helly_check_boxes fixtures") {
  const std::vector<AABox> intervals{{{0}, {3}}, {{2}, {5}}, {{1}, {2.5}}};
  const HellyReport r = helly_check_boxes(intervals);
  CHECK(r.subfamilies_intersect);
  CHECK(r.family_intersects);
  REQUIRE(r.common_point.has_value());
  CHECK((*r.common_point)[0] == doctest::Approx(2.25));

  const std::vector<AABox> disjoint{{{0}, {1}}, {{2}, {3}}, {{0}, {3}}};
  const HellyReport v = helly_check_boxes(disjoint);
  CHECK_FALSE(v.subfamilies_intersect);
  CHECK(v.implication_holds);
  CHECK(v.failing_subfamily == std::vector<std::size_t>{0, 1});

  const std::vector<AABox> too_few{{{0, 0}, {1, 1}}, {{0, 0}, {1, 1}}};
  CHECK_THROWS_AS(helly_check_boxes(too_few), InvalidArgument);
  CHECK_THROWS_AS(AABox({0, 1}, {1, 0}), InvalidArgument);
}

TEST_CASE("helly implication on constructed and random box families") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t premise_true = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 3);
    const std::size_t k = d + 1 + static_cast<std::size_t>(t % 4);
    const bool planted = t % 2 == 0;
    std::vector<double> anchor(d);
    for (auto& x : anchor) x = 4.0 * u(rng) - 2.0;
    std::vector<AABox> family;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<double> lo(d), hi(d);
      for (std::size_t a = 0; a < d; ++a) {
        if (planted) {
          lo[a] = anchor[a] - u(rng);
          hi[a] = anchor[a] + u(rng);
        } else {
          lo[a] = 4.0 * u(rng) - 2.0;
          hi[a] = lo[a] + 2.0 * u(rng);
        }
      }
      family.emplace_back(lo, hi);
    }
    const HellyReport r = helly_check_boxes(family);
    CHECK(r.implication_holds);
    if (planted) CHECK(r.family_intersects);
    if (r.subfamilies_intersect) {
      ++premise_true;
      REQUIRE(r.common_point.has_value());
      for (const auto& b : family) {
        for (std::size_t a = 0; a < d; ++a) {
          CHECK((*r.common_point)[a] >= b.lower[a]);
          CHECK((*r.common_point)[a] <= b.upper[a]);
        }
      }
    }
  }
  CHECK(premise_true >= 150);
}

TEST_CASE("fractional_helly_beta") {
  CHECK(fractional_helly_beta(3, 1.0) == 1.0);
  CHECK(fractional_helly_beta(1, 0.75) == doctest::Approx(0.5));
  CHECK(fractional_helly_beta(2, 1e-12) < 1e-11);
  CHECK_THROWS_AS(fractional_helly_beta(2, 0.0), InvalidArgument);
}

TEST_CASE("jung bound fixtures and sweep") {
  const PointSet tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  const JungBound j = jung_bound(tri);
  CHECK(j.bound == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(j.tight);

  const JungBound seg = jung_bound(PointSet{{0}, {7}});
  CHECK(seg.bound == doctest::Approx(3.5));
  CHECK(seg.tight);

  for (std::size_t d = 1; d <= 6; ++d) {
    const JungBound s = jung_bound(oracle::regular_simplex(d));
    CHECK(std::abs(s.meb_radius - s.bound) <= 1e-9);
  }

  std::mt19937_64 rng(34);
  for (int t = 0; t < 200; ++t) {
    const PointSet p = oracle::uniform_cube(rng, 2 + static_cast<std::size_t>(t % 15), 1 + t % 5);
    const JungBound b = jung_bound(p);
    CHECK(b.meb_radius <= b.bound + geometric_tol(p));
  }
}

TEST_CASE("barycentric circumradius") {
  CHECK(barycentric_circumradius(PointSet{{0, 0}, {3, 4}}) == doctest::Approx(2.5));
  const PointSet tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}};
  CHECK(barycentric_circumradius(tri) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

  // Flat triangle: the triple barycenter (1/2, 1/30) sits sqrt(1/4 + 1/900)
  // from the origin, which beats Jung and still bounds rho = 1/2.
  const PointSet flat{{0, 0}, {1, 0}, {0.5, 0.1}};
  const double beta = barycentric_circumradius(flat);
  CHECK(beta == doctest::Approx(std::sqrt(0.25 + 1.0 / 900.0)).epsilon(1e-12));
  CHECK(beta == doctest::Approx(0.50111).epsilon(1e-5));
  const JungBound j = jung_bound(flat);
  CHECK(j.bound == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(beta < j.bound);
  CHECK(exact_meb(flat).ball.radius == doctest::Approx(0.5));

  std::mt19937_64 rng(35);
  for (int t = 0; t < 100; ++t) {
    const PointSet p = oracle::uniform_cube(rng, 2 + static_cast<std::size_t>(t % 11), 1 + t % 4);
    const double bound = std::min(barycentric_circumradius(p), jung_bound(p).bound);
    CHECK(exact_meb(p).ball.radius <= bound + geometric_tol(p));
  }
  CHECK_THROWS_AS(barycentric_circumradius(oracle::uniform_cube(rng, 17, 2)), GuardExceeded);
}

TEST_CASE("dist_to_hull") {
  CHECK(dist_to_hull(Point{0.1, 0.1}, oracle::square()) == 0.0);
  CHECK(dist_to_hull(Point{2, 0}, PointSet{{0, -1}, {0, 1}}) == doctest::Approx(2.0));
  std::mt19937_64 rng(36);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t % 3);
    const PointSet q = oracle::uniform_cube(rng, 1 + static_cast<std::size_t>(t % 8), d);
    const PointSet a = oracle::uniform_cube(rng, 1, d, 1.5);
    const double ref = oracle::dist_to_hull(a[0].data(), q);
    CHECK(std::abs(dist_to_hull(a[0], q) - ref) <= 1e-7);
    CHECK((dist_to_hull(a[0], q) <= 1e-9) == (ref <= 1e-9));
  }
}

TEST_CASE("nodim_caratheodory") {
  const PointSet sq = oracle::square();
  const ConvexCombination origin{{0, 1, 2, 3}, {0.25, 0.25, 0.25, 0.25}, Point{0, 0}};
  const NodimSelection two = nodim_caratheodory(sq, origin, 2);
  CHECK(two.achieved <= 1e-12);
  CHECK(((two.chosen[0] + 2) % 4 == two.chosen[1]));
  CHECK(nodim_caratheodory(sq, origin, 4).achieved <= 1e-12);
  CHECK_THROWS_AS(nodim_caratheodory(sq, origin, 0), InvalidArgument);
  CHECK_THROWS_AS(nodim_caratheodory(sq, origin, 5), InvalidArgument);

  std::mt19937_64 rng(37);
  for (int t = 0; t < 20; ++t) {
    const PointSet p = oracle::uniform_cube(rng, 10, 4);
    const ConvexCombination c = random_combination(rng, p);
    const double diam = oracle::diameter(p);
    CHECK(oracle::best_r_subset(p, c.target.coords().data(), 3) <= diam / std::sqrt(6.0));
    const NodimSelection s = nodim_caratheodory(p, c, 3);
    CHECK(s.achieved <= diam / std::sqrt(3.0) + 1e-9);
    CHECK(s.diameter == doctest::Approx(diam));
  }
}
