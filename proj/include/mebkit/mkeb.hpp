#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mebkit/geometry.hpp"

namespace mebkit {

// Ball covering at least `k` of the input points.
struct MkebSolution {
  Ball ball;
  std::vector<std::size_t> covered;  // every index within radius + tol
  std::size_t k = 0;
  std::size_t sample_size = 0;       // draws made by the sampled variant
  bool exact_path = true;            // false only when a proper sample was used
};

inline constexpr double kMkebCandidateBudget = 1e7;

// Smallest ball covering >= k points. Enumerates zero-radius balls at the
// points and circumballs of affinely independent subsets of size 2..d+1; the
// optimum is always one of them. Throws GuardExceeded when n^(d+1) > 1e7.
MkebSolution exact_mkeb(const PointSet& points, std::size_t k);

// m = ceil((d+1)/eps^(d+1) * ln(1/delta)), at least 1.
std::size_t outlier_sample_size(std::size_t d, double eps, double delta);

// Draws m points uniformly with replacement and returns the exact MEB of the
// sample together with the points it covers. When m >= n the whole set is
// used. The target count is ceil((1 - eps) n).
MkebSolution outlier_meb_sample(const PointSet& points, double eps, double delta,
                                std::uint64_t seed);

}  // namespace mebkit
