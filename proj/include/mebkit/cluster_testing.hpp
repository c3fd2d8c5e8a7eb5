#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mebkit/geometry.hpp"

namespace mebkit {

enum class Outcome { accept, reject };

const char* to_string(Outcome outcome);

struct TestVerdict {
  Outcome outcome = Outcome::accept;
  // The sampled set that failed containment; present iff outcome == reject.
  std::optional<PointSet> witness;
  std::vector<std::size_t> witness_indices;
  std::size_t rounds_used = 0;
  std::size_t round_budget = 0;
  std::uint64_t seed = 0;
};

// ceil((1/eps^(d+1)) ln(1/delta)); 0 when delta = 1.
std::size_t one_s_round_budget(std::size_t d, double eps, double delta);

// ceil((1/c) ln(1/delta)).
std::size_t k_g_round_budget(double c, double delta);

// (1,S)-cluster tester. Each round samples d+1 points uniformly with
// replacement (round r seeded by round_seed(seed, r)) and rejects with that
// sample as witness when no translate of `body` contains it. With n < d+1 the
// whole set is checked directly instead.
TestVerdict one_s_tester(const PointSet& points, const ConvexBody& body, double eps,
                         double delta, std::uint64_t seed);

inline constexpr std::size_t kMaxTranslates = 8;
inline constexpr double kDefaultRoundConstant = 0.01;

// True iff `points` can be split into at most k groups that each fit in a
// translate of `body`. Exhaustive over set partitions.
bool coverable_by_translates(const ConvexBody& body, const PointSet& points, std::size_t k);

// (k,G)-cluster tester: rounds sample k+1 points and reject when they are not
// coverable by k translates of `body`. Requires n >= k+1 and k <= 8.
TestVerdict k_g_tester(const PointSet& points, const ConvexBody& body, std::size_t k,
                       double c, double delta, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Promise-problem labeling.

enum class PromiseClass { yes, no, violates, both };

const char* to_string(PromiseClass label);

struct PromiseLabel {
  bool yes_holds = false;  // (k1, eps)-clusterable
  bool no_holds = false;   // (k2, delta)-far
  PromiseClass label = PromiseClass::violates;
};

PromiseClass classify(bool yes_holds, bool no_holds);

struct ScatteredPoints {
  std::size_t count = 0;
  std::vector<std::size_t> indices;
  bool exact = true;  // false: greedy lower bound (n > 60)
};

inline constexpr std::size_t kMaxExactScattered = 60;

// Largest subset with all pairwise distances >= delta. Exact maximum-clique
// branch and bound for n <= 60, greedy farthest-first lower bound above.
ScatteredPoints scattered_points(const PointSet& points, double delta);

inline constexpr std::size_t kMaxPromiseSize = 200;

// Exact decision: can the points be covered by k balls of radius eps?
bool is_clusterable(const PointSet& points, std::size_t k, double eps);

PromiseLabel promise_label(const PointSet& points, std::size_t k1, double eps,
                           std::size_t k2, double delta);

}  // namespace mebkit
