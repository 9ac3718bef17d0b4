#pragma once

#include <cstdint>
#include <functional>

#include "randmatch/matching.hpp"
#include "randmatch/metric.hpp"
#include "randmatch/rng.hpp"

namespace randmatch {

// Contract of the inner approximate selector: it may use at most
// budget_constant * n / eps^2 queries and must return a (1 + eps)-approximate
// 1-median with probability at least 1 - failure_probability_target.
struct ApproxMedianContract {
  static constexpr double budget_constant = 16.0;
  double epsilon = 0.0;
  std::uint64_t query_budget = 0;
  double failure_probability_target = 0.0;  // 1/e

  static ApproxMedianContract make(int n, double epsilon);
};

// Queries the stand-in will spend: s * t with s = t = ceil(4 / eps), except
// n == 1 where the answer needs no queries at all.
std::uint64_t stand_in_query_count(int n, double epsilon);

// Monte Carlo selector filling the contract: sample s candidates and t
// reference points (both uniform with replacement), return the candidate
// whose summed distance to the references is smallest. Ties break to the
// earlier candidate draw. Never exceeds the contract budget.
PointId approx_median_stand_in(DistanceOracle& o, double epsilon, Rng& rng);

// Number of certificate permutations per round: 80 * ceil(1 / eps).
// Accepts any eps > 0 (the general estimator calls it with eps >= 1 too).
std::uint64_t certificate_count(double epsilon);

// Queries of one full certificate round: stand-in + (n - 1) for cost(z)
// + certificate_count * floor(n/2).
std::uint64_t las_vegas_iteration_queries(int n, double epsilon);

struct MedianResult {
  PointId point = 1;
  double cost = 0.0;  // exact sum of distances from point
  // Tightest ratio the run proved: cost / certifying matching sum on a
  // certificate return (between 1 and 2 + eps), exactly 1 on fallback.
  double ratio_certificate = 1.0;
  std::uint64_t iterations = 0;  // certificate rounds run
  std::uint64_t queries = 0;
  bool fell_back = false;  // true when the exhaustive scan decided
  double certificate_matching_sum = 0.0;
  Permutation certificate_permutation;  // empty on fallback
};

// Hook for swapping the inner selector in tests; the default is the
// stand-in above.
using CandidateFn = std::function<PointId(DistanceOracle&, double, Rng&)>;

// Las Vegas selection: repeat { z = candidate(eps/8); take m = 80*ceil(1/eps)
// random matching sums; accept z once cost(z) <= (2 + eps) * X_j for some j }.
// Any matching sum lower-bounds the optimal cost, so an accepted z is a
// certified (2 + eps)-approximation, not just a likely one. Once the run's
// cumulative queries reach n^2, the exhaustive fallback decides, keeping the
// worst case finite without giving up exactness. eps in (0,1], n >= 2.
MedianResult las_vegas_median(DistanceOracle& o, double epsilon, Rng& rng,
                              CandidateFn candidate = {});

// Query count implied by the loop structure; the implementation is asserted
// against it in tests.
std::uint64_t las_vegas_query_count(int n, double epsilon, std::uint64_t iterations,
                                    bool fell_back);

// Empirical per-round behavior over many independent runs of a single
// certificate round: how often the round accepts, how often the accepted
// point is within (1 + eps) of optimal, and how often at least one matching
// sum reaches (1/2 - eps/8) * n * r_bar (the floor that holds with
// probability at least 0.9).
struct ProbeResult {
  std::uint64_t runs = 0;
  double accept_rate = 0.0;
  double accepted_within_one_plus_eps = 0.0;  // fraction of accepting runs
  double large_matching_rate = 0.0;
  double opt_cost = 0.0;
  double r_bar = 0.0;
};
ProbeResult success_probability_probe(const MetricInstance& inst, double epsilon,
                                      std::uint64_t runs, std::uint64_t base_seed);

}  // namespace randmatch
