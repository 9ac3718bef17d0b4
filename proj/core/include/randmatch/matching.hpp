#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "randmatch/metric.hpp"
#include "randmatch/rng.hpp"

namespace randmatch {

// A permutation of 1..n, value at index i-1 is pi(i).
using Permutation = std::vector<PointId>;

// Fisher-Yates, pinned: for i = n down to 2, swap positions i and a uniform
// j in [1, i]. With the identity start this emits every permutation with
// probability 1/n!, and a fixed seed replays the exact same sequence.
Permutation knuth_shuffle(int n, Rng& rng);

bool is_permutation(std::span<const PointId> pi);

// X = sum over i of d(pi(2i-1), pi(2i)), i = 1..floor(n/2). Odd n leaves
// pi(n) unmatched. Exactly floor(n/2) oracle queries.
double matching_sum(DistanceOracle& o, const Permutation& pi);

// E[X] = floor(n/2) * n * r_bar / (n - 1), where r_bar is the average
// distance over all n^2 ordered pairs. Each unordered pair is matched with
// probability floor(n/2) / C(n,2), and linearity does the rest. n = 1
// returns 0 (empty sum).
double expected_matching_sum(int n, double r_bar);

struct MatchingStats {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased, divisor trials - 1
  double std_error = 0.0;
};
MatchingStats stats_from_values(std::span<const double> values);

// Mean and variance of `trials` independent shuffles on one oracle;
// floor(n/2) queries per trial.
MatchingStats empirical_matching_stats(DistanceOracle& o, std::uint64_t trials, Rng& rng);

// One row of the `stats` experiment.
struct MatchingTrial {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
  std::uint64_t queries = 0;
};
MatchingTrial run_matching_trial(const MetricInstance& inst, std::uint64_t trial,
                                 std::uint64_t base_seed);

// Inputs of the closed-form variance bound. Delta is the diameter, r the
// optimal 1-median cost divided by n, r_bar the average distance, delta the
// cap knob.
struct VarianceBoundInputs {
  int n = 0;
  double r_bar = 0.0;
  double r = 0.0;
  double delta = 0.0;
  double Delta = 0.0;
};

// The bound caps every distance at delta * n * r; it only certifies when the
// diameter actually fits under that cap (and n >= 4 so the pair-of-pairs
// term is defined).
bool variance_bound_certifiable(const VarianceBoundInputs& in);

// Var[X] <= cross-pair term + capped squares term - E[X]^2, specifically
//   floor(n/2)(floor(n/2)-1) / (n(n-1)(n-2)(n-3)) * (n^2 r_bar)^2
//   + floor(n/2)/(n(n-1)) * (floor(n^2 r_bar / cap) + 1) * cap^2
//   - E[X]^2.
// nullopt when not certifiable; never invents a number outside the regime.
std::optional<double> variance_bound_exact(const VarianceBoundInputs& in);

// Chebyshev: P(|X - E[X]| >= k * sigma) <= 1/k^2.
double chebyshev_tail(double k);
bool chebyshev_outside(double x, double mean, double variance, double k);

}  // namespace randmatch
