#pragma once

#include <cstdint>

#include "randmatch/matching.hpp"
#include "randmatch/metric.hpp"
#include "randmatch/rng.hpp"

namespace randmatch {

enum class AvgMethod { matching_max, graph_single_matching, pair_sampling };
const char* avg_method_name(AvgMethod m);

struct AvgEstimate {
  double value = 0.0;
  AvgMethod method = AvgMethod::matching_max;
  std::uint64_t queries = 0;
  std::uint64_t permutations_used = 0;  // matching-based methods only
};

// General-metric estimator: take 80 * ceil(1/eps) independent matching sums
// and return max_j X_j / n. One-sided by construction: every X_j is at most
// the optimal median cost, hence at most n * r_bar, so the estimate never
// exceeds r_bar; it lands above (1/2 - eps) * r_bar with constant
// probability. Any eps > 0; exactly 80 * ceil(1/eps) * floor(n/2) queries.
AvgEstimate estimate_avg_general(DistanceOracle& o, double epsilon, Rng& rng);

// Connected-graph estimator: a single matching sum scaled by 2/n. Unit edge
// lengths make one permutation enough for constant relative error with
// constant probability. Exactly floor(n/2) queries.
AvgEstimate estimate_avg_graph(DistanceOracle& o, Rng& rng);

// Baseline: mean of t uniformly sampled ordered pairs (x, y), diagonal
// included to match the n^2-pair definition of r_bar, so it is unbiased.
// Exactly t queries.
AvgEstimate pair_sampling_baseline(DistanceOracle& o, std::uint64_t t, Rng& rng);

// Structural facts behind the graph estimator's analysis, recomputed
// exactly. r is the optimal median cost divided by n.
struct GraphDiagnostics {
  double Delta = 0.0;  // diameter
  double r = 0.0;
  double r_bar = 0.0;
  bool path_bound_ok = false;     // n * r >= Delta^2 / 4, from a furthest-pair path
  bool unit_bound_ok = false;     // r >= 1/2, from unit edges, any n >= 2
  bool diameter_cap_ok = false;   // delta * n * r >= Delta for the supplied delta
  bool avg_le_twice_r_ok = false; // r_bar <= 2 r, true on every metric
};
GraphDiagnostics graph_diagnostics(DistanceOracle& o, double delta);

}  // namespace randmatch
