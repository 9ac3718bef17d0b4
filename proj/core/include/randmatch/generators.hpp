#pragma once

#include "randmatch/metric.hpp"
#include "randmatch/rng.hpp"

namespace randmatch {

// Instance families used by the experiments and the CLI `gen` command.
// Same (family, parameters, seed) always produces the same instance.

MetricInstance gen_discrete(int n);

// n distinct points uniform in [0,1)^dim.
MetricInstance gen_euclidean(int n, int dim, Rng& rng, Norm norm = Norm::l2);

// G(n, p) conditioned on connectivity: resample until connected, up to
// max_attempts draws, then throw. Shortest-path hop metric.
MetricInstance gen_gnp_connected(int n, double p, Rng& rng, int max_attempts = 100,
                                 bool precompute_all_pairs = false);

// Uniform random attachment: vertex v >= 2 picks its parent uniformly from
// 1..v-1. Always connected.
MetricInstance gen_random_tree(int n, Rng& rng, bool precompute_all_pairs = false);

MetricInstance gen_path(int n, bool precompute_all_pairs = false);

// Symmetric matrix with off-diagonal entries uniform in [1/2, 1]. Any such
// matrix satisfies the triangle inequality outright: a + b >= 1 >= c.
MetricInstance gen_metric_matrix(int n, Rng& rng);

}  // namespace randmatch
