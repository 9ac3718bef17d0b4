#include "randmatch/avgdist.hpp"

#include <stdexcept>

#include "randmatch/median.hpp"

namespace randmatch {

const char* avg_method_name(AvgMethod m) {
  switch (m) {
    case AvgMethod::matching_max: return "matching_max";
    case AvgMethod::graph_single_matching: return "graph_single_matching";
    case AvgMethod::pair_sampling: return "pair_sampling";
  }
  return "?";
}

AvgEstimate estimate_avg_general(DistanceOracle& o, double epsilon, Rng& rng) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  const int n = o.size();
  if (n < 2) throw std::invalid_argument("need n >= 2");
  const std::uint64_t m = certificate_count(epsilon);
  double best = 0.0;
  for (std::uint64_t j = 0; j < m; ++j) {
    const double x = matching_sum(o, knuth_shuffle(n, rng));
    if (x > best) best = x;
  }
  AvgEstimate e;
  e.value = best / n;
  e.method = AvgMethod::matching_max;
  e.queries = m * (static_cast<std::uint64_t>(n) / 2);
  e.permutations_used = m;
  return e;
}

AvgEstimate estimate_avg_graph(DistanceOracle& o, Rng& rng) {
  if (o.instance().kind() != MetricInstance::Kind::graph)
    throw std::invalid_argument("graph estimator needs a graph instance");
  const int n = o.size();
  if (n < 2) throw std::invalid_argument("need n >= 2");
  AvgEstimate e;
  e.value = matching_sum(o, knuth_shuffle(n, rng)) * 2.0 / n;
  e.method = AvgMethod::graph_single_matching;
  e.queries = static_cast<std::uint64_t>(n) / 2;
  e.permutations_used = 1;
  return e;
}

AvgEstimate pair_sampling_baseline(DistanceOracle& o, std::uint64_t t, Rng& rng) {
  if (t < 1) throw std::invalid_argument("need t >= 1");
  const auto n = static_cast<std::uint64_t>(o.size());
  double sum = 0;
  for (std::uint64_t i = 0; i < t; ++i) {
    const auto x = static_cast<PointId>(1 + uniform_below(rng, n));
    const auto y = static_cast<PointId>(1 + uniform_below(rng, n));
    sum += o.dist(x, y);
  }
  AvgEstimate e;
  e.value = sum / static_cast<double>(t);
  e.method = AvgMethod::pair_sampling;
  e.queries = t;
  return e;
}

GraphDiagnostics graph_diagnostics(DistanceOracle& o, double delta) {
  if (o.instance().kind() != MetricInstance::Kind::graph)
    throw std::invalid_argument("diagnostics need a graph instance");
  const int n = o.size();
  GraphDiagnostics g;
  g.Delta = diameter(o).value;
  g.r = brute_force_median(o).cost / n;
  g.r_bar = exact_average_distance(o);
  g.path_bound_ok = n * g.r >= g.Delta * g.Delta / 4.0;
  g.unit_bound_ok = g.r >= 0.5 || n == 1;
  g.diameter_cap_ok = delta * n * g.r >= g.Delta;
  g.avg_le_twice_r_ok = g.r_bar <= 2.0 * g.r || n == 1;
  return g;
}

}  // namespace randmatch
