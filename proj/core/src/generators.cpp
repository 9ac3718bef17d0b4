#include "randmatch/generators.hpp"

#include <stdexcept>
#include <vector>

namespace randmatch {

MetricInstance gen_discrete(int n) { return MetricInstance::discrete(n); }

MetricInstance gen_euclidean(int n, int dim, Rng& rng, Norm norm) {
  std::vector<double> coords(static_cast<size_t>(n) * dim);
  for (double& c : coords) c = uniform_unit(rng);
  // Collisions have probability ~0 at 53-bit resolution; the constructor
  // still rejects them, so regenerating on that exception is not worth code.
  return MetricInstance::euclidean(n, dim, std::move(coords), norm);
}

MetricInstance gen_gnp_connected(int n, double p, Rng& rng, int max_attempts,
                                 bool precompute_all_pairs) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must be in (0,1]");
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v)
        if (uniform_unit(rng) < p) edges.emplace_back(u, v);
    try {
      return MetricInstance::graph(n, std::move(edges), precompute_all_pairs);
    } catch (const std::invalid_argument&) {
      // disconnected draw, try again
    }
  }
  throw std::runtime_error("no connected G(n,p) draw within the attempt budget");
}

MetricInstance gen_random_tree(int n, Rng& rng, bool precompute_all_pairs) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  for (int v = 2; v <= n; ++v) {
    const int parent = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(v - 1)));
    edges.emplace_back(parent, v);
  }
  return MetricInstance::graph(n, std::move(edges), precompute_all_pairs);
}

MetricInstance gen_path(int n, bool precompute_all_pairs) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  for (int v = 1; v + 1 <= n; ++v) edges.emplace_back(v, v + 1);
  return MetricInstance::graph(n, std::move(edges), precompute_all_pairs);
}

MetricInstance gen_metric_matrix(int n, Rng& rng) {
  std::vector<double> d(static_cast<size_t>(n) * n, 0.0);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const double v = 0.5 + 0.5 * uniform_unit(rng);
      d[static_cast<size_t>(i - 1) * n + (j - 1)] = v;
      d[static_cast<size_t>(j - 1) * n + (i - 1)] = v;
    }
  return MetricInstance::explicit_matrix(n, std::move(d));
}

}  // namespace randmatch
