#include "randmatch/adversary.hpp"

#include <algorithm>
#include <stdexcept>

#include "randmatch/matching.hpp"
#include "randmatch/median.hpp"

namespace randmatch {

std::uint64_t QueryTranscript::involvement(PointId y) const {
  std::uint64_t c = 0;
  for (const auto& [a, b] : pairs)
    if (a == y || b == y) ++c;
  return c;
}

QueryTranscript record_run(const MedianAlgorithm& algorithm, int n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  const MetricInstance d1 = MetricInstance::discrete(n);
  DistanceOracle o(d1, /*trace=*/true);
  const PointId p = algorithm(o, rng);
  if (p < 1 || p > n) throw std::runtime_error("algorithm output out of range");

  QueryTranscript t;
  t.n = n;
  t.output_p = p;
  auto normalized = [](PointId x, PointId y) {
    return std::pair<PointId, PointId>{std::min(x, y), std::max(x, y)};
  };
  for (const auto& [x, y] : o.ledger().trace) {
    if (x == y)
      throw std::runtime_error("algorithm queried a self-pair, which the model forbids");
    const auto key = normalized(x, y);
    t.pairs.insert(key);
    t.answers[key] = 1.0;  // discrete metric, distinct points
  }
  // Dummy padding: charging the algorithm for every pair at its own output
  // only strengthens it, and pins cost(p) = n - 1 in any consistent metric.
  for (PointId y = 1; y <= n; ++y)
    if (y != p) {
      const auto key = normalized(p, y);
      t.pairs.insert(key);
      t.answers[key] = 1.0;
    }
  return t;
}

double query_threshold(int n, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must be in (0,1)");
  return epsilon * static_cast<double>(n - 1) * (n - 1) / 8.0;
}

std::variant<FoolingResult, Refusal> construct_fooling_metric(const QueryTranscript& t,
                                                              double epsilon) {
  const int n = t.n;
  if (static_cast<double>(t.pairs.size()) >= query_threshold(n, epsilon))
    return Refusal{"budget_met"};

  // Averaging picks the fooling point: the sum of involvements over the
  // n - 1 candidates is at most 2|Q|, so the minimum is at most
  // 2|Q| / (n-1), few enough forced 1s to keep cost(p_hat) low.
  std::vector<std::uint64_t> inv(n + 1, 0);
  for (const auto& [a, b] : t.pairs) {
    ++inv[a];
    ++inv[b];
  }
  PointId p_hat = 0;
  for (PointId y = 1; y <= n; ++y) {
    if (y == t.output_p) continue;
    if (p_hat == 0 || inv[y] < inv[p_hat]) p_hat = y;
  }

  std::vector<double> d(static_cast<size_t>(n) * n, 1.0);
  for (int i = 0; i < n; ++i) d[static_cast<size_t>(i) * n + i] = 0.0;
  auto set = [&](PointId x, PointId y, double v) {
    d[static_cast<size_t>(x - 1) * n + (y - 1)] = v;
    d[static_cast<size_t>(y - 1) * n + (x - 1)] = v;
  };
  for (PointId y = 1; y <= n; ++y) {
    if (y == p_hat) continue;
    const std::pair<PointId, PointId> key{std::min(p_hat, y), std::max(p_hat, y)};
    if (!t.pairs.count(key)) set(p_hat, y, 0.5);
  }

  FoolingResult fr;
  fr.p_hat = p_hat;
  fr.metric = MetricInstance::explicit_matrix(n, std::move(d));
  fr.involvement_of_p_hat = inv[p_hat];

  DistanceOracle o(fr.metric);
  fr.cost_p = exact_sum_cost(o, t.output_p);
  fr.cost_p_hat = exact_sum_cost(o, p_hat);
  fr.achieved_ratio = fr.cost_p / brute_force_median(o).cost;
  return fr;
}

VerificationReport verify_fooling(const FoolingResult& fr, const QueryTranscript& t,
                                  double epsilon) {
  VerificationReport rep;
  const int n = t.n;
  const auto& d = fr.metric.matrix_data().d;
  auto at = [&](PointId x, PointId y) {
    return d[static_cast<size_t>(x - 1) * n + (y - 1)];
  };

  rep.checks.push_back({"metric_axioms", !validate_metric(d, n).has_value()});

  bool agrees = true;
  for (const auto& [pair, answer] : t.answers)
    if (at(pair.first, pair.second) != answer) agrees = false;
  rep.checks.push_back({"transcript_agreement", agrees});

  rep.checks.push_back({"involvement_bound",
                        static_cast<double>(fr.involvement_of_p_hat) <=
                            2.0 * static_cast<double>(t.pairs.size()) / (n - 1)});

  rep.checks.push_back({"cost_p_exact", fr.cost_p == static_cast<double>(n - 1)});

  rep.checks.push_back(
      {"cost_p_hat_small", fr.cost_p_hat < (0.5 + epsilon / 8.0) * (n - 1)});

  rep.checks.push_back({"ratio_exceeds", fr.achieved_ratio > 2.0 - epsilon});

  rep.all_passed = true;
  for (const auto& c : rep.checks) rep.all_passed &= c.passed;
  return rep;
}

MedianAlgorithm stub_query_nothing(PointId output) {
  return [output](DistanceOracle&, Rng&) { return output; };
}

MedianAlgorithm stub_random_queries(std::uint64_t k) {
  return [k](DistanceOracle& o, Rng& rng) -> PointId {
    const auto n = static_cast<std::uint64_t>(o.size());
    for (std::uint64_t i = 0; i < k; ++i) {
      const auto x = static_cast<PointId>(1 + uniform_below(rng, n));
      auto y = static_cast<PointId>(1 + uniform_below(rng, n - 1));
      if (y >= x) ++y;  // uniform over pairs with y != x
      o.dist(x, y);
    }
    return static_cast<PointId>(1 + uniform_below(rng, n));
  };
}

MedianAlgorithm stub_truncated_las_vegas(double epsilon, std::uint64_t query_cap) {
  return [epsilon, query_cap](DistanceOracle& o, Rng& rng) -> PointId {
    const int n = o.size();
    const std::uint64_t start = o.queries();
    auto used = [&] { return o.queries() - start; };
    PointId z = 1;
    if (stand_in_query_count(n, epsilon / 8.0) <= query_cap)
      z = approx_median_stand_in(o, epsilon / 8.0, rng);
    if (used() + static_cast<std::uint64_t>(n - 1) <= query_cap) {
      exact_sum_cost(o, z);
      const std::uint64_t m = certificate_count(epsilon);
      const auto per_matching = static_cast<std::uint64_t>(n) / 2;
      for (std::uint64_t j = 0; j < m && used() + per_matching <= query_cap; ++j)
        matching_sum(o, knuth_shuffle(n, rng));
    }
    return z;
  };
}

MedianAlgorithm stub_brute_force() {
  return [](DistanceOracle& o, Rng&) { return brute_force_median(o).point; };
}

}  // namespace randmatch
