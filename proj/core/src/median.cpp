#include "randmatch/median.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace randmatch {

namespace {

std::uint64_t ceil_of(double x) {
  return static_cast<std::uint64_t>(std::ceil(x));
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must be in (0,1)");
}

}  // namespace

ApproxMedianContract ApproxMedianContract::make(int n, double epsilon) {
  check_epsilon(epsilon);
  if (n < 1) throw std::invalid_argument("need n >= 1");
  ApproxMedianContract c;
  c.epsilon = epsilon;
  c.query_budget = ceil_of(budget_constant * n / (epsilon * epsilon));
  c.failure_probability_target = 1.0 / std::exp(1.0);
  return c;
}

std::uint64_t stand_in_query_count(int n, double epsilon) {
  check_epsilon(epsilon);
  if (n < 1) throw std::invalid_argument("need n >= 1");
  if (n == 1) return 0;
  const std::uint64_t s = ceil_of(4.0 / epsilon);
  return s * s;
}

PointId approx_median_stand_in(DistanceOracle& o, double epsilon, Rng& rng) {
  check_epsilon(epsilon);
  const int n = o.size();
  if (n == 1) return 1;
  // s candidates scored against t reference points; s = t = ceil(4/eps)
  // keeps s*t within the 16n/eps^2 budget for every n >= 2.
  const auto s = static_cast<int>(ceil_of(4.0 / epsilon));
  std::vector<PointId> candidates(s), refs(s);
  for (auto& c : candidates)
    c = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
  for (auto& r : refs)
    r = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
  PointId best = candidates[0];
  double best_score = 0;
  for (int i = 0; i < s; ++i) {
    double score = 0;
    for (int j = 0; j < s; ++j) score += o.dist(candidates[i], refs[j]);
    if (i == 0 || score < best_score) {
      best = candidates[i];
      best_score = score;
    }
  }
  return best;
}

std::uint64_t certificate_count(double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  return 80 * ceil_of(1.0 / epsilon);
}

namespace {
// The certificate loop is meaningful for any eps in (0,1]; eps = 1 gives the
// plain (3-approximate) variant the experiments also exercise.
void check_loop_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("epsilon must be in (0,1]");
}
}  // namespace

std::uint64_t las_vegas_iteration_queries(int n, double epsilon) {
  check_loop_epsilon(epsilon);
  if (n < 2) throw std::invalid_argument("need n >= 2");
  return stand_in_query_count(n, epsilon / 8.0) + static_cast<std::uint64_t>(n - 1) +
         certificate_count(epsilon) * (static_cast<std::uint64_t>(n) / 2);
}

std::uint64_t las_vegas_query_count(int n, double epsilon, std::uint64_t iterations,
                                    bool fell_back) {
  std::uint64_t q = iterations * las_vegas_iteration_queries(n, epsilon);
  if (fell_back) q += static_cast<std::uint64_t>(n) * (n - 1) / 2;
  return q;
}

MedianResult las_vegas_median(DistanceOracle& o, double epsilon, Rng& rng,
                              CandidateFn candidate) {
  check_loop_epsilon(epsilon);
  const int n = o.size();
  if (n < 2) throw std::invalid_argument("need n >= 2");
  MedianResult res;
  if (!candidate)
    candidate = [](DistanceOracle& oo, double e, Rng& rr) {
      return approx_median_stand_in(oo, e, rr);
    };

  const std::uint64_t start = o.queries();
  const std::uint64_t m = certificate_count(epsilon);
  const auto budget = static_cast<std::uint64_t>(n) * n;

  for (;;) {
    // Exhaustive fallback once the rounds have spent n^2 queries; from there
    // the scan is cheaper than the expected remaining rounds and pins the
    // worst case.
    if (o.queries() - start >= budget) {
      const MedianResultExact exact = brute_force_median(o);
      res.point = exact.point;
      res.cost = exact.cost;
      res.fell_back = true;
      res.ratio_certificate = 1.0;  // the scan is exact
      res.queries = o.queries() - start;
      return res;
    }

    ++res.iterations;
    const PointId z = candidate(o, epsilon / 8.0, rng);
    const double cost_z = exact_sum_cost(o, z);

    // All m matching sums are taken before the acceptance check; the round's
    // query count never depends on where (or whether) a certificate shows up.
    std::vector<Permutation> perms;
    std::vector<double> sums;
    perms.reserve(m);
    sums.reserve(m);
    for (std::uint64_t j = 0; j < m; ++j) {
      perms.push_back(knuth_shuffle(n, rng));
      sums.push_back(matching_sum(o, perms.back()));
    }
    for (std::uint64_t j = 0; j < m; ++j) {
      // Any matching sum is at most the optimal cost (route each matched
      // pair through the optimal median), so this inequality certifies
      // cost_z <= (2 + eps) * opt unconditionally.
      if (cost_z <= (2.0 + epsilon) * sums[j]) {
        res.point = z;
        res.cost = cost_z;
        res.certificate_matching_sum = sums[j];
        res.certificate_permutation = std::move(perms[j]);
        res.ratio_certificate = cost_z / sums[j];
        res.queries = o.queries() - start;
        return res;
      }
    }
  }
}

ProbeResult success_probability_probe(const MetricInstance& inst, double epsilon,
                                      std::uint64_t runs, std::uint64_t base_seed) {
  check_loop_epsilon(epsilon);
  const int n = inst.size();
  if (n < 2) throw std::invalid_argument("need n >= 2");
  ProbeResult pr;
  pr.runs = runs;

  DistanceOracle side(inst);  // diagnostic-only; its queries are not the experiment's
  pr.opt_cost = brute_force_median(side).cost;
  pr.r_bar = exact_average_distance(side);
  const double large_threshold = (0.5 - epsilon / 8.0) * n * pr.r_bar;

  const std::uint64_t m = certificate_count(epsilon);
  std::uint64_t accepted = 0, accepted_good = 0, had_large = 0;
  for (std::uint64_t run = 0; run < runs; ++run) {
    Rng rng = make_rng(derive_seed(base_seed, run));
    DistanceOracle o(inst);
    const PointId z = approx_median_stand_in(o, epsilon / 8.0, rng);
    const double cost_z = exact_sum_cost(o, z);
    bool accept = false, large = false;
    for (std::uint64_t j = 0; j < m; ++j) {
      const double x = matching_sum(o, knuth_shuffle(n, rng));
      if (cost_z <= (2.0 + epsilon) * x) accept = true;
      if (x >= large_threshold) large = true;
    }
    if (accept) {
      ++accepted;
      if (cost_z <= (1.0 + epsilon) * pr.opt_cost) ++accepted_good;
    }
    if (large) ++had_large;
  }
  if (runs > 0) {
    pr.accept_rate = static_cast<double>(accepted) / static_cast<double>(runs);
    pr.large_matching_rate = static_cast<double>(had_large) / static_cast<double>(runs);
    pr.accepted_within_one_plus_eps =
        accepted ? static_cast<double>(accepted_good) / static_cast<double>(accepted) : 0.0;
  }
  return pr;
}

}  // namespace randmatch
