#include "randmatch/matching.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "randmatch/maxsqsum.hpp"

namespace randmatch {

Permutation knuth_shuffle(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  Permutation pi(n);
  std::iota(pi.begin(), pi.end(), 1);
  for (int i = n; i >= 2; --i) {
    const auto j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i)));
    std::swap(pi[i - 1], pi[j]);
  }
  return pi;
}

bool is_permutation(std::span<const PointId> pi) {
  const int n = static_cast<int>(pi.size());
  std::vector<bool> seen(n + 1, false);
  for (PointId p : pi) {
    if (p < 1 || p > n || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

double matching_sum(DistanceOracle& o, const Permutation& pi) {
  if (static_cast<int>(pi.size()) != o.size())
    throw std::invalid_argument("permutation length must equal n");
  double x = 0;
  for (size_t i = 0; i + 1 < pi.size(); i += 2) x += o.dist(pi[i], pi[i + 1]);
  return x;
}

double expected_matching_sum(int n, double r_bar) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  if (n == 1) return 0.0;  // empty sum, and the n-1 divisor needs guarding
  return std::floor(n / 2.0) * n * r_bar / (n - 1);
}

MatchingStats stats_from_values(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("need at least 2 values");
  MatchingStats s;
  s.trials = values.size();
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.trials);
  double sq = 0;
  for (double v : values) {
    const double d = v - s.mean;
    sq += d * d;
  }
  s.variance = sq / static_cast<double>(s.trials - 1);  // unbiased
  s.std_error = std::sqrt(s.variance / static_cast<double>(s.trials));
  return s;
}

MatchingStats empirical_matching_stats(DistanceOracle& o, std::uint64_t trials, Rng& rng) {
  if (trials < 2) throw std::invalid_argument("need at least 2 trials");
  std::vector<double> values;
  values.reserve(trials);
  for (std::uint64_t t = 0; t < trials; ++t)
    values.push_back(matching_sum(o, knuth_shuffle(o.size(), rng)));
  return stats_from_values(values);
}

MatchingTrial run_matching_trial(const MetricInstance& inst, std::uint64_t trial,
                                 std::uint64_t base_seed) {
  MatchingTrial t;
  t.trial = trial;
  t.seed = derive_seed(base_seed, trial);
  Rng rng = make_rng(t.seed);
  DistanceOracle o(inst);
  t.value = matching_sum(o, knuth_shuffle(inst.size(), rng));
  t.queries = o.queries();
  return t;
}

bool variance_bound_certifiable(const VarianceBoundInputs& in) {
  if (in.n < 4) return false;
  if (!(in.r > 0.0) || !(in.r_bar > 0.0) || !(in.delta > 0.0) || !(in.Delta >= 0.0))
    return false;
  return in.delta * in.n * in.r >= in.Delta;
}

std::optional<double> variance_bound_exact(const VarianceBoundInputs& in) {
  if (in.n < 1 || !std::isfinite(in.r_bar) || !std::isfinite(in.r) ||
      !std::isfinite(in.delta) || !std::isfinite(in.Delta))
    throw std::invalid_argument("variance bound inputs must be finite");
  if (!variance_bound_certifiable(in)) return std::nullopt;

  const double n = in.n;
  const double half = std::floor(n / 2.0);
  const double total = n * n * in.r_bar;
  const double cap = in.delta * n * in.r;

  const double cross =
      half * (half - 1.0) / (n * (n - 1.0) * (n - 2.0) * (n - 3.0)) * total * total;
  // The squares term is exactly the capped extremal bound with this cap;
  // r_bar <= Delta <= cap keeps the instance feasible.
  const double squares = msq::analytic_bound(msq::Instance{in.n, in.r_bar, cap});
  const double mean = expected_matching_sum(in.n, in.r_bar);
  return cross + squares - mean * mean;
}

double chebyshev_tail(double k) {
  if (!(k >= 1.0)) throw std::invalid_argument("need k >= 1");
  return 1.0 / (k * k);
}

bool chebyshev_outside(double x, double mean, double variance, double k) {
  if (!(variance >= 0.0)) throw std::invalid_argument("variance must be >= 0");
  return std::abs(x - mean) >= k * std::sqrt(variance);
}

}  // namespace randmatch
