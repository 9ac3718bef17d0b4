#include "randmatch/maxsqsum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace randmatch {
namespace msq {

double Instance::coeff() const {
  return std::floor(n / 2.0) / (static_cast<double>(n) * (n - 1));
}

double Instance::total() const { return static_cast<double>(n) * n * r_bar; }

long long Instance::cap_slots() const {
  long long k = static_cast<long long>(std::floor(total() / cap));
  while (k > 0 && static_cast<double>(k) * cap > total()) --k;
  return k;
}

void check(const Instance& in) {
  if (in.n < 2) throw std::invalid_argument("need n >= 2");
  if (!(in.r_bar > 0.0) || !std::isfinite(in.r_bar))
    throw std::invalid_argument("r_bar must be positive and finite");
  if (!(in.cap > 0.0) || !std::isfinite(in.cap))
    throw std::invalid_argument("cap must be positive and finite");
  if (!in.feasible())
    throw std::domain_error("infeasible: r_bar > cap leaves no room for the budget");
}

double analytic_bound(const Instance& in) {
  check(in);
  return in.coeff() * static_cast<double>(in.cap_slots() + 1) * in.cap * in.cap;
}

double objective_of(const Instance& in, std::span<const double> values) {
  const size_t m = static_cast<size_t>(in.n) * in.n;
  if (values.size() != m) throw std::invalid_argument("values size must be n^2");
  double s = 0;
  for (double v : values) s += v * v;
  return in.coeff() * s;
}

Solution greedy_optimum(const Instance& in) {
  check(in);
  const size_t m = static_cast<size_t>(in.n) * in.n;
  const long long k = in.cap_slots();
  const double remainder = in.total() - static_cast<double>(k) * in.cap;
  Solution s;
  s.values.assign(m, 0.0);
  for (long long i = 0; i < k; ++i) s.values[static_cast<size_t>(i)] = in.cap;
  if (remainder > 0.0) s.values[static_cast<size_t>(k)] = remainder;
  // k <= n^2 because k * cap <= total = n^2 * r_bar <= n^2 * cap; the
  // remainder slot exists whenever remainder > 0 since then k < n^2.
  s.objective = objective_of(in, s.values);
  s.at_cap_count = k;
  s.support_size = k + (remainder > 0.0 ? 1 : 0);
  return s;
}

Solution random_feasible(const Instance& in, Rng& rng) {
  check(in);
  const size_t m = static_cast<size_t>(in.n) * in.n;
  const double total = in.total();

  std::vector<double> w(m);
  for (double& x : w) x = uniform_unit_positive(rng);

  // Water-filling: scale w by t and clip at cap, with t chosen so the sum is
  // exactly the budget. As t grows, coordinates saturate in descending-w
  // order, so with w sorted the saturated set is a prefix.
  std::vector<size_t> order(m);
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return w[a] > w[b]; });

  std::vector<double> suffix(m + 1, 0.0);
  for (size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] + w[order[i]];

  Solution s;
  s.values.assign(m, 0.0);
  size_t saturated = m;  // fallback: everything at cap (total == m * cap)
  double t = 0.0;
  for (size_t k = 0; k < m; ++k) {
    const double tk = (total - static_cast<double>(k) * in.cap) / suffix[k];
    if (w[order[k]] * tk <= in.cap) {
      saturated = k;
      t = tk;
      break;
    }
  }
  for (size_t i = 0; i < m; ++i) {
    const size_t j = order[i];
    s.values[j] = i < saturated ? in.cap : std::min(w[j] * t, in.cap);
  }
  // Spread rounding residue over the first unsaturated coordinate so the
  // budget holds to machine precision.
  if (saturated < m) {
    double sum = 0;
    for (double v : s.values) sum += v;
    const size_t j = order[saturated];
    s.values[j] = std::clamp(s.values[j] + (total - sum), 0.0, in.cap);
  }

  s.objective = objective_of(in, s.values);
  for (double v : s.values) {
    if (v == in.cap) ++s.at_cap_count;
    if (v > 0.0) ++s.support_size;
  }
  return s;
}

}  // namespace msq
}  // namespace randmatch
