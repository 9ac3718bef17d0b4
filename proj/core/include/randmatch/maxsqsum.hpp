#pragma once

#include <span>
#include <vector>

#include "randmatch/rng.hpp"

namespace randmatch {
namespace msq {

// The extremal problem behind the variance analysis: n^2 variables, each in
// [0, cap], summing to exactly n^2 * r_bar; maximize coeff * sum of squares
// with coeff = floor(n/2) / (n(n-1)). Feasible iff r_bar <= cap.
struct Instance {
  int n = 0;
  double r_bar = 0.0;
  double cap = 0.0;

  double coeff() const;
  double total() const;  // n^2 * r_bar
  // floor(total / cap), clamped against floating-point overshoot so that
  // cap_slots() * cap <= total always holds.
  long long cap_slots() const;
  bool feasible() const { return r_bar <= cap; }
};

// Throws std::invalid_argument on n < 2 or non-positive r_bar/cap,
// std::domain_error when infeasible.
void check(const Instance& in);

// Closed-form upper bound: coeff * (cap_slots + 1) * cap^2. It dominates the
// true optimum because an optimal solution has at most cap_slots + 1 nonzero
// coordinates, each contributing at most cap^2.
double analytic_bound(const Instance& in);

struct Solution {
  std::vector<double> values;  // length n^2
  double objective = 0.0;
  long long at_cap_count = 0;
  long long support_size = 0;
};

double objective_of(const Instance& in, std::span<const double> values);

// The exact optimum: push as many coordinates to cap as the budget allows,
// park the remainder on one more coordinate. Convexity of x^2 makes any
// other mass split strictly worse.
Solution greedy_optimum(const Instance& in);

// A random point of the feasible region, for dominance experiments: draw
// positive weights, scale them to the budget, clip at cap by exact
// water-filling over the sorted weights.
Solution random_feasible(const Instance& in, Rng& rng);

}  // namespace msq
}  // namespace randmatch
