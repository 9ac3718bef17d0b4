#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "randmatch/metric.hpp"
#include "randmatch/rng.hpp"

namespace randmatch {

// Lower-bound harness: run a 1-median algorithm against the discrete metric
// while recording which pairs it looked at, then exhibit a second metric
// that agrees with everything it saw but makes its answer bad. An algorithm
// that asks fewer than eps * (n-1)^2 / 8 questions cannot tell the two
// worlds apart, so it cannot be (2 - eps)-approximate on both.

struct QueryTranscript {
  int n = 0;
  // Distinct unordered pairs, stored (min, max). After the run the set is
  // padded with (p, y) for every y != p, which is what makes cost(p) under
  // any consistent metric fully determined.
  std::set<std::pair<PointId, PointId>> pairs;
  std::map<std::pair<PointId, PointId>, double> answers;
  PointId output_p = 0;

  std::uint64_t involvement(PointId y) const;  // pairs containing y
};

// The algorithm under test: consumes an oracle, returns its median pick.
using MedianAlgorithm = std::function<PointId(DistanceOracle&, Rng&)>;

// Runs the algorithm on the discrete metric with tracing, normalizes the
// trace to distinct unordered pairs, pads with the output point's pairs.
// Throws std::runtime_error if the algorithm queries d(x, x): the model
// forbids self-pairs, and padding arithmetic relies on that.
QueryTranscript record_run(const MedianAlgorithm& algorithm, int n, Rng& rng);

double query_threshold(int n, double epsilon);  // eps * (n-1)^2 / 8

struct FoolingResult {
  PointId p_hat = 0;
  MetricInstance metric;  // explicit matrix over {1/2, 1}
  double cost_p = 0.0;
  double cost_p_hat = 0.0;
  double achieved_ratio = 0.0;  // cost_p / true optimum of the fooling metric
  std::uint64_t involvement_of_p_hat = 0;
};

struct Refusal {
  std::string reason;  // "budget_met": the transcript is too thorough to fool
};

// Under budget: pick p_hat != output_p with minimum involvement (ties to the
// smallest index), set every unqueried pair touching p_hat to 1/2, every
// other off-diagonal value to 1. At or over budget: Refusal.
std::variant<FoolingResult, Refusal> construct_fooling_metric(
    const QueryTranscript& t, double epsilon);

struct VerificationCheck {
  std::string name;
  bool passed = false;
};
struct VerificationReport {
  std::vector<VerificationCheck> checks;
  bool all_passed = false;
};

// The six facts that make the fooling metric a counterexample:
//   metric_axioms        validate_metric passes
//   transcript_agreement every recorded answer is reproduced
//   involvement_bound    involvement(p_hat) <= 2|Q| / (n-1)
//   cost_p_exact         cost of the algorithm's output is exactly n-1
//   cost_p_hat_small     cost(p_hat) < (1/2 + eps/8)(n-1)
//   ratio_exceeds        achieved_ratio > 2 - eps
VerificationReport verify_fooling(const FoolingResult& fr, const QueryTranscript& t,
                                  double epsilon);

// Stub corpus for exercising the harness.
MedianAlgorithm stub_query_nothing(PointId output = 1);
MedianAlgorithm stub_random_queries(std::uint64_t k);  // k uniform distinct-point pairs
MedianAlgorithm stub_truncated_las_vegas(double epsilon, std::uint64_t query_cap);
MedianAlgorithm stub_brute_force();

}  // namespace randmatch
