#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <variant>

#include "randmatch/adversary.hpp"
#include "randmatch/metric.hpp"
#include "randmatch/rng.hpp"

using namespace randmatch;

namespace {

const FoolingResult& as_fooling(const std::variant<FoolingResult, Refusal>& v) {
  REQUIRE(std::holds_alternative<FoolingResult>(v));
  return std::get<FoolingResult>(v);
}

}  // namespace

TEST_CASE("query threshold") {
  CHECK(query_threshold(100, 0.5) == doctest::Approx(612.5625).epsilon(1e-15));
  CHECK(query_threshold(10, 0.8) == doctest::Approx(8.1).epsilon(1e-15));
  CHECK_THROWS_AS(query_threshold(10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(query_threshold(10, 1.0), std::invalid_argument);
}

TEST_CASE("transcripts record distinct pairs plus the output's padding") {
  Rng rng = make_rng(1);
  auto t = record_run(stub_query_nothing(1), 100, rng);
  CHECK(t.n == 100);
  CHECK(t.output_p == 1);
  CHECK(t.pairs.size() == 99);  // pure padding
  for (const auto& [a, b] : t.pairs) {
    CHECK(a == 1);
    CHECK(t.answers.at({a, b}) == 1.0);
  }
  CHECK(t.involvement(1) == 99);
  CHECK(t.involvement(2) == 1);

  SUBCASE("brute force asks every unordered pair once") {
    Rng r2 = make_rng(2);
    auto tb = record_run(stub_brute_force(), 10, r2);
    CHECK(tb.pairs.size() == 45);
  }

  SUBCASE("self-pair queries are rejected") {
    MedianAlgorithm bad = [](DistanceOracle& o, Rng&) -> PointId {
      o.dist(3, 3);
      return 1;
    };
    Rng r3 = make_rng(3);
    CHECK_THROWS_AS(record_run(bad, 5, r3), std::runtime_error);
  }
}

TEST_CASE("fooling metric for the oblivious algorithm, n = 100") {
  Rng rng = make_rng(1);
  auto t = record_run(stub_query_nothing(1), 100, rng);
  auto v = construct_fooling_metric(t, 0.5);
  const auto& fr = as_fooling(v);

  CHECK(fr.p_hat == 2);  // smallest index among the untouched points
  CHECK(fr.involvement_of_p_hat == 1);
  CHECK(fr.cost_p == 99.0);
  CHECK(fr.cost_p_hat == 50.0);  // 1 forced edge to p, 98 halves
  CHECK(fr.achieved_ratio == doctest::Approx(1.98).epsilon(1e-15));
  CHECK(fr.achieved_ratio > 2.0 - 0.5);
  // cost(p_hat) beats the (1/2 + eps/8)(n-1) budget: 50 < 55.6875
  CHECK(fr.cost_p_hat < (0.5 + 0.5 / 8) * 99);

  auto rep = verify_fooling(fr, t, 0.5);
  CHECK(rep.all_passed);
  REQUIRE(rep.checks.size() == 6);
  CHECK(rep.checks[0].name == "metric_axioms");
  CHECK(rep.checks[1].name == "transcript_agreement");
  CHECK(rep.checks[2].name == "involvement_bound");
  CHECK(rep.checks[3].name == "cost_p_exact");
  CHECK(rep.checks[4].name == "cost_p_hat_small");
  CHECK(rep.checks[5].name == "ratio_exceeds");
  for (const auto& c : rep.checks) CHECK(c.passed);

  SUBCASE("the metric is {1/2, 1}-valued and valid") {
    const auto& d = fr.metric.matrix_data().d;
    CHECK(!validate_metric(d, 100).has_value());
    for (int i = 0; i < 100; ++i)
      for (int j = 0; j < 100; ++j) {
        const double x = d[static_cast<size_t>(i) * 100 + j];
        if (i == j)
          REQUIRE(x == 0.0);
        else
          REQUIRE((x == 0.5 || x == 1.0));
      }
  }

  SUBCASE("tampering with a recorded answer is caught") {
    FoolingResult bad = fr;
    auto d = fr.metric.matrix_data().d;
    d[0 * 100 + 1] = 0.5;  // pair (1,2) was answered 1
    d[1 * 100 + 0] = 0.5;
    bad.metric = MetricInstance::explicit_matrix(100, std::move(d));
    auto r = verify_fooling(bad, t, 0.5);
    CHECK(!r.all_passed);
    CHECK(r.checks[1].name == "transcript_agreement");
    CHECK(!r.checks[1].passed);
  }
}

TEST_CASE("thorough algorithms are refused, not fooled") {
  Rng rng = make_rng(4);
  auto t = record_run(stub_brute_force(), 10, rng);
  // 45 pairs >= threshold 0.5 * 81 / 8 = 5.0625
  auto v = construct_fooling_metric(t, 0.5);
  REQUIRE(std::holds_alternative<Refusal>(v));
  CHECK(std::get<Refusal>(v).reason == "budget_met");
}

TEST_CASE("every under-budget stub gets fooled") {
  const int n = 100;
  const double eps = 0.5;
  const double threshold = query_threshold(n, eps);

  std::vector<std::pair<const char*, MedianAlgorithm>> stubs;
  stubs.emplace_back("query-nothing", stub_query_nothing(1));
  stubs.emplace_back("random-100", stub_random_queries(100));
  stubs.emplace_back("random-300", stub_random_queries(300));
  stubs.emplace_back("truncated-lv",
                     stub_truncated_las_vegas(eps, static_cast<std::uint64_t>(
                                                       threshold) - n));

  for (auto& [name, stub] : stubs) {
    CAPTURE(name);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng = make_rng(derive_seed(100, seed));
      auto t = record_run(stub, n, rng);
      REQUIRE(static_cast<double>(t.pairs.size()) < threshold);
      auto v = construct_fooling_metric(t, eps);
      const auto& fr = as_fooling(v);
      auto rep = verify_fooling(fr, t, eps);
      REQUIRE(rep.all_passed);
      // the fooled output is never optimal in the fooling world; the optimum
      // there is p_hat itself
      DistanceOracle o(fr.metric);
      auto opt = brute_force_median(o);
      REQUIRE(opt.cost == fr.cost_p_hat);
      REQUIRE(fr.achieved_ratio == fr.cost_p / opt.cost);
    }
  }
}

TEST_CASE("ratio approaches 2 as epsilon shrinks") {
  // padding alone costs n - 1 pairs, so eps must stay above 8/(n-1) for the
  // transcript to be under budget at all
  const int n = 300;
  Rng rng = make_rng(9);
  auto t = record_run(stub_query_nothing(7), n, rng);
  for (double eps : {0.9, 0.5, 0.2, 0.1}) {
    auto v = construct_fooling_metric(t, eps);
    const auto& fr = as_fooling(v);
    CHECK(fr.achieved_ratio == doctest::Approx(299.0 / 150.0).epsilon(1e-15));
    CHECK(fr.achieved_ratio > 2.0 - eps);
    CHECK(verify_fooling(fr, t, eps).all_passed);
  }
  // just under the padding floor: the construction must refuse
  auto v = construct_fooling_metric(t, 8.0 / (n - 1) * 0.99);
  CHECK(std::holds_alternative<Refusal>(v));
}
