#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "oracles.hpp"
#include "randmatch/avgdist.hpp"
#include "randmatch/generators.hpp"
#include "randmatch/metric.hpp"
#include "randmatch/rng.hpp"

using namespace randmatch;
namespace ts = testsupport;

TEST_CASE("method names") {
  CHECK(std::string(avg_method_name(AvgMethod::matching_max)) == "matching_max");
  CHECK(std::string(avg_method_name(AvgMethod::graph_single_matching)) ==
        "graph_single_matching");
  CHECK(std::string(avg_method_name(AvgMethod::pair_sampling)) == "pair_sampling");
}

TEST_CASE("general estimator on two points is exact") {
  // n = 2: the single matching sum is d(1,2) = 2 r_bar, so max/n = r_bar
  auto inst = MetricInstance::explicit_matrix(2, {0, 3.5, 3.5, 0});
  DistanceOracle o(inst);
  Rng rng = make_rng(1);
  auto e = estimate_avg_general(o, 0.5, rng);
  CHECK(e.value == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(e.method == AvgMethod::matching_max);
  CHECK(e.permutations_used == 160);
  CHECK(e.queries == 160);
  CHECK(o.queries() == 160);
}

TEST_CASE("general estimator on the discrete space") {
  auto d10 = MetricInstance::discrete(10);
  DistanceOracle o(d10);
  Rng rng = make_rng(2);
  auto e = estimate_avg_general(o, 1.0, rng);
  CHECK(e.value == 0.5);  // every matching sum is 5
  CHECK(e.queries == 80 * 5);
  // r_bar = 0.9: inside [(1/2 - eps) r_bar, r_bar] even at eps = 1
  CHECK(e.value <= 0.9);
}

TEST_CASE("general estimate never exceeds the true average") {
  std::vector<MetricInstance> corpus = {
      ts::random_points(30, 2, 301), ts::random_halfband_matrix(21, 302),
      gen_path(12)};
  for (const auto& inst : corpus) {
    DistanceOracle side(inst);
    const double r_bar = exact_average_distance(side);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      DistanceOracle o(inst);
      Rng rng = make_rng(seed);
      const auto e = estimate_avg_general(o, 0.5, rng);
      REQUIRE(e.value <= r_bar * (1 + 1e-12));
    }
  }
}

TEST_CASE("estimator lands in the one-sided window with constant probability") {
  auto inst = ts::random_points(60, 3, 311);
  DistanceOracle side(inst);
  const double r_bar = exact_average_distance(side);
  const double eps = 0.25;
  int in_window = 0;
  const int runs = 200;
  for (int i = 0; i < runs; ++i) {
    DistanceOracle o(inst);
    Rng rng = make_rng(derive_seed(600, i));
    const auto e = estimate_avg_general(o, eps, rng);
    if (e.value >= (0.5 - eps) * r_bar) ++in_window;
  }
  CHECK(static_cast<double>(in_window) / runs >= 0.5);
}

TEST_CASE("graph estimator") {
  auto path = gen_path(4);

  SUBCASE("values and frequencies on the 4-path") {
    // X is 2 with probability 1/3 and 4 with probability 2/3, so the
    // estimate 2X/n is 1 or 2
    std::uint64_t twos = 0;
    const int runs = 3000;
    for (int i = 0; i < runs; ++i) {
      DistanceOracle o(path);
      Rng rng = make_rng(derive_seed(40, i));
      auto e = estimate_avg_graph(o, rng);
      REQUIRE((e.value == 1.0 || e.value == 2.0));
      REQUIRE(e.queries == 2);
      REQUIRE(e.permutations_used == 1);
      if (e.value == 2.0) ++twos;
    }
    const double freq = static_cast<double>(twos) / runs;
    CHECK(std::abs(freq - 2.0 / 3) < 4 * std::sqrt((2.0 / 9) / runs));
  }

  SUBCASE("unbiased for even n: mean of 2X/n is r_bar * n/(n-1)") {
    // 4-path: 5/3; standard error of the mean is sqrt(2/9 / runs)
    double sum = 0;
    const int runs = 20000;
    for (int i = 0; i < runs; ++i) {
      DistanceOracle o(path);
      Rng rng = make_rng(derive_seed(7000, i));
      sum += estimate_avg_graph(o, rng).value;
    }
    const double mean = sum / runs;
    CHECK(std::abs(mean - 5.0 / 3) < 3 * std::sqrt(2.0 / 9 / runs));
  }

  SUBCASE("single edge") {
    auto edge = gen_path(2);
    DistanceOracle o(edge);
    Rng rng = make_rng(3);
    auto e = estimate_avg_graph(o, rng);
    CHECK(e.value == 1.0);  // r_bar = 1/2, ratio exactly 2
  }

  SUBCASE("non-graph instances are rejected") {
    auto d = MetricInstance::discrete(6);
    DistanceOracle o(d);
    Rng rng = make_rng(4);
    CHECK_THROWS_AS(estimate_avg_graph(o, rng), std::invalid_argument);
  }
}

TEST_CASE("pair sampling baseline is unbiased") {
  Rng rng = make_rng(5);

  SUBCASE("discrete") {
    auto d10 = MetricInstance::discrete(10);
    DistanceOracle o(d10);
    const std::uint64_t t = 200000;
    auto e = pair_sampling_baseline(o, t, rng);
    CHECK(e.queries == t);
    CHECK(o.queries() == t);
    // r_bar = 0.9, per-draw variance 0.09
    CHECK(std::abs(e.value - 0.9) < 3 * std::sqrt(0.09 / t));
  }

  SUBCASE("4-path matrix") {
    auto path = ts::path_matrix(4);
    DistanceOracle o(path);
    const std::uint64_t t = 100000;
    auto e = pair_sampling_baseline(o, t, rng);
    // r_bar = 1.25, per-draw variance 2.5 - 1.5625 = 0.9375
    CHECK(std::abs(e.value - 1.25) < 3 * std::sqrt(0.9375 / t));
  }

  SUBCASE("single point") {
    auto one = MetricInstance::discrete(1);
    DistanceOracle o(one);
    auto e = pair_sampling_baseline(o, 50, rng);
    CHECK(e.value == 0.0);
  }

  SUBCASE("t = 0 is rejected") {
    auto d = MetricInstance::discrete(4);
    DistanceOracle o(d);
    CHECK_THROWS_AS(pair_sampling_baseline(o, 0, rng), std::invalid_argument);
  }
}

TEST_CASE("graph diagnostics") {
  SUBCASE("4-path") {
    auto path = gen_path(4);
    DistanceOracle o(path);
    auto g = graph_diagnostics(o, 0.75);
    CHECK(g.Delta == 3.0);
    CHECK(g.r == 1.0);
    CHECK(g.r_bar == doctest::Approx(1.25));
    CHECK(g.path_bound_ok);      // 4 >= 9/4
    CHECK(g.unit_bound_ok);      // 1 >= 1/2
    CHECK(g.diameter_cap_ok);    // 0.75 * 4 * 1 = 3 >= 3
    CHECK(g.avg_le_twice_r_ok);  // 1.25 <= 2

    DistanceOracle o2(path);
    CHECK(!graph_diagnostics(o2, 0.5).diameter_cap_ok);  // 2 < 3
  }

  SUBCASE("star with 9 leaves") {
    auto star = MetricInstance::graph(10, ts::star_edges(10));
    DistanceOracle o(star);
    auto g = graph_diagnostics(o, 1.0);
    CHECK(g.Delta == 2.0);
    CHECK(g.r == doctest::Approx(0.9));
    CHECK(g.path_bound_ok);  // 9 >= 1
    CHECK(g.unit_bound_ok);
    CHECK(g.diameter_cap_ok);  // 9 >= 2
    CHECK(g.avg_le_twice_r_ok);
  }

  SUBCASE("structural bounds hold on random connected graphs") {
    Rng rng = make_rng(88);
    for (int rep = 0; rep < 20; ++rep) {
      auto g = (rep % 2 == 0) ? gen_gnp_connected(30, 0.15, rng)
                              : gen_random_tree(30, rng);
      DistanceOracle o(g);
      auto d = graph_diagnostics(o, 1.0);
      REQUIRE(d.path_bound_ok);
      REQUIRE(d.unit_bound_ok);
      REQUIRE(d.avg_le_twice_r_ok);
    }
  }

  SUBCASE("non-graph instances are rejected") {
    auto d = MetricInstance::discrete(5);
    DistanceOracle o(d);
    CHECK_THROWS_AS(graph_diagnostics(o, 1.0), std::invalid_argument);
  }
}
