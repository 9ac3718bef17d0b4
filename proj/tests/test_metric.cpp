#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "randmatch/generators.hpp"
#include "randmatch/metric.hpp"
#include "randmatch/rng.hpp"

using namespace randmatch;
namespace ts = testsupport;

TEST_CASE("discrete metric and query accounting") {
  auto inst = MetricInstance::discrete(5);
  DistanceOracle o(inst);
  CHECK(o.dist(2, 2) == 0.0);
  CHECK(o.dist(2, 4) == 1.0);
  CHECK(o.dist(4, 2) == 1.0);
  // every call counts, repeats and self-pairs included
  CHECK(o.dist(2, 4) == 1.0);
  CHECK(o.queries() == 4);
}

TEST_CASE("oracle rejects out-of-range points") {
  auto inst = MetricInstance::discrete(3);
  DistanceOracle o(inst);
  CHECK_THROWS_AS(o.dist(0, 1), std::out_of_range);
  CHECK_THROWS_AS(o.dist(1, 4), std::out_of_range);
}

TEST_CASE("graph distances are hop counts") {
  auto path = MetricInstance::graph(4, ts::path_edges(4));
  DistanceOracle o(path);
  CHECK(o.dist(1, 4) == 3.0);
  CHECK(o.dist(4, 1) == 3.0);
  CHECK(o.dist(2, 3) == 1.0);

  SUBCASE("bfs rows are 1-indexed, slot 0 unused") {
    auto row = bfs_hop_distances(path.graph_data(), 1);
    CHECK(row == std::vector<int>{-1, 0, 1, 2, 3});
    auto cycle = MetricInstance::graph(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    CHECK(bfs_hop_distances(cycle.graph_data(), 1) == std::vector<int>{-1, 0, 1, 2, 1});
    auto single = MetricInstance::graph(1, {});
    CHECK(bfs_hop_distances(single.graph_data(), 1) == std::vector<int>{-1, 0});
  }

  SUBCASE("graph path metric equals |i - j| matrix") {
    auto m = ts::path_matrix(9);
    auto g = MetricInstance::graph(9, ts::path_edges(9));
    auto dm = materialize_matrix(m);
    auto dg = materialize_matrix(g);
    CHECK(dm == dg);
  }

  SUBCASE("precomputed all-pairs table agrees with per-source BFS") {
    Rng rng = make_rng(404);
    auto g1 = gen_gnp_connected(60, 0.08, rng);
    auto g2 = MetricInstance::graph(60, g1.graph_data().edges, true);
    REQUIRE(g2.graph_data().all_pairs != nullptr);
    CHECK(materialize_matrix(g1) == materialize_matrix(g2));
    DistanceOracle oa(g1), ob(g2);
    for (PointId x = 1; x <= 60; ++x)
      for (PointId y = 1; y <= 60; ++y) REQUIRE(oa.dist(x, y) == ob.dist(x, y));
    CHECK(oa.queries() == ob.queries());
  }
}

TEST_CASE("graph construction rejects bad input") {
  CHECK_THROWS_AS(MetricInstance::graph(4, {{1, 2}, {2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(MetricInstance::graph(3, {{1, 1}, {1, 2}, {2, 3}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(MetricInstance::graph(3, {{1, 2}, {2, 5}}), std::invalid_argument);
  // duplicate and reversed edges collapse to one
  auto g = MetricInstance::graph(3, {{2, 1}, {1, 2}, {2, 3}});
  CHECK(g.graph_data().edges.size() == 2);
}

TEST_CASE("euclidean norms") {
  std::vector<double> pts = {0.0, 0.0, 3.0, 4.0};
  auto l1 = MetricInstance::euclidean(2, 2, pts, Norm::l1);
  auto l2 = MetricInstance::euclidean(2, 2, pts, Norm::l2);
  auto li = MetricInstance::euclidean(2, 2, pts, Norm::linf);
  DistanceOracle a(l1), b(l2), c(li);
  CHECK(a.dist(1, 2) == 7.0);
  CHECK(b.dist(1, 2) == 5.0);
  CHECK(c.dist(1, 2) == 4.0);
  CHECK_THROWS_AS(MetricInstance::euclidean(2, 2, {1.0, 2.0, 1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("matrix construction checks the cheap axioms") {
  CHECK_THROWS_AS(MetricInstance::explicit_matrix(2, {0, 1, 2, 0}),
                  std::invalid_argument);  // asymmetric
  CHECK_THROWS_AS(MetricInstance::explicit_matrix(2, {0, 0, 0, 0}),
                  std::invalid_argument);  // zero off-diagonal
  CHECK_THROWS_AS(MetricInstance::explicit_matrix(2, {1, 1, 1, 0}),
                  std::invalid_argument);  // nonzero diagonal
  CHECK_THROWS_AS(MetricInstance::explicit_matrix(2, {0, 1, 1}),
                  std::invalid_argument);  // wrong size
}

TEST_CASE("exact cost and average") {
  auto d6 = MetricInstance::discrete(6);
  DistanceOracle o(d6);
  CHECK(exact_sum_cost(o, 3) == 5.0);
  CHECK(o.queries() == 5);

  auto path = MetricInstance::graph(4, ts::path_edges(4));
  DistanceOracle po(path);
  CHECK(exact_sum_cost(po, 2) == 4.0);
  CHECK(exact_sum_cost(po, 1) == 6.0);

  SUBCASE("average over ordered pairs includes the diagonal") {
    DistanceOracle q(d6);
    CHECK(exact_average_distance(q) == doctest::Approx(30.0 / 36.0).epsilon(1e-15));
    CHECK(q.queries() == 15);

    DistanceOracle pq(path);
    CHECK(exact_average_distance(pq) == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(pq.queries() == 6);

    auto one = MetricInstance::discrete(1);
    DistanceOracle oq(one);
    CHECK(exact_average_distance(oq) == 0.0);
    CHECK(oq.queries() == 0);
  }
}

TEST_CASE("brute-force median") {
  auto path = MetricInstance::graph(4, ts::path_edges(4));
  DistanceOracle o(path);
  auto m = brute_force_median(o);
  CHECK(m.point == 2);  // costs 6,4,4,6: tie breaks to the smaller id
  CHECK(m.cost == 4.0);
  CHECK(o.queries() == 6);

  auto d5 = MetricInstance::discrete(5);
  DistanceOracle o5(d5);
  auto m5 = brute_force_median(o5);
  CHECK(m5.point == 1);
  CHECK(m5.cost == 4.0);
  CHECK(o5.queries() == 10);

  auto one = MetricInstance::discrete(1);
  DistanceOracle o1(one);
  auto m1 = brute_force_median(o1);
  CHECK(m1.point == 1);
  CHECK(m1.cost == 0.0);
}

TEST_CASE("median cost never exceeds n times the average distance") {
  // cost(p*) <= sum_x cost(x)/n = n * r_bar
  Rng rng = make_rng(11);
  for (int rep = 0; rep < 8; ++rep) {
    auto inst = (rep % 2 == 0) ? ts::random_points(20 + rep, 3, 100 + rep)
                               : ts::random_halfband_matrix(15 + rep, 200 + rep);
    DistanceOracle a(inst), b(inst);
    const double opt = brute_force_median(a).cost;
    const double r_bar = exact_average_distance(b);
    CHECK(opt <= inst.size() * r_bar * (1 + 1e-12));
  }
}

TEST_CASE("diameter") {
  auto path = MetricInstance::graph(4, ts::path_edges(4));
  DistanceOracle o(path);
  auto d = diameter(o);
  CHECK(d.value == 3.0);
  CHECK(d.x == 1);
  CHECK(d.y == 4);
  CHECK(o.queries() == 6);

  auto d7 = MetricInstance::discrete(7);
  DistanceOracle o7(d7);
  auto dd = diameter(o7);
  CHECK(dd.value == 1.0);
  CHECK(dd.x == 1);
  CHECK(dd.y == 2);

  auto one = MetricInstance::discrete(1);
  DistanceOracle o1(one);
  CHECK(diameter(o1).value == 0.0);
}

TEST_CASE("tracing records pairs as asked") {
  auto d4 = MetricInstance::discrete(4);
  DistanceOracle o(d4, true);
  o.dist(3, 1);
  o.dist(2, 4);
  REQUIRE(o.ledger().trace.size() == 2);
  CHECK(o.ledger().trace[0] == std::pair<PointId, PointId>{3, 1});
  CHECK(o.ledger().trace[1] == std::pair<PointId, PointId>{2, 4});
}

TEST_CASE("validate_metric pinpoints the first violation") {
  SUBCASE("clean matrices pass") {
    auto d = materialize_matrix(MetricInstance::discrete(4));
    CHECK(!validate_metric(d, 4).has_value());
    for (int s = 0; s < 20; ++s) {
      auto m = ts::random_halfband_matrix(8, 1000 + s);
      CHECK(!validate_metric(m.matrix_data().d, 8).has_value());
    }
  }

  SUBCASE("triangle violation") {
    // d(1,3) = 5 > d(1,2) + d(2,3) = 2
    std::vector<double> d = {0, 1, 5, 1, 0, 1, 5, 1, 0};
    auto v = validate_metric(d, 3);
    REQUIRE(v.has_value());
    CHECK(v->kind == ViolationKind::triangle);
    CHECK(v->x == 1);
    CHECK(v->y == 2);
    CHECK(v->z == 3);
    CHECK(v->describe() == "triangle violated at (1,2,3)");
    // rel_tol loosens the test
    std::vector<double> close = {0, 1, 2.0000001, 1, 0, 1, 2.0000001, 1, 0};
    CHECK(validate_metric(close, 3).has_value());
    CHECK(!validate_metric(close, 3, 1e-6).has_value());
  }

  SUBCASE("symmetry violation") {
    std::vector<double> d = {0, 1, 2, 1, 0, 1, 1, 1, 0};
    auto v = validate_metric(d, 3);
    REQUIRE(v.has_value());
    CHECK(v->kind == ViolationKind::symmetry);
    CHECK(v->x == 1);
    CHECK(v->y == 3);
  }

  SUBCASE("identity violations") {
    std::vector<double> diag = {0, 1, 1, 0.5};
    auto v = validate_metric(diag, 2);
    REQUIRE(v.has_value());
    CHECK(v->kind == ViolationKind::identity);
    CHECK(v->x == 2);
    CHECK(v->y == 2);

    std::vector<double> zero = {0, 0, 0, 0};
    auto z = validate_metric(zero, 2);
    REQUIRE(z.has_value());
    CHECK(z->kind == ViolationKind::identity);

    std::vector<double> neg = {0, -1, -1, 0};
    CHECK(validate_metric(neg, 2)->kind == ViolationKind::identity);

    std::vector<double> nan = {0, std::nan(""), std::nan(""), 0};
    CHECK(validate_metric(nan, 2)->kind == ViolationKind::identity);
  }
}

TEST_CASE("validate_instance accepts every factory product") {
  Rng rng = make_rng(77);
  CHECK(!validate_instance(MetricInstance::discrete(12)).has_value());
  CHECK(!validate_instance(gen_euclidean(15, 3, rng)).has_value());
  CHECK(!validate_instance(gen_gnp_connected(25, 0.2, rng)).has_value());
  CHECK(!validate_instance(gen_random_tree(25, rng)).has_value());
  CHECK(!validate_instance(gen_path(10)).has_value());
  CHECK(!validate_instance(gen_metric_matrix(12, rng)).has_value());
}
