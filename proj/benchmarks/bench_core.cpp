// Microbenchmarks for the hot paths: shuffling, matching sums, the selection
// loop, and the exact baselines they compete against. Not part of ctest.

#include <benchmark/benchmark.h>

#include "randmatch/avgdist.hpp"
#include "randmatch/generators.hpp"
#include "randmatch/matching.hpp"
#include "randmatch/maxsqsum.hpp"
#include "randmatch/median.hpp"
#include "randmatch/metric.hpp"
#include "randmatch/rng.hpp"

using namespace randmatch;

namespace {

MetricInstance make_euclid(int n) {
  Rng rng = make_rng(1);
  return gen_euclidean(n, 3, rng);
}

MetricInstance make_graph(int n) {
  Rng rng = make_rng(2);
  return gen_gnp_connected(n, 2.0 * std::log(n) / n, rng, 100, true);
}

void BM_shuffle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng = make_rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(knuth_shuffle(n, rng));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_shuffle)->Arg(256)->Arg(1024)->Arg(4096);

void BM_matching_sum_euclid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = make_euclid(n);
  DistanceOracle o(inst);
  Rng rng = make_rng(4);
  for (auto _ : state) {
    const auto pi = knuth_shuffle(n, rng);
    benchmark::DoNotOptimize(matching_sum(o, pi));
  }
  state.SetItemsProcessed(state.iterations() * (n / 2));
}
BENCHMARK(BM_matching_sum_euclid)->Arg(256)->Arg(1024)->Arg(4096);

void BM_matching_sum_graph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = make_graph(n);
  DistanceOracle o(inst);
  Rng rng = make_rng(5);
  for (auto _ : state) {
    const auto pi = knuth_shuffle(n, rng);
    benchmark::DoNotOptimize(matching_sum(o, pi));
  }
  state.SetItemsProcessed(state.iterations() * (n / 2));
}
BENCHMARK(BM_matching_sum_graph)->Arg(256)->Arg(1024);

void BM_las_vegas_median(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = make_euclid(n);
  Rng rng = make_rng(6);
  for (auto _ : state) {
    DistanceOracle o(inst);
    benchmark::DoNotOptimize(las_vegas_median(o, 0.5, rng));
  }
}
BENCHMARK(BM_las_vegas_median)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_brute_force_median(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = make_euclid(n);
  for (auto _ : state) {
    DistanceOracle o(inst);
    benchmark::DoNotOptimize(brute_force_median(o));
  }
}
BENCHMARK(BM_brute_force_median)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_avg_graph_single(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = make_graph(n);
  Rng rng = make_rng(7);
  for (auto _ : state) {
    DistanceOracle o(inst);
    benchmark::DoNotOptimize(estimate_avg_graph(o, rng));
  }
}
BENCHMARK(BM_avg_graph_single)->Arg(1024)->Arg(4096);

void BM_maxsq_greedy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  msq::Instance in{n, 1.0, 2.5};
  for (auto _ : state) benchmark::DoNotOptimize(msq::greedy_optimum(in));
}
BENCHMARK(BM_maxsq_greedy)->Arg(16)->Arg(64);

void BM_maxsq_random_feasible(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  msq::Instance in{n, 1.0, 2.5};
  Rng rng = make_rng(8);
  for (auto _ : state) benchmark::DoNotOptimize(msq::random_feasible(in, rng));
}
BENCHMARK(BM_maxsq_random_feasible)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
