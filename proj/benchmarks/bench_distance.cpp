#include <benchmark/benchmark.h>

#include <random>

#include "setconv/distance.hpp"
#include "setconv/epi.hpp"
#include "setconv/grid.hpp"
#include "setconv/norm.hpp"
#include "setconv/point_cloud.hpp"
#include "setconv/scalar_field.hpp"

namespace {

using namespace setconv;

PointCloud random_cloud(int n, int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  PointCloud c(dim);
  std::vector<double> p(static_cast<size_t>(dim));
  for (int i = 0; i < n; ++i) {
    for (double& x : p) x = u(rng);
    c.push_back(p);
  }
  return c;
}

void bm_excess(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = random_cloud(n, 3, 1);
  const auto b = random_cloud(n, 3, 2);
  const auto norm = NormSpec::euclidean();
  for (auto _ : state) benchmark::DoNotOptimize(excess(a, b, norm));
  state.SetComplexityN(n);
}
BENCHMARK(bm_excess)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void bm_truncated_hausdorff(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = random_cloud(n, 3, 3);
  const auto b = random_cloud(n, 3, 4);
  const auto norm = NormSpec::euclidean();
  for (auto _ : state) benchmark::DoNotOptimize(truncated_hausdorff(a, b, 1.5, norm));
  state.SetComplexityN(n);
}
BENCHMARK(bm_truncated_hausdorff)->Range(64, 1024)->Complexity(benchmark::oNSquared);

ScalarField bench_field(double shift) {
  return make_quadratic_1d(1.0, shift, -0.5);
}

// Column-reduced epigraph distance vs the same distance on materialized
// clouds; the reduction is the reason epi demos stay interactive.
void bm_epi_distance_columns(benchmark::State& state) {
  const auto f = bench_field(0.0);
  const auto g = bench_field(0.3);
  const auto grid = GridSpec::uniform(-2.0, 2.0, state.range(0));
  const auto norm = NormSpec::euclidean();
  for (auto _ : state)
    benchmark::DoNotOptimize(epi_distance_cloud(f, g, grid, 1.5, norm));
}
BENCHMARK(bm_epi_distance_columns)->Range(64, 512);

void bm_epi_distance_materialized(benchmark::State& state) {
  const auto f = bench_field(0.0);
  const auto g = bench_field(0.3);
  const auto grid = GridSpec::uniform(-2.0, 2.0, state.range(0));
  const auto norm = NormSpec::euclidean();
  const NormSpec xy = NormSpec::product({{1, NormSpec::euclidean()}, {1, NormSpec::euclidean()}});
  for (auto _ : state) {
    const auto ef = sample_epigraph(f, grid, 1.5, norm).materialize();
    const auto eg = sample_epigraph(g, grid, 1.5, norm).materialize();
    benchmark::DoNotOptimize(truncated_hausdorff(ef, eg, 1.5, xy));
  }
}
// Quadratic in materialized points (grid x levels), so the range stops well
// below the column benchmark's.
BENCHMARK(bm_epi_distance_materialized)->Range(64, 128);

void bm_epi_distance_kenmochi(benchmark::State& state) {
  const auto f = bench_field(0.0);
  const auto g = bench_field(0.3);
  const auto grid = GridSpec::uniform(-2.0, 2.0, state.range(0));
  const auto norm = NormSpec::euclidean();
  for (auto _ : state)
    benchmark::DoNotOptimize(epi_distance_kenmochi(f, g, grid, 1.5, norm));
}
BENCHMARK(bm_epi_distance_kenmochi)->Range(64, 512);

}  // namespace

BENCHMARK_MAIN();
