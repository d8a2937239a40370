#include <benchmark/benchmark.h>

#include <random>

#include "igape/ahp.hpp"

namespace {

igape::ComparisonMatrix random_matrix(std::size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> scale(1, 9);
  igape::ComparisonMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = scale(rng);
      m.set_judgment(i, j, rng() % 2 ? v : 1.0 / v);
    }
  }
  return m;
}

void BM_Eigenvector(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(igape::derive_priorities(m));
}
BENCHMARK(BM_Eigenvector)->Arg(3)->Arg(5)->Arg(9)->Arg(15);

void BM_GeometricMean(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(igape::derive_priorities(m, igape::PriorityMethod::GeometricMean));
}
BENCHMARK(BM_GeometricMean)->Arg(3)->Arg(5)->Arg(9)->Arg(15);

}  // namespace
