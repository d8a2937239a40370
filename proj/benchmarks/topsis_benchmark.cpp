#include <benchmark/benchmark.h>

#include <random>

#include "igape/topsis.hpp"

namespace {

igape::DecisionMatrix random_matrix(std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(-2.0, 100.0);
  igape::DecisionMatrix m;
  for (std::size_t i = 0; i < rows; ++i) m.alternatives.push_back("a" + std::to_string(i));
  for (std::size_t j = 0; j < cols; ++j) {
    m.criteria.push_back({"c" + std::to_string(j), j % 3 ? igape::Direction::Benefit : igape::Direction::Cost,
                          1.0 / static_cast<double>(cols)});
  }
  for (std::size_t k = 0; k < rows * cols; ++k) m.values.push_back(value(rng));
  return m;
}

void BM_Topsis(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(igape::evaluate(m));
}
BENCHMARK(BM_Topsis)->Args({4, 12})->Args({10, 20})->Args({100, 50});

}  // namespace
