#include <benchmark/benchmark.h>

#include "igape/concordance.hpp"
#include "igape/persistence.hpp"

namespace {

const igape::ModelDocument& payment() {
  static const auto doc = igape::load_model(std::string(IGAPE_DATA_DIR) + "/payment.igape.json");
  return doc;
}

void BM_GatewayScenario(benchmark::State& state) {
  const auto& doc = payment();
  for (auto _ : state) benchmark::DoNotOptimize(igape::run_scenario(doc, "gateway"));
}
BENCHMARK(BM_GatewayScenario);

void BM_SupportScenario(benchmark::State& state) {
  const auto& doc = payment();
  for (auto _ : state) benchmark::DoNotOptimize(igape::run_scenario(doc, "support"));
}
BENCHMARK(BM_SupportScenario);

void BM_LoadModel(benchmark::State& state) {
  const auto text = igape::read_file(std::string(IGAPE_DATA_DIR) + "/payment.igape.json");
  for (auto _ : state) benchmark::DoNotOptimize(igape::parse_document(text));
}
BENCHMARK(BM_LoadModel);

void BM_KendallW(benchmark::State& state) {
  const auto m = igape::import_rank_matrix(std::string(IGAPE_DATA_DIR) + "/panel-ranks.csv");
  for (auto _ : state) benchmark::DoNotOptimize(igape::kendall_w(m));
}
BENCHMARK(BM_KendallW);

}  // namespace
