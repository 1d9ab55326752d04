#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "quadcohom/detscan.hpp"

namespace {

using quadcohom::detscan::QuadricSystem;

QuadricSystem load(const char* name) {
  std::ifstream in(std::string(QUADCOHOM_TEST_DATA_DIR) + "/" + name);
  std::stringstream text;
  text << in.rdbuf();
  return QuadricSystem::from_json(text.str());
}

void BM_WebCensus(benchmark::State& state) {
  const auto web = load("random_web_n6.json");
  quadcohom::detscan::CensusOptions options;
  options.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadcohom::detscan::corank_census(web, static_cast<std::uint64_t>(state.range(0)), options));
  }
}
BENCHMARK(BM_WebCensus)->Args({101, 1})->Args({101, 8})->Args({211, 8})->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_DiagonalClosedForm(benchmark::State& state) {
  const auto net = load("diagonal_web_m3.json");
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadcohom::detscan::diagonal_census(net, 101));
  }
}
BENCHMARK(BM_DiagonalClosedForm)->Unit(benchmark::kMicrosecond);

void BM_DetDegree(benchmark::State& state) {
  const auto web = load("random_web_n6.json");
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadcohom::detscan::det_degree(web, 101));
  }
}
BENCHMARK(BM_DetDegree)->Unit(benchmark::kMillisecond);

}  // namespace
