#include <benchmark/benchmark.h>

#include "quadcohom/ci_hodge.hpp"
#include "quadcohom/decomp.hpp"

namespace {

void BM_FourQuadricsDiamond(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const quadcohom::CISpace space(2 * m + 1, {2, 2, 2, 2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadcohom::hodge_diamond_ci(space));
  }
}
BENCHMARK(BM_FourQuadricsDiamond)->DenseRange(3, 12, 3)->Unit(benchmark::kMillisecond);

void BM_ChernEuler(benchmark::State& state) {
  const quadcohom::CISpace space(10, {5, 5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadcohom::euler_char_ci(space));
  }
}
BENCHMARK(BM_ChernEuler)->Unit(benchmark::kMicrosecond);

void BM_WebOddSweep(benchmark::State& state) {
  for (auto _ : state) {
    for (int m = 3; m <= 12; ++m) {
      benchmark::DoNotOptimize(quadcohom::verify_web_odd(m));
    }
  }
}
BENCHMARK(BM_WebOddSweep)->Unit(benchmark::kMillisecond);

}  // namespace
