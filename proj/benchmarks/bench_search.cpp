#include <benchmark/benchmark.h>

#include "goodpair/search.hpp"

using namespace goodpair;

namespace {

void BM_SearchSmallPair(benchmark::State& state) {
  SearchConfig cfg;
  cfg.l = 2;
  cfg.n = 4;
  for (auto _ : state) {
    SearchReport r = search(cfg);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SearchSmallPair)->Unit(benchmark::kMillisecond);

// A bounded slice of the (3, 7) space: measures the scan rate that the full
// enumeration sustains.
void BM_SearchSlice37(benchmark::State& state) {
  SearchConfig cfg;
  cfg.l = 3;
  cfg.n = 7;
  cfg.max_candidates = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    SearchReport r = search(cfg);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_SearchSlice37)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
