#include <benchmark/benchmark.h>

#include "goodpair/gbsp.hpp"
#include "goodpair/manifolds.hpp"

using namespace goodpair;

namespace {

CoverProbe graph_probe(const ManifoldSpec& spec) {
  CoverProbe probe;
  std::vector<Rational> weights(spec.l, Rational(0));
  weights[0] = 1;
  std::vector<Rational> linear(spec.system.dim, Rational(0));
  linear[0] = 1;
  probe.phi = probe_function(spec.system, weights, linear, Rational(0));
  probe.center.assign(spec.system.dim, Rational(0));
  probe.alpha = 1;
  return probe;
}

void BM_SeriesFiveHundredShells(benchmark::State& state) {
  PowerLawData d;
  d.n = 7;
  d.l = 3;
  d.tau = 7;
  d.s = 5;
  for (auto _ : state) {
    std::vector<Rational> sums = series_oracle(d, 500);
    benchmark::DoNotOptimize(sums);
  }
}
BENCHMARK(BM_SeriesFiveHundredShells)->Unit(benchmark::kMillisecond);

void BM_CoverSurface(benchmark::State& state) {
  const CoverProbe probe = graph_probe(m_delta(1));
  const Rational delta =
      Rational(1) / Rational(static_cast<unsigned long>(1ul << state.range(0)));
  for (auto _ : state) {
    CoverCount c = covering_count(probe, delta);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_CoverSurface)->Arg(6)->Arg(9);

void BM_CoverDimensionFour(benchmark::State& state) {
  const CoverProbe probe = graph_probe(m37_manifold());
  const Rational delta =
      Rational(1) / Rational(static_cast<unsigned long>(1ul << state.range(0)));
  for (auto _ : state) {
    CoverCount c = covering_count(probe, delta);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_CoverDimensionFour)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
