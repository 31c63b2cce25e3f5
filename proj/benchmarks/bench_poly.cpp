#include <benchmark/benchmark.h>

#include "goodpair/poly.hpp"

using goodpair::Poly;
using goodpair::Rational;

namespace {

Poly power_sum(std::size_t vars, std::uint32_t deg) {
  Poly p(vars);
  for (std::size_t v = 0; v < vars; ++v)
    p.add_term(goodpair::Monomial::unit(vars, v, deg), Rational(1));
  return p;
}

void BM_PolyMul(benchmark::State& state) {
  std::size_t vars = static_cast<std::size_t>(state.range(0));
  Poly a = power_sum(vars, 2);
  for (auto _ : state) {
    Poly sq = a * a;
    benchmark::DoNotOptimize(sq);
  }
}
BENCHMARK(BM_PolyMul)->Arg(2)->Arg(4)->Arg(8);

void BM_PolyEvaluate(benchmark::State& state) {
  std::size_t vars = static_cast<std::size_t>(state.range(0));
  Poly a = power_sum(vars, 2);
  Poly sq = a * a * a;
  std::vector<Rational> pt(vars, Rational(3, 7));
  for (auto _ : state) {
    Rational v = sq.evaluate(pt);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_PolyEvaluate)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
