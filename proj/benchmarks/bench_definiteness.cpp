#include <benchmark/benchmark.h>

#include "goodpair/definiteness.hpp"
#include "goodpair/manifolds.hpp"
#include "goodpair/matrices.hpp"

using namespace goodpair;

namespace {

Poly quartic() {
  // (z1^2 + z2^2)^2 + 4 z3^4 expanded.
  Poly p(3);
  p.add_term(Monomial({4, 0, 0}), Rational(1));
  p.add_term(Monomial({2, 2, 0}), Rational(2));
  p.add_term(Monomial({0, 4, 0}), Rational(1));
  p.add_term(Monomial({0, 0, 4}), Rational(4));
  return p;
}

void BM_DecideQuartic(benchmark::State& state) {
  const Poly p = quartic();
  for (auto _ : state) {
    DefinitenessVerdict v = decide(p);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_DecideQuartic);

void BM_DecideDegreeEight(benchmark::State& state) {
  const Poly p = quartic() * quartic();
  for (auto _ : state) {
    DefinitenessVerdict v = decide(p);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_DecideDegreeEight);

void BM_CheckConditionII(benchmark::State& state) {
  const QuadraticSystem sys = m37_manifold().system;
  for (auto _ : state) {
    DefinitenessVerdict v = check_condition_II(sys);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_CheckConditionII);

void BM_VerifyCertificate(benchmark::State& state) {
  const Poly p = quartic();
  const DefinitenessVerdict v = decide(p);
  for (auto _ : state) {
    bool ok = verify_certificate(p, v);
    benchmark::DoNotOptimize(ok);
  }
}
BENCHMARK(BM_VerifyCertificate);

}  // namespace
