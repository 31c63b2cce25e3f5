#include <benchmark/benchmark.h>

#include "goodpair/matrices.hpp"

using namespace goodpair;

namespace {

SymbolicMatrix reference37() {
  return SymbolicMatrix::from_alphabet_codes(3, 4, {1, 2, 3, -3, -1, 3, 3, 1, 2, -1});
}

// Banded fill keeps determinants nonzero without blowing up the term count.
SymbolicMatrix banded(std::size_t vars, std::size_t size) {
  std::vector<int> codes;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i; j < size; ++j) {
      if (j - i > 1)
        codes.push_back(0);
      else
        codes.push_back(static_cast<int>((i + j) % vars) + 1);
    }
  return SymbolicMatrix::from_alphabet_codes(vars, size, codes);
}

void BM_DetSymbolic(benchmark::State& state) {
  const SymbolicMatrix m = banded(3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    Poly det = det_symbolic(m);
    benchmark::DoNotOptimize(det);
  }
}
BENCHMARK(BM_DetSymbolic)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

void BM_DetCofactorVsBareiss(benchmark::State& state) {
  const SymbolicMatrix m = banded(3, 6);
  const bool bareiss = state.range(0) == 1;
  for (auto _ : state) {
    Poly det = bareiss ? det_bareiss(m) : det_cofactor_memo(m);
    benchmark::DoNotOptimize(det);
  }
}
BENCHMARK(BM_DetCofactorVsBareiss)->Arg(0)->Arg(1);

void BM_CanonicalForm(benchmark::State& state) {
  const SymbolicMatrix m = reference37();
  for (auto _ : state) {
    SymbolicMatrix c = canonical_form(m);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_CanonicalForm);

}  // namespace
