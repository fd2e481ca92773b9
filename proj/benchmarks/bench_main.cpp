#include <benchmark/benchmark.h>

#include <random>

#include "patternforge/classify.hpp"
#include "patternforge/families.hpp"
#include "patternforge/nests.hpp"
#include "patternforge/nilpotent_nc.hpp"
#include "patternforge/realization.hpp"
#include "patternforge/spectra.hpp"

using namespace patternforge;

namespace {

RationalMatrix dense_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  RationalMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational r(num(rng), den(rng));
      r.canonicalize();
      a(i, j) = r;
    }
  return a;
}

void BM_CharPoly(benchmark::State& state) {
  RationalMatrix a = dense_matrix(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(char_poly(a));
}
BENCHMARK(BM_CharPoly)->DenseRange(3, 8);

void BM_SymbolicCoefficients(benchmark::State& state) {
  ZeroPattern p = companion_pattern(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(symbolic_coefficients(p));
}
BENCHMARK(BM_SymbolicCoefficients)->DenseRange(3, 7);

void BM_ExactRefinedInertia(benchmark::State& state) {
  CharPoly c = char_poly(dense_matrix(static_cast<int>(state.range(0)), 2));
  for (auto _ : state) benchmark::DoNotOptimize(exact_refined_inertia(c));
}
BENCHMARK(BM_ExactRefinedInertia)->DenseRange(3, 8);

void BM_Canonicalize(benchmark::State& state) {
  ZeroPattern p = w_pattern(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(p));
}
BENCHMARK(BM_Canonicalize)->DenseRange(4, 7);

void BM_FindNest(benchmark::State& state) {
  RationalMatrix b = canonical_path_matrix(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(find_nest(b));
}
BENCHMARK(BM_FindNest)->DenseRange(4, 8, 2);

void BM_CertifySap(benchmark::State& state) {
  ZeroPattern p = t_pattern(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(certify_sap(p));
}
BENCHMARK(BM_CertifySap)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_RealizeRefinedInertia(benchmark::State& state) {
  ZeroPattern p = path_pattern(4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(realize_refined_inertia(p, {1, 1, 0, 2}));
}
BENCHMARK(BM_RealizeRefinedInertia)->Unit(benchmark::kMillisecond);

void BM_CensusOrder3(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reproduce_order3());
}
BENCHMARK(BM_CensusOrder3)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
