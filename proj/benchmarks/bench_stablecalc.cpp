#include <benchmark/benchmark.h>

#include "stablecalc/stablecalc.hpp"

using namespace stablecalc;

namespace {

MultiAffinePoly dense_random(std::size_t n, Rng& rng) {
  MultiAffinePoly p(n);
  for (Subset s = 0; s < p.size(); ++s) p[s] = rng.uniform(-1.0, 1.0);
  return p;
}

void BM_Convolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const auto p = dense_random(n, rng);
  const auto q = dense_random(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(convolve(p, q));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Convolve)->DenseRange(4, 16, 4);

void BM_ConvolveExact(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const auto p = to_exact(random_integer_multiaffine(n, rng));
  const auto q = to_exact(random_integer_multiaffine(n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(convolve(p, q));
}
BENCHMARK(BM_ConvolveExact)->DenseRange(4, 10, 3);

void BM_ApplyDiffop(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const auto p = dense_random(n, rng);
  const auto q = dense_random(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(apply_diffop(q, p));
}
BENCHMARK(BM_ApplyDiffop)->DenseRange(4, 16, 4);

void BM_CharMultiaffine(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(4);
  const auto a = random_hermitian(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(char_multiaffine(a));
}
BENCHMARK(BM_CharMultiaffine)->DenseRange(4, 14, 2);

void BM_ExpectedCharpolyPartition(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto r = static_cast<std::size_t>(state.range(1));
  Rng rng(5);
  const auto a = block_diag(random_psd_contraction(n, 0.2, rng), r);
  const auto mu = partition_measure(n, r);
  for (auto _ : state) benchmark::DoNotOptimize(expected_charpoly(mu, a));
}
BENCHMARK(BM_ExpectedCharpolyPartition)->Args({4, 2})->Args({6, 2})->Args({4, 3})->Args({5, 3})->Args({4, 4});

void BM_PavingSearch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto r = static_cast<std::size_t>(state.range(1));
  Rng rng(6);
  const auto a = random_psd_contraction(n, 0.2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(paving_search(a, r));
}
BENCHMARK(BM_PavingSearch)->Args({8, 2})->Args({12, 2})->Args({8, 3})->Args({10, 3})->Unit(benchmark::kMillisecond);

void BM_MixedCharPoly(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  Rng rng(7);
  const auto dec = random_rank1_resolution(n, m, rng).dec;
  for (auto _ : state) benchmark::DoNotOptimize(mixed_char_poly(dec));
}
BENCHMARK(BM_MixedCharPoly)->Args({3, 4})->Args({4, 4})->Args({4, 6})->Args({6, 8})->Args({8, 8});

void BM_UniMaxRoot(benchmark::State& state) {
  Rng rng(8);
  const auto p = random_real_rooted(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(uni_max_root(p));
}
BENCHMARK(BM_UniMaxRoot)->DenseRange(4, 16, 4);

}  // namespace

BENCHMARK_MAIN();
