#include "latred/crt.hpp"
#include "latred/rng.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_SelectPrimes(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(latred::select_primes(n, m));
  }
}
BENCHMARK(BM_SelectPrimes)->Args({2, 12})->Args({4, 355})->Args({8, 4096});

void BM_CrtBuild(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = latred::select_primes(n, 1024);
  for (auto _ : state) {
    benchmark::DoNotOptimize(latred::crt_build(p));
  }
}
BENCHMARK(BM_CrtBuild)->Arg(2)->Arg(8)->Arg(32);

// Round trip of one random grid point through forward and inverse.
void BM_CrtRoundTrip(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = latred::select_primes(n, 1024);
  const latred::CrtSystem crt = latred::crt_build(p);
  latred::Rng rng(9);
  std::vector<std::int64_t> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = static_cast<std::int64_t>(rng.uniform01() * static_cast<double>(p[i]));
  }
  for (auto _ : state) {
    const latred::BigInt k = crt.forward(std::span<const std::int64_t>(a));
    benchmark::DoNotOptimize(crt.inverse_numerators(k));
  }
}
BENCHMARK(BM_CrtRoundTrip)->Arg(2)->Arg(8)->Arg(32);

void BM_FloorP(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto p = latred::select_primes(4, m);
  latred::Rng rng(10);
  latred::Matrix a(4, m, 0.0);
  for (double& v : a.data()) v = rng.uniform01();
  for (auto _ : state) {
    benchmark::DoNotOptimize(latred::floor_p_numerators(a, p));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 4);
}
BENCHMARK(BM_FloorP)->Arg(64)->Arg(1024);

}  // namespace
