#include "latred/solvers.hpp"

#include <benchmark/benchmark.h>

namespace {

latred::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  latred::Rng rng(seed);
  latred::Matrix a(rows, cols, 0.0);
  for (double& v : a.data()) v = rng.normal();
  return a;
}

void BM_BruteSbp(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const latred::Matrix a = random_matrix(3, m, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(latred::brute_force_sbp(a));
  }
}
BENCHMARK(BM_BruteSbp)->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);

void BM_BruteNpp(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const latred::Matrix a = random_matrix(1, m, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(latred::brute_force_npp(a.data()));
  }
}
BENCHMARK(BM_BruteNpp)->DenseRange(8, 20, 4)->Unit(benchmark::kMillisecond);

void BM_KarmarkarKarp(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const latred::Matrix a = random_matrix(1, m, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(latred::karmarkar_karp(a.data()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KarmarkarKarp)->RangeMultiplier(8)->Range(16, 1 << 15);

void BM_RandomSearch(benchmark::State& state) {
  const latred::Matrix a = random_matrix(4, 64, 4);
  const auto budget = static_cast<std::uint64_t>(state.range(0));
  latred::Rng rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(latred::random_search(a, latred::Alphabet::pm_one(), budget, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RandomSearch)->Arg(1 << 10)->Arg(1 << 14);

}  // namespace
