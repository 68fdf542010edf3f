#include "latred/npp_reduction.hpp"
#include "latred/sbp_reduction.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_BuildSbpInstance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::uint64_t>(state.range(1));
  const auto inst = latred::generate_planted_instance(n, latred::InstanceProfile::kRotated,
                                                      latred::sbp_gamma(n, m), 11);
  const latred::SbpParams params = latred::derive_sbp_params(inst, 1.0, m);
  latred::Rng rng(12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(latred::build_sbp_instance(inst, params, rng));
  }
}
BENCHMARK(BM_BuildSbpInstance)->Args({2, 12})->Args({4, 355})->Unit(benchmark::kMicrosecond);

void BM_BuildNppInstance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::uint64_t>(state.range(1));
  const auto inst = latred::generate_planted_instance(n, latred::InstanceProfile::kRotated,
                                                      latred::npp_gamma(m), 13);
  const latred::NppParams params = latred::derive_npp_params(inst, 1.0, m);
  latred::Rng rng(14);
  for (auto _ : state) {
    benchmark::DoNotOptimize(latred::build_npp_instance(inst, params, rng));
  }
}
BENCHMARK(BM_BuildNppInstance)->Args({2, 12})->Args({2, 64})->Args({3, 256})->Unit(benchmark::kMicrosecond);

// Whole loop with the exact solver; dominated by brute force at these sizes.
void BM_SbpReductionEndToEnd(benchmark::State& state) {
  const auto inst = latred::generate_planted_instance(2, latred::InstanceProfile::kDiagonal,
                                                      latred::sbp_gamma(2, 12), 15);
  const latred::SbpParams params = latred::derive_sbp_params(inst, 1.0, 12);
  const auto solver = latred::make_solver({latred::SolverKind::kBruteSbp});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    latred::Rng rng(seed++);
    benchmark::DoNotOptimize(latred::run_sbp_reduction(inst, params, *solver, 5, rng));
  }
}
BENCHMARK(BM_SbpReductionEndToEnd)->Unit(benchmark::kMillisecond);

void BM_NppReductionEndToEnd(benchmark::State& state) {
  const auto inst = latred::generate_planted_instance(2, latred::InstanceProfile::kDiagonal,
                                                      latred::npp_gamma(12), 16);
  const latred::NppParams params = latred::derive_npp_params(inst, 1.0, 12);
  const auto solver = latred::make_solver({latred::SolverKind::kBruteNpp});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    latred::Rng rng(seed++);
    benchmark::DoNotOptimize(latred::run_npp_reduction(inst, params, *solver, 5, rng));
  }
}
BENCHMARK(BM_NppReductionEndToEnd)->Unit(benchmark::kMillisecond);

}  // namespace
