#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace latred {

/// Seeded random source with deterministic child streams.
///
/// Every Rng carries an immutable 64-bit key. fork(name, index) derives a new
/// key from (key, name, index) with a keyed hash (FNV-1a over the name, mixed
/// through splitmix64 with the parent key and index) and never reads the
/// parent engine state. Adding a new consumer of randomness therefore never
/// perturbs the draws seen by existing consumers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  Rng fork(std::string_view name, std::uint64_t index = 0) const;

  std::uint64_t key() const noexcept { return key_; }
  std::mt19937_64& engine() noexcept { return engine_; }

  /// Uniform in [0, 1).
  double uniform01();
  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double normal(double mean = 0.0, double stddev = 1.0);

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; exposed for documentation and tests.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace latred
