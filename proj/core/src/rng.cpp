#include "latred/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace latred {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::seed_seq make_seed_seq(std::uint64_t key) {
  const std::uint64_t a = mix64(key);
  const std::uint64_t b = mix64(a);
  return std::seed_seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                       static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
}

}  // namespace

Rng::Rng(std::uint64_t seed) : key_(seed) {
  auto seq = make_seed_seq(key_);
  engine_.seed(seq);
}

Rng Rng::fork(std::string_view name, std::uint64_t index) const {
  const std::uint64_t child = mix64(mix64(key_ ^ fnv1a(name)) + mix64(index));
  return Rng(child);
}

double Rng::uniform01() {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  // generate_canonical may round up to exactly 1.0.
  return u < 1.0 ? u : std::nextafter(1.0, 0.0);
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("Rng::uniform_int: empty range");
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

double Rng::normal(double mean, double stddev) {
  return std::normal_distribution<double>(mean, stddev)(engine_);
}

}  // namespace latred
