// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace trendkit {

// All randomness flows through SeededRng so that fits are reproducible.
// The engine is std::mt19937_64, whose output stream is pinned by the
// standard, and the integer/real mappings below are hand-rolled because
// std::uniform_*_distribution is not portable across library vendors.
//
// Stream splitting: independent consumers (e.g. sweep cells running in
// parallel) must not share an engine. Derive a child seed with
// derive_stream(base_seed, tag) where tag identifies the consumer; equal
// tags give equal streams, distinct tags give unrelated ones.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). n must be > 0.
  std::uint32_t next_below(std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  /// Standard normal deviate (Box–Muller, pairs cached).
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  static std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
      h ^= c;
      h *= 0x100000001B3ull;
    }
    return h;
  }

  /// Deterministic child seed for the consumer identified by `tag`.
  static std::uint64_t derive_stream(std::uint64_t base_seed,
                                     std::string_view tag) {
    return splitmix64(base_seed ^ fnv1a64(tag));
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace trendkit
