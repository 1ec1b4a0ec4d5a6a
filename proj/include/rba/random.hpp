#pragma once

#include <cstdint>
#include <random>

namespace rba {

/// Deterministic generator for (seed, attempt); retries reseed with attempt+1.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t attempt = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(attempt), 0x5eedU};
  return std::mt19937_64(seq);
}

/// Symmetric coefficient in [-1, 1].
inline double symmetric_unit(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

}  // namespace rba
