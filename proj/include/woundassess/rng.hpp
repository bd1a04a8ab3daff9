#pragma once

#include <cstdint>
#include <random>

namespace woundassess {

// Deterministic draws on top of std::mt19937_64, whose raw output sequence is
// fixed by the standard. std::uniform_int_distribution is implementation
// defined, so bounded/real draws are derived here explicitly and reproduce
// bit-for-bit on every platform.

// Unbiased integer in [0, bound) via rejection. bound must be > 0.
std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound);

// 53-bit uniform double in [0, 1).
double uniform_unit(std::mt19937_64& gen);

// Uniform double in [lo, hi).
inline double uniform_range(std::mt19937_64& gen, double lo, double hi) {
  return lo + uniform_unit(gen) * (hi - lo);
}

}  // namespace woundassess
