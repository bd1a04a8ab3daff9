#include "woundassess/rng.hpp"

#include <limits>

namespace woundassess {

std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  // Rejection from the top of the range keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % bound;
}

double uniform_unit(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace woundassess
