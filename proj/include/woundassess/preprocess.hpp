#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "woundassess/tree.hpp"

namespace woundassess {

// Affine rescaling parameters for one column.
struct NormalizationParams {
  double min = 0.0;
  double max = 1.0;
  double new_min = 0.0;
  double new_max = 1.0;
};

// Observed (min, max) of a non-empty, all-finite column.
std::pair<double, double> fit_min_max(std::span<const double> column);

// v mapped from [min, max] onto [new_min, new_max]. A degenerate column
// (max == min) maps everything to new_min.
double min_max_normalize(double v, const NormalizationParams& p);

// Inverse affine map; recovers the raw value when max > min.
double min_max_denormalize(double v, const NormalizationParams& p);

// Uniform sample of n indices without replacement from [0, population),
// returned in increasing order. Deterministic given seed.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t n,
                                        std::uint64_t seed);

// Uniform sample of n rows without replacement, preserving source order.
template <typename T>
std::vector<T> random_sample(const std::vector<T>& rows, std::size_t n,
                             std::uint64_t seed) {
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i : sample_indices(rows.size(), n, seed)) out.push_back(rows[i]);
  return out;
}

LabeledDataset random_sample(const LabeledDataset& ds, std::size_t n, std::uint64_t seed);

}  // namespace woundassess
