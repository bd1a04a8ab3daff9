#include "woundassess/preprocess.hpp"

#include <cmath>
#include <stdexcept>

#include "woundassess/rng.hpp"

namespace woundassess {

std::pair<double, double> fit_min_max(std::span<const double> column) {
  if (column.empty()) throw std::domain_error("fit_min_max: empty column");
  double lo = column[0];
  double hi = column[0];
  for (double v : column) {
    if (!std::isfinite(v)) throw std::domain_error("fit_min_max: non-finite value");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

double min_max_normalize(double v, const NormalizationParams& p) {
  if (!std::isfinite(v)) throw std::domain_error("min_max_normalize: non-finite value");
  if (p.max < p.min) throw std::domain_error("min_max_normalize: max < min");
  if (p.max == p.min) return p.new_min;
  return (v - p.min) / (p.max - p.min) * (p.new_max - p.new_min) + p.new_min;
}

double min_max_denormalize(double v, const NormalizationParams& p) {
  if (!std::isfinite(v)) throw std::domain_error("min_max_denormalize: non-finite value");
  if (p.new_max == p.new_min) return p.min;
  return (v - p.new_min) / (p.new_max - p.new_min) * (p.max - p.min) + p.min;
}

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t n,
                                        std::uint64_t seed) {
  if (n > population) throw std::domain_error("sample_indices: n exceeds population");
  std::mt19937_64 gen(seed);
  std::vector<std::size_t> picked;
  picked.reserve(n);
  // Selection sampling: item i is taken with probability needed/remaining,
  // which is exactly uniform over all n-subsets and preserves order.
  std::size_t needed = n;
  for (std::size_t i = 0; i < population && needed > 0; ++i) {
    const std::uint64_t remaining = population - i;
    if (uniform_below(gen, remaining) < needed) {
      picked.push_back(i);
      --needed;
    }
  }
  return picked;
}

LabeledDataset random_sample(const LabeledDataset& ds, std::size_t n, std::uint64_t seed) {
  LabeledDataset out;
  for (std::size_t i : sample_indices(ds.rows.size(), n, seed)) {
    out.add(ds.rows[i].bands, ds.rows[i].assessment);
  }
  return out;
}

}  // namespace woundassess
