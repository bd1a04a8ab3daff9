#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "woundassess/bands.hpp"
#include "woundassess/tree.hpp"

namespace woundassess {

// Simulated patient: per-sensor center values and jitter amplitudes.
struct CaseProfile {
  int case_id = 1;
  double body_temp_c = 36.5;
  double air_temp_c = 22.0;
  double humidity_pct = 40.0;
  double spo2_pct = 97.0;
  double body_jitter = 0.3;
  double air_jitter = 0.5;
  double humidity_jitter = 1.5;
  double spo2_jitter = 0.5;
  std::int64_t interval_s = 60;
  std::int64_t start_time = 0;
};

// The 25 benchmark readings, 5 cases x 5 rows, timestamps as time-of-day
// seconds.
std::vector<SensorReading> case_fixtures();

// Five simulator profiles whose centers are the per-case means of the
// benchmark readings.
std::vector<CaseProfile> default_case_profiles();

// n readings; each sensor value = center + uniform jitter in [-amp, +amp];
// timestamps strictly increasing by interval. Deterministic given seed.
std::vector<SensorReading> simulate_patient(const CaseProfile& profile, std::size_t n,
                                            std::uint64_t seed);

// Target shape of a generated training dataset: class totals plus, for each
// feature, the (band value x class) count table. Indexed per kAllFeatures and
// class_index order.
struct DatasetSpec {
  std::size_t total = 0;
  std::array<std::uint64_t, 3> class_totals{0, 0, 0};
  std::array<std::vector<std::array<std::uint64_t, 3>>, 4> marginals;
  double noise_rate = 0.0;
  std::uint64_t seed = 0;

  void validate() const;  // totals consistent, noise in [0,1]
};

// Built-in spec carrying the standard 650-instance training-set counts.
DatasetSpec reference_training_spec();

// Draws band combinations per class against the spec's marginal quotas,
// labels them with label(), and rejects rows whose label contradicts the
// target class. Marginal mass demanded in cells no truthful label can reach
// is redistributed proportionally over that column's reachable cells; a
// column with no reachable mass at all raises InfeasibleSpec naming the
// offending cell. Finally noise_rate*total labels are flipped uniformly to a
// different class. Deterministic given spec.seed.
LabeledDataset generate_dataset(const DatasetSpec& spec);

struct LabeledReading {
  SensorReading reading;
  AssessmentClass assessment = AssessmentClass::Good;
};

// Raw numeric readings for a banded dataset: each value drawn uniformly
// within its band's interval (unbounded bands truncated at physically
// sensible caps), rounded to 6 decimals so CSV round trips re-band
// identically.
std::vector<LabeledReading> materialize_readings(const LabeledDataset& ds,
                                                 const BandConfig& cfg,
                                                 std::uint64_t seed);

// Deviation of a generated dataset from a spec's raw marginal targets.
struct MarginalDeviation {
  FeatureId feature = FeatureId::WoundTemp;
  int value = 0;
  AssessmentClass assessment = AssessmentClass::Good;
  long long target = 0;
  long long generated = 0;
};

// All nonzero deviations, largest absolute deviation first.
std::vector<MarginalDeviation> marginal_deviations(const LabeledDataset& ds,
                                                   const DatasetSpec& spec);

}  // namespace woundassess
