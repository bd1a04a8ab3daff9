#include "woundassess/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "woundassess/rng.hpp"
#include "woundassess/rules.hpp"

namespace woundassess {

namespace {

constexpr std::int64_t tod(int h, int m, int s) { return h * 3600 + m * 60 + s; }

}  // namespace

std::vector<SensorReading> case_fixtures() {
  // 5 cases x 5 rows: time, body temp, air temp, humidity, SpO2.
  return {
      {tod(10, 57, 24), 36.0, 23.0, 20.0, 95.0, 1},
      {tod(11, 10, 27), 36.2, 23.5, 21.0, 95.9, 1},
      {tod(11, 20, 30), 36.5, 24.0, 22.0, 95.3, 1},
      {tod(12, 15, 31), 36.0, 23.0, 22.0, 95.0, 1},
      {tod(13, 37, 33), 36.3, 23.5, 21.0, 95.0, 1},

      {tod(11, 1, 24), 36.5, 24.0, 80.0, 96.2, 2},
      {tod(11, 10, 27), 36.7, 24.5, 81.0, 96.3, 2},
      {tod(0, 20, 30), 36.0, 24.0, 82.0, 96.0, 2},
      {tod(12, 50, 31), 36.0, 24.0, 89.0, 96.0, 2},
      {tod(13, 37, 33), 37.0, 23.5, 83.0, 96.0, 2},

      {tod(11, 10, 48), 37.0, 23.0, 90.0, 93.0, 3},
      {tod(11, 50, 51), 36.2, 23.5, 91.0, 93.0, 3},
      {tod(0, 30, 53), 36.8, 24.0, 91.0, 93.0, 3},
      {tod(13, 30, 56), 36.0, 23.0, 92.0, 93.3, 3},
      {tod(14, 10, 59), 36.0, 23.5, 92.0, 93.0, 3},

      {tod(11, 14, 59), 39.0, 23.0, 20.0, 90.0, 4},
      {tod(13, 14, 2), 39.0, 24.0, 19.0, 90.2, 4},
      {tod(14, 14, 5), 38.9, 24.0, 18.0, 90.1, 4},
      {tod(15, 14, 8), 38.9, 24.5, 18.0, 90.8, 4},
      {tod(16, 14, 12), 39.0, 24.5, 19.0, 90.0, 4},

      {tod(10, 30, 59), 36.0, 24.5, 22.0, 93.0, 5},
      {tod(11, 30, 2), 37.5, 24.0, 23.0, 92.0, 5},
      {tod(12, 35, 5), 37.0, 23.5, 22.0, 94.0, 5},
      {tod(13, 20, 8), 37.0, 23.5, 22.0, 92.0, 5},
      {tod(14, 30, 12), 37.5, 23.5, 23.0, 90.0, 5},
  };
}

std::vector<CaseProfile> default_case_profiles() {
  std::vector<CaseProfile> profiles;
  const auto fixtures = case_fixtures();
  for (int case_id = 1; case_id <= 5; ++case_id) {
    CaseProfile p;
    p.case_id = case_id;
    double body = 0, air = 0, hum = 0, spo2 = 0;
    int n = 0;
    for (const SensorReading& r : fixtures) {
      if (r.case_id != case_id) continue;
      body += r.body_temp_c;
      air += r.air_temp_c;
      hum += r.humidity_pct;
      spo2 += r.spo2_pct;
      ++n;
    }
    p.body_temp_c = body / n;
    p.air_temp_c = air / n;
    p.humidity_pct = hum / n;
    p.spo2_pct = spo2 / n;
    profiles.push_back(p);
  }
  return profiles;
}

std::vector<SensorReading> simulate_patient(const CaseProfile& profile, std::size_t n,
                                            std::uint64_t seed) {
  if (profile.interval_s <= 0) throw std::domain_error("simulate_patient: interval must be > 0");
  if (profile.body_jitter < 0 || profile.air_jitter < 0 || profile.humidity_jitter < 0 ||
      profile.spo2_jitter < 0) {
    throw std::domain_error("simulate_patient: jitter must be >= 0");
  }
  std::mt19937_64 gen(seed);
  auto jittered = [&](double center, double amp) {
    return center + amp * (2.0 * uniform_unit(gen) - 1.0);
  };
  std::vector<SensorReading> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SensorReading r;
    r.timestamp = profile.start_time + static_cast<std::int64_t>(i) * profile.interval_s;
    r.body_temp_c = jittered(profile.body_temp_c, profile.body_jitter);
    r.air_temp_c = jittered(profile.air_temp_c, profile.air_jitter);
    r.humidity_pct = std::clamp(jittered(profile.humidity_pct, profile.humidity_jitter),
                                0.0, kPercentCap);
    r.spo2_pct = std::clamp(jittered(profile.spo2_pct, profile.spo2_jitter), 0.0, kPercentCap);
    r.case_id = profile.case_id;
    out.push_back(r);
  }
  return out;
}

void DatasetSpec::validate() const {
  if (class_totals[0] + class_totals[1] + class_totals[2] != total) {
    throw std::domain_error("dataset spec: class totals must sum to total");
  }
  for (std::size_t f = 0; f < marginals.size(); ++f) {
    const auto& table = marginals[f];
    if (table.size() != static_cast<std::size_t>(feature_cardinality(kAllFeatures[f]))) {
      throw std::domain_error("dataset spec: marginal table has wrong row count");
    }
    std::uint64_t sum = 0;
    for (const auto& row : table) sum += row[0] + row[1] + row[2];
    if (sum != total) {
      throw std::domain_error("dataset spec: marginal table must sum to total");
    }
  }
  if (!(noise_rate >= 0.0 && noise_rate <= 1.0)) {
    throw std::domain_error("dataset spec: noise rate must be in [0, 1]");
  }
}

DatasetSpec reference_training_spec() {
  DatasetSpec spec;
  spec.total = 650;
  spec.class_totals = {172, 84, 394};  // Good, Satisfactory, Alarming
  // Rows follow each feature's ladder order; columns Good/Satisfactory/Alarming.
  spec.marginals[0] = {
      // WoundTemp: Hypothermia, Normal, Hyperthermia, Hyperpyrexia
      {0, 0, 163},
      {172, 63, 33},
      {0, 21, 81},
      {0, 0, 117},
  };
  spec.marginals[1] = {
      // AirTemp: Low, Normal, High
      {64, 42, 195},
      {87, 42, 119},
      {21, 0, 80},
  };
  spec.marginals[2] = {
      // Humidity: Dry, Normal, Wet
      {20, 40, 79},
      {126, 2, 136},
      {26, 42, 179},
  };
  spec.marginals[3] = {
      // SpO2: Hypoxemia, Normal, Higher
      {1, 0, 149},
      {170, 24, 61},
      {1, 60, 184},
  };
  return spec;
}

namespace {

// Reachability of (feature value, class) pairs under the labeling oracle.
struct Reachability {
  // reachable[f][v][c]: some combination with feature f at value v gets label c
  std::array<std::array<std::array<bool, 3>, 4>, 4> reachable{};

  Reachability() {
    for (const BandedObservation& obs : all_combinations()) {
      const int c = class_index(label(obs));
      for (std::size_t f = 0; f < kAllFeatures.size(); ++f) {
        reachable[f][feature_value(obs, kAllFeatures[f])][c] = true;
      }
    }
  }
};

// Scale a non-negative weight vector to integer targets summing to `total`
// (largest-remainder rounding).
std::vector<std::uint64_t> scale_to_total(const std::vector<double>& weights,
                                          std::uint64_t total) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::uint64_t> out(weights.size(), 0);
  if (sum <= 0.0 || total == 0) return out;
  std::vector<std::pair<double, std::size_t>> remainders;
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = weights[i] / sum * static_cast<double>(total);
    out[i] = static_cast<std::uint64_t>(exact);
    assigned += out[i];
    remainders.push_back({exact - static_cast<double>(out[i]), i});
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) {
    out[remainders[k % remainders.size()].second] += 1;
  }
  return out;
}

// Per-class, per-feature quotas after moving unreachable demand onto
// reachable cells in proportion.
std::array<std::vector<std::int64_t>, 4> adjusted_quotas(const DatasetSpec& spec,
                                                         const Reachability& reach, int c) {
  std::array<std::vector<std::int64_t>, 4> quotas;
  const std::uint64_t class_total = spec.class_totals[c];
  for (std::size_t f = 0; f < kAllFeatures.size(); ++f) {
    const int nv = feature_cardinality(kAllFeatures[f]);
    std::vector<double> weights(nv, 0.0);
    double reachable_mass = 0.0;
    double column_mass = 0.0;
    std::uint64_t worst_demand = 0;
    int worst_value = -1;
    for (int v = 0; v < nv; ++v) {
      const std::uint64_t demand = spec.marginals[f][v][c];
      column_mass += static_cast<double>(demand);
      if (reach.reachable[f][v][c]) {
        weights[v] = static_cast<double>(demand);
        reachable_mass += static_cast<double>(demand);
      } else if (demand > worst_demand) {
        worst_demand = demand;
        worst_value = v;
      }
    }
    if (class_total > 0 && reachable_mass == 0.0) {
      if (column_mass > 0.0) {
        std::ostringstream msg;
        msg << "infeasible dataset spec: " << worst_demand << " "
            << to_string(kClassOrder[c]) << " instance(s) demanded for "
            << to_string(kAllFeatures[f]) << "="
            << band_value_name(kAllFeatures[f], worst_value)
            << ", which no rule-labeled combination can produce";
        throw InfeasibleSpec(msg.str());
      }
      // No demand stated at all: spread uniformly over reachable cells.
      for (int v = 0; v < nv; ++v) {
        if (reach.reachable[f][v][c]) weights[v] = 1.0;
      }
    }
    const auto scaled = scale_to_total(weights, class_total);
    quotas[f].assign(scaled.begin(), scaled.end());
  }
  return quotas;
}

int draw_value(std::mt19937_64& gen, const std::vector<std::int64_t>& quota,
               const std::array<std::array<bool, 3>, 4>& reachable_rows, int c, int nv) {
  std::int64_t mass = 0;
  for (int v = 0; v < nv; ++v) {
    if (reachable_rows[v][c] && quota[v] > 0) mass += quota[v];
  }
  if (mass == 0) {
    // Quotas exhausted (late fallback overdraws): uniform over reachable.
    int count = 0;
    for (int v = 0; v < nv; ++v) {
      if (reachable_rows[v][c]) ++count;
    }
    std::uint64_t pick = uniform_below(gen, static_cast<std::uint64_t>(count));
    for (int v = 0; v < nv; ++v) {
      if (reachable_rows[v][c] && pick-- == 0) return v;
    }
    return nv - 1;
  }
  std::int64_t pick = static_cast<std::int64_t>(
      uniform_below(gen, static_cast<std::uint64_t>(mass)));
  for (int v = 0; v < nv; ++v) {
    if (!reachable_rows[v][c] || quota[v] <= 0) continue;
    if (pick < quota[v]) return v;
    pick -= quota[v];
  }
  return nv - 1;
}

BandedObservation observation_from_values(const std::array<int, 4>& values) {
  return BandedObservation{
      static_cast<WoundTempBand>(values[0]), static_cast<AirTempBand>(values[1]),
      static_cast<HumidityBand>(values[2]), static_cast<OxygenBand>(values[3])};
}

}  // namespace

LabeledDataset generate_dataset(const DatasetSpec& spec) {
  spec.validate();
  LabeledDataset ds;
  if (spec.total == 0) return ds;

  const Reachability reach;
  std::mt19937_64 gen(spec.seed);
  constexpr int kRetries = 64;

  // Combinations grouped by their truthful label, for the retry fallback.
  std::array<std::vector<BandedObservation>, 3> by_class;
  for (const BandedObservation& obs : all_combinations()) {
    by_class[class_index(label(obs))].push_back(obs);
  }

  std::vector<LabeledRow> rows;
  rows.reserve(spec.total);
  for (int c = 0; c < 3; ++c) {
    const AssessmentClass target = kClassOrder[c];
    if (spec.class_totals[c] == 0) continue;
    if (by_class[c].empty()) {
      throw InfeasibleSpec(std::string("infeasible dataset spec: no combination is labeled ") +
                           std::string(to_string(target)));
    }
    auto quotas = adjusted_quotas(spec, reach, c);
    for (std::uint64_t i = 0; i < spec.class_totals[c]; ++i) {
      std::array<int, 4> values{};
      bool accepted = false;
      for (int attempt = 0; attempt < kRetries && !accepted; ++attempt) {
        for (std::size_t f = 0; f < kAllFeatures.size(); ++f) {
          values[f] = draw_value(gen, quotas[f], reach.reachable[f], c,
                                 feature_cardinality(kAllFeatures[f]));
        }
        accepted = label(observation_from_values(values)) == target;
      }
      if (!accepted) {
        // Joint quotas became contradictory; pick a truthful combination
        // weighted toward whatever quota is left.
        std::vector<double> weights;
        weights.reserve(by_class[c].size());
        for (const BandedObservation& obs : by_class[c]) {
          double w = 1.0;
          for (std::size_t f = 0; f < kAllFeatures.size(); ++f) {
            w *= static_cast<double>(
                std::max<std::int64_t>(quotas[f][feature_value(obs, kAllFeatures[f])], 0) + 1);
          }
          weights.push_back(w);
        }
        double total_w = std::accumulate(weights.begin(), weights.end(), 0.0);
        double pick = uniform_unit(gen) * total_w;
        std::size_t chosen = 0;
        for (std::size_t k = 0; k < weights.size(); ++k) {
          if (pick < weights[k] || k + 1 == weights.size()) {
            chosen = k;
            break;
          }
          pick -= weights[k];
        }
        const BandedObservation& obs = by_class[c][chosen];
        for (std::size_t f = 0; f < kAllFeatures.size(); ++f) {
          values[f] = feature_value(obs, kAllFeatures[f]);
        }
      }
      for (std::size_t f = 0; f < kAllFeatures.size(); ++f) quotas[f][values[f]] -= 1;
      rows.push_back({observation_from_values(values), target});
    }
  }

  // Shuffle so the file is not grouped by class (Fisher-Yates, seeded stream).
  for (std::size_t i = rows.size(); i > 1; --i) {
    std::swap(rows[i - 1], rows[uniform_below(gen, i)]);
  }

  for (const LabeledRow& r : rows) ds.add(r.bands, r.assessment);

  // Self-check before noise: class totals exact, marginals near quota.
  for (int c = 0; c < 3; ++c) {
    if (ds.class_counts.n[c] != spec.class_totals[c]) {
      throw std::logic_error("generate_dataset: class totals drifted");
    }
  }
  const std::int64_t tol = std::max<std::int64_t>(
      1, std::llround(0.02 * static_cast<double>(spec.total)));
  for (int c = 0; c < 3; ++c) {
    auto quotas = adjusted_quotas(spec, reach, c);
    for (std::size_t f = 0; f < kAllFeatures.size(); ++f) {
      std::vector<std::int64_t> got(feature_cardinality(kAllFeatures[f]), 0);
      for (const LabeledRow& r : ds.rows) {
        if (class_index(r.assessment) == c) got[feature_value(r.bands, kAllFeatures[f])]++;
      }
      for (std::size_t v = 0; v < got.size(); ++v) {
        if (std::llabs(got[v] - quotas[f][v]) > tol) {
          throw std::logic_error("generate_dataset: marginal deviation beyond tolerance");
        }
      }
    }
  }

  // Label noise: flip a uniform selection of rows to a different class.
  const auto flips = static_cast<std::size_t>(
      std::llround(spec.noise_rate * static_cast<double>(spec.total)));
  if (flips > 0) {
    std::size_t needed = flips;
    ClassCounts recount;
    for (std::size_t i = 0; i < ds.rows.size(); ++i) {
      const std::uint64_t remaining = ds.rows.size() - i;
      if (needed > 0 && uniform_below(gen, remaining) < needed) {
        --needed;
        const int old_index = class_index(ds.rows[i].assessment);
        int pick = static_cast<int>(uniform_below(gen, 2));
        int new_index = (old_index + 1 + pick) % 3;
        ds.rows[i].assessment = kClassOrder[new_index];
      }
      recount.add(ds.rows[i].assessment);
    }
    ds.class_counts = recount;
  }
  return ds;
}

namespace {

struct Interval {
  double lo;
  double hi;
};

Interval band_interval(FeatureId f, int value, const BandConfig& cfg) {
  // Caps for the open-ended bands: body [30, 43], air [5, 35], humidity
  // [0, 100], spo2 [80, 104].
  switch (f) {
    case FeatureId::WoundTemp:
      switch (static_cast<WoundTempBand>(value)) {
        case WoundTempBand::Hypothermia: return {30.0, cfg.body_hypothermia_below};
        case WoundTempBand::Normal:
          return {cfg.body_hypothermia_below, cfg.body_hyperthermia_above};
        case WoundTempBand::Hyperthermia:
          return {cfg.body_hyperthermia_above, cfg.body_hyperpyrexia_above};
        case WoundTempBand::Hyperpyrexia: return {cfg.body_hyperpyrexia_above, 43.0};
      }
      break;
    case FeatureId::AirTemp:
      switch (static_cast<AirTempBand>(value)) {
        case AirTempBand::Low: return {5.0, cfg.air_low_below};
        case AirTempBand::Normal: return {cfg.air_low_below, cfg.air_high_above};
        case AirTempBand::High: return {cfg.air_high_above, 35.0};
      }
      break;
    case FeatureId::Humidity:
      switch (static_cast<HumidityBand>(value)) {
        case HumidityBand::Dry: return {0.0, cfg.humidity_dry_below};
        case HumidityBand::Normal: return {cfg.humidity_dry_below, cfg.humidity_wet_from};
        case HumidityBand::Wet: return {cfg.humidity_wet_from, 100.0};
      }
      break;
    case FeatureId::SpO2:
      switch (static_cast<OxygenBand>(value)) {
        case OxygenBand::Hypoxemia: return {80.0, cfg.spo2_hypoxemia_below};
        case OxygenBand::Normal: return {cfg.spo2_hypoxemia_below, cfg.spo2_higher_above};
        case OxygenBand::Higher: return {cfg.spo2_higher_above, 104.0};
      }
      break;
  }
  return {0.0, 1.0};
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace

std::vector<LabeledReading> materialize_readings(const LabeledDataset& ds,
                                                 const BandConfig& cfg,
                                                 std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<LabeledReading> out;
  out.reserve(ds.size());
  std::int64_t ts = 0;
  for (const LabeledRow& row : ds.rows) {
    // Redraw until the 6-decimal rounded value still lands in the band, so
    // CSV round trips re-band identically.
    auto draw = [&](FeatureId f, int value, auto band_fn) {
      const Interval iv = band_interval(f, value, cfg);
      for (;;) {
        const double v = round6(uniform_range(gen, iv.lo, iv.hi));
        if (static_cast<int>(band_fn(v, cfg)) == value) return v;
      }
    };
    SensorReading r;
    r.timestamp = ts;
    ts += 60;
    r.body_temp_c = draw(FeatureId::WoundTemp, static_cast<int>(row.bands.wound_temp),
                         [](double v, const BandConfig& c) { return band_body_temp(v, c); });
    r.air_temp_c = draw(FeatureId::AirTemp, static_cast<int>(row.bands.air_temp),
                        [](double v, const BandConfig& c) { return band_air_temp(v, c); });
    r.humidity_pct = draw(FeatureId::Humidity, static_cast<int>(row.bands.humidity),
                          [](double v, const BandConfig& c) { return band_humidity(v, c); });
    r.spo2_pct = draw(FeatureId::SpO2, static_cast<int>(row.bands.spo2),
                      [](double v, const BandConfig& c) { return band_spo2(v, c); });
    out.push_back({r, row.assessment});
  }
  return out;
}

std::vector<MarginalDeviation> marginal_deviations(const LabeledDataset& ds,
                                                   const DatasetSpec& spec) {
  std::vector<MarginalDeviation> out;
  for (std::size_t f = 0; f < kAllFeatures.size(); ++f) {
    const int nv = feature_cardinality(kAllFeatures[f]);
    for (int v = 0; v < nv; ++v) {
      for (int c = 0; c < 3; ++c) {
        long long got = 0;
        for (const LabeledRow& r : ds.rows) {
          if (class_index(r.assessment) == c &&
              feature_value(r.bands, kAllFeatures[f]) == v) {
            ++got;
          }
        }
        const auto target = static_cast<long long>(spec.marginals[f][v][c]);
        if (got != target) {
          out.push_back({kAllFeatures[f], v, kClassOrder[c], target, got});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const MarginalDeviation& a, const MarginalDeviation& b) {
    return std::llabs(a.generated - a.target) > std::llabs(b.generated - b.target);
  });
  return out;
}

}  // namespace woundassess
