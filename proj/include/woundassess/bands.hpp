#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "woundassess/errors.hpp"

namespace woundassess {

// One timestamped raw observation from the four sensors.
struct SensorReading {
  std::int64_t timestamp = 0;  // seconds since epoch (or since midnight for fixture data)
  double body_temp_c = 0.0;
  double air_temp_c = 0.0;
  double humidity_pct = 0.0;
  double spo2_pct = 0.0;
  std::optional<int> case_id;

  bool operator==(const SensorReading&) const = default;
};

// Clinical bands, ordered low-to-high along each sensor's scale.
enum class WoundTempBand { Hypothermia, Normal, Hyperthermia, Hyperpyrexia };
enum class AirTempBand { Low, Normal, High };
enum class HumidityBand { Dry, Normal, Wet };
enum class OxygenBand { Hypoxemia, Normal, Higher };

// Three-way wound status verdict. Enum values are the numeric I/O codes.
enum class AssessmentClass : int { Satisfactory = 0, Good = 1, Alarming = -1 };

// Dense index (Good, Satisfactory, Alarming) used for counts and matrices.
inline constexpr std::array<AssessmentClass, 3> kClassOrder = {
    AssessmentClass::Good, AssessmentClass::Satisfactory, AssessmentClass::Alarming};

constexpr int class_index(AssessmentClass c) {
  switch (c) {
    case AssessmentClass::Good: return 0;
    case AssessmentClass::Satisfactory: return 1;
    case AssessmentClass::Alarming: return 2;
  }
  return 2;
}

// Severity order: Good < Satisfactory < Alarming.
constexpr int severity(AssessmentClass c) { return class_index(c); }

constexpr int class_code(AssessmentClass c) { return static_cast<int>(c); }
AssessmentClass class_from_code(int code);

// The four categorical bands for one reading.
struct BandedObservation {
  WoundTempBand wound_temp = WoundTempBand::Normal;
  AirTempBand air_temp = AirTempBand::Normal;
  HumidityBand humidity = HumidityBand::Normal;
  OxygenBand spo2 = OxygenBand::Normal;

  auto operator<=>(const BandedObservation&) const = default;
};

// Band boundary thresholds. Defaults follow the standard clinical ranges;
// every value can be overridden via a key=value config file.
//
// Ladder semantics (lower-inclusive, topmost finite boundary inclusive below):
//   body temp:  Hypothermia < hypothermia_below <= Normal <= hyperthermia_above
//               < Hyperthermia <= hyperpyrexia_above < Hyperpyrexia
//   air temp:   Low < low_below <= Normal <= high_above < High
//   humidity:   Dry < dry_below <= Normal < wet_from <= Wet
//   spo2:       Hypoxemia < hypoxemia_below <= Normal <= higher_above < Higher
struct BandConfig {
  double body_hypothermia_below = 35.0;
  double body_hyperthermia_above = 37.5;
  double body_hyperpyrexia_above = 40.0;
  double air_low_below = 16.0;
  double air_high_above = 23.5;
  double humidity_dry_below = 20.0;
  double humidity_wet_from = 60.0;
  double spo2_hypoxemia_below = 95.0;
  double spo2_higher_above = 100.0;

  // Throws ParseError if any ladder is not strictly increasing.
  void validate() const;

  // Plain-text key=value file, keys like "body_temp.hypothermia_below".
  static BandConfig load(const std::string& path);
  std::string to_text() const;
};

// Percent sensors admit noisy readings up to this cap.
inline constexpr double kPercentCap = 110.0;

WoundTempBand band_body_temp(double celsius, const BandConfig& cfg = {});
AirTempBand band_air_temp(double celsius, const BandConfig& cfg = {});
HumidityBand band_humidity(double pct, const BandConfig& cfg = {});
OxygenBand band_spo2(double pct, const BandConfig& cfg = {});

// Full-domain validation: finite temperatures, percents in [0, kPercentCap].
void validate_reading(const SensorReading& r);
bool is_valid_reading(const SensorReading& r) noexcept;

// Component-wise banding of a validated reading.
BandedObservation band_reading(const SensorReading& r, const BandConfig& cfg = {});

// Band/class names, bit-exact as used in the working-rule table and CSVs.
std::string_view to_string(WoundTempBand b);
std::string_view to_string(AirTempBand b);
std::string_view to_string(HumidityBand b);
std::string_view to_string(OxygenBand b);
std::string_view to_string(AssessmentClass c);

WoundTempBand wound_temp_band_from_string(std::string_view s);
AirTempBand air_temp_band_from_string(std::string_view s);
HumidityBand humidity_band_from_string(std::string_view s);
OxygenBand oxygen_band_from_string(std::string_view s);
AssessmentClass assessment_class_from_string(std::string_view s);

}  // namespace woundassess
