#include "woundassess/bands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace woundassess {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InvalidReading(std::string(what) + " is not finite");
  }
}

void require_percent(double v, const char* what) {
  require_finite(v, what);
  if (v < 0.0) {
    throw InvalidReading(std::string(what) + " is negative");
  }
}

}  // namespace

AssessmentClass class_from_code(int code) {
  switch (code) {
    case 1: return AssessmentClass::Good;
    case 0: return AssessmentClass::Satisfactory;
    case -1: return AssessmentClass::Alarming;
  }
  throw ParseError("unknown class code " + std::to_string(code));
}

void BandConfig::validate() const {
  auto check = [](bool ok, const char* msg) {
    if (!ok) throw ParseError(std::string("band config: ") + msg);
  };
  check(body_hypothermia_below < body_hyperthermia_above &&
            body_hyperthermia_above < body_hyperpyrexia_above,
        "body temp thresholds must be strictly increasing");
  check(air_low_below < air_high_above, "air temp thresholds must be strictly increasing");
  check(humidity_dry_below < humidity_wet_from,
        "humidity thresholds must be strictly increasing");
  check(spo2_hypoxemia_below < spo2_higher_above,
        "spo2 thresholds must be strictly increasing");
}

namespace {

std::map<std::string, double BandConfig::*> config_keys() {
  return {
      {"body_temp.hypothermia_below", &BandConfig::body_hypothermia_below},
      {"body_temp.hyperthermia_above", &BandConfig::body_hyperthermia_above},
      {"body_temp.hyperpyrexia_above", &BandConfig::body_hyperpyrexia_above},
      {"air_temp.low_below", &BandConfig::air_low_below},
      {"air_temp.high_above", &BandConfig::air_high_above},
      {"humidity.dry_below", &BandConfig::humidity_dry_below},
      {"humidity.wet_from", &BandConfig::humidity_wet_from},
      {"spo2.hypoxemia_below", &BandConfig::spo2_hypoxemia_below},
      {"spo2.higher_above", &BandConfig::spo2_higher_above},
  };
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

BandConfig BandConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open band config: " + path);
  BandConfig cfg;
  auto keys = config_keys();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    auto it = keys.find(key);
    if (it == keys.end()) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    try {
      std::size_t pos = 0;
      double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument(value);
      cfg.*(it->second) = v;
    } catch (const std::exception&) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": bad number '" + value + "'");
    }
  }
  cfg.validate();
  return cfg;
}

std::string BandConfig::to_text() const {
  std::ostringstream out;
  const BandConfig& c = *this;
  for (const auto& [key, member] : config_keys()) {
    out << key << "=" << c.*member << "\n";
  }
  return out.str();
}

WoundTempBand band_body_temp(double celsius, const BandConfig& cfg) {
  require_finite(celsius, "body temp");
  if (celsius < cfg.body_hypothermia_below) return WoundTempBand::Hypothermia;
  if (celsius <= cfg.body_hyperthermia_above) return WoundTempBand::Normal;
  if (celsius <= cfg.body_hyperpyrexia_above) return WoundTempBand::Hyperthermia;
  return WoundTempBand::Hyperpyrexia;
}

AirTempBand band_air_temp(double celsius, const BandConfig& cfg) {
  require_finite(celsius, "air temp");
  if (celsius < cfg.air_low_below) return AirTempBand::Low;
  if (celsius <= cfg.air_high_above) return AirTempBand::Normal;
  return AirTempBand::High;
}

HumidityBand band_humidity(double pct, const BandConfig& cfg) {
  require_percent(pct, "humidity");
  if (pct < cfg.humidity_dry_below) return HumidityBand::Dry;
  if (pct < cfg.humidity_wet_from) return HumidityBand::Normal;
  return HumidityBand::Wet;
}

OxygenBand band_spo2(double pct, const BandConfig& cfg) {
  require_percent(pct, "spo2");
  if (pct < cfg.spo2_hypoxemia_below) return OxygenBand::Hypoxemia;
  if (pct <= cfg.spo2_higher_above) return OxygenBand::Normal;
  return OxygenBand::Higher;
}

void validate_reading(const SensorReading& r) {
  require_finite(r.body_temp_c, "body temp");
  require_finite(r.air_temp_c, "air temp");
  require_percent(r.humidity_pct, "humidity");
  require_percent(r.spo2_pct, "spo2");
  if (r.humidity_pct > kPercentCap) throw InvalidReading("humidity above sensor cap");
  if (r.spo2_pct > kPercentCap) throw InvalidReading("spo2 above sensor cap");
}

bool is_valid_reading(const SensorReading& r) noexcept {
  return std::isfinite(r.body_temp_c) && std::isfinite(r.air_temp_c) &&
         std::isfinite(r.humidity_pct) && std::isfinite(r.spo2_pct) &&
         r.humidity_pct >= 0.0 && r.humidity_pct <= kPercentCap &&
         r.spo2_pct >= 0.0 && r.spo2_pct <= kPercentCap;
}

BandedObservation band_reading(const SensorReading& r, const BandConfig& cfg) {
  validate_reading(r);
  return BandedObservation{
      band_body_temp(r.body_temp_c, cfg),
      band_air_temp(r.air_temp_c, cfg),
      band_humidity(r.humidity_pct, cfg),
      band_spo2(r.spo2_pct, cfg),
  };
}

std::string_view to_string(WoundTempBand b) {
  switch (b) {
    case WoundTempBand::Hypothermia: return "Hypothermia";
    case WoundTempBand::Normal: return "Normal";
    case WoundTempBand::Hyperthermia: return "Hyperthermia";
    case WoundTempBand::Hyperpyrexia: return "Hyperpyrexia";
  }
  return "?";
}

std::string_view to_string(AirTempBand b) {
  switch (b) {
    case AirTempBand::Low: return "Low";
    case AirTempBand::Normal: return "Normal";
    case AirTempBand::High: return "High";
  }
  return "?";
}

std::string_view to_string(HumidityBand b) {
  switch (b) {
    case HumidityBand::Dry: return "Dry";
    case HumidityBand::Normal: return "Normal";
    case HumidityBand::Wet: return "Wet";
  }
  return "?";
}

std::string_view to_string(OxygenBand b) {
  switch (b) {
    case OxygenBand::Hypoxemia: return "Hypoxemia";
    case OxygenBand::Normal: return "Normal";
    case OxygenBand::Higher: return "Higher";
  }
  return "?";
}

std::string_view to_string(AssessmentClass c) {
  switch (c) {
    case AssessmentClass::Good: return "Good";
    case AssessmentClass::Satisfactory: return "Satisfactory";
    case AssessmentClass::Alarming: return "Alarming";
  }
  return "?";
}

namespace {

[[noreturn]] void bad_name(const char* what, std::string_view s) {
  throw ParseError(std::string("unknown ") + what + " '" + std::string(s) + "'");
}

}  // namespace

WoundTempBand wound_temp_band_from_string(std::string_view s) {
  if (s == "Hypothermia") return WoundTempBand::Hypothermia;
  if (s == "Normal") return WoundTempBand::Normal;
  if (s == "Hyperthermia") return WoundTempBand::Hyperthermia;
  if (s == "Hyperpyrexia") return WoundTempBand::Hyperpyrexia;
  bad_name("wound temp band", s);
}

AirTempBand air_temp_band_from_string(std::string_view s) {
  if (s == "Low") return AirTempBand::Low;
  if (s == "Normal") return AirTempBand::Normal;
  if (s == "High") return AirTempBand::High;
  bad_name("air temp band", s);
}

HumidityBand humidity_band_from_string(std::string_view s) {
  if (s == "Dry") return HumidityBand::Dry;
  if (s == "Normal") return HumidityBand::Normal;
  if (s == "Wet") return HumidityBand::Wet;
  bad_name("humidity band", s);
}

OxygenBand oxygen_band_from_string(std::string_view s) {
  if (s == "Hypoxemia") return OxygenBand::Hypoxemia;
  if (s == "Normal") return OxygenBand::Normal;
  if (s == "Higher") return OxygenBand::Higher;
  bad_name("oxygen band", s);
}

AssessmentClass assessment_class_from_string(std::string_view s) {
  if (s == "Good") return AssessmentClass::Good;
  if (s == "Satisfactory") return AssessmentClass::Satisfactory;
  if (s == "Alarming") return AssessmentClass::Alarming;
  bad_name("assessment class", s);
}

}  // namespace woundassess
