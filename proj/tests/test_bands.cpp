#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <limits>

#include "woundassess/bands.hpp"

using namespace woundassess;

TEST_CASE("body temp bands follow the clinical ladder") {
  CHECK(band_body_temp(34.0) == WoundTempBand::Hypothermia);
  CHECK(band_body_temp(35.0) == WoundTempBand::Normal);
  CHECK(band_body_temp(36.8) == WoundTempBand::Normal);
  CHECK(band_body_temp(37.5) == WoundTempBand::Normal);  // upper boundary inclusive
  CHECK(band_body_temp(39.0) == WoundTempBand::Hyperthermia);
  CHECK(band_body_temp(40.0) == WoundTempBand::Hyperthermia);
  CHECK(band_body_temp(40.1) == WoundTempBand::Hyperpyrexia);
  CHECK_THROWS_AS(band_body_temp(std::numeric_limits<double>::quiet_NaN()), InvalidReading);
  CHECK_THROWS_AS(band_body_temp(std::numeric_limits<double>::infinity()), InvalidReading);
}

TEST_CASE("air temp bands") {
  CHECK(band_air_temp(17.0) == AirTempBand::Normal);
  CHECK(band_air_temp(16.0) == AirTempBand::Normal);  // lower boundary inclusive
  CHECK(band_air_temp(15.9) == AirTempBand::Low);
  CHECK(band_air_temp(23.5) == AirTempBand::Normal);
  CHECK(band_air_temp(24.5) == AirTempBand::High);
}

TEST_CASE("humidity bands are lower-inclusive half-open") {
  CHECK(band_humidity(10) == HumidityBand::Dry);
  CHECK(band_humidity(0) == HumidityBand::Dry);
  CHECK(band_humidity(20) == HumidityBand::Normal);
  CHECK(band_humidity(59.99) == HumidityBand::Normal);
  CHECK(band_humidity(60) == HumidityBand::Wet);
  CHECK(band_humidity(85) == HumidityBand::Wet);
  CHECK_THROWS_AS(band_humidity(-0.1), InvalidReading);
}

TEST_CASE("spo2 bands") {
  CHECK(band_spo2(93) == OxygenBand::Hypoxemia);
  CHECK(band_spo2(95) == OxygenBand::Normal);
  CHECK(band_spo2(100) == OxygenBand::Normal);
  CHECK(band_spo2(100.5) == OxygenBand::Higher);
  CHECK_THROWS_AS(band_spo2(-1), InvalidReading);
}

TEST_CASE("band_reading composes the four ladders") {
  SensorReading r1{0, 36.0, 23.0, 20.0, 95.0, {}};
  BandedObservation b1 = band_reading(r1);
  CHECK(b1 == BandedObservation{WoundTempBand::Normal, AirTempBand::Normal,
                                HumidityBand::Normal, OxygenBand::Normal});

  SensorReading r2{0, 39.0, 24.0, 19.0, 90.2, {}};
  BandedObservation b2 = band_reading(r2);
  CHECK(b2 == BandedObservation{WoundTempBand::Hyperthermia, AirTempBand::High,
                                HumidityBand::Dry, OxygenBand::Hypoxemia});

  SensorReading r3{0, 41.6, 15.0, 0.0, 101.0, {}};
  BandedObservation b3 = band_reading(r3);
  CHECK(b3 == BandedObservation{WoundTempBand::Hyperpyrexia, AirTempBand::Low,
                                HumidityBand::Dry, OxygenBand::Higher});
}

TEST_CASE("reading validation enforces the percent cap") {
  SensorReading bad_humidity{0, 36.0, 22.0, 115.0, 97.0, {}};
  CHECK_THROWS_AS(validate_reading(bad_humidity), InvalidReading);
  CHECK_FALSE(is_valid_reading(bad_humidity));
  SensorReading bad_spo2{0, 36.0, 22.0, 40.0, -1.0, {}};
  CHECK_FALSE(is_valid_reading(bad_spo2));
  SensorReading ok{0, 36.0, 22.0, 40.0, 97.0, {}};
  CHECK(is_valid_reading(ok));
}

TEST_CASE("partition totality and monotonicity over a fine sweep") {
  // Every value in the valid domain lands in exactly one band and the band
  // index never decreases as the value grows.
  int prev_body = -1;
  for (int i = 0; i <= 4500; ++i) {
    const double t = 25.0 + i * 0.01;
    const int band = static_cast<int>(band_body_temp(t));
    CHECK(band >= prev_body);
    prev_body = band;
  }
  int prev_air = -1;
  for (int i = 0; i <= 4000; ++i) {
    const double t = 0.0 + i * 0.01;
    const int band = static_cast<int>(band_air_temp(t));
    CHECK(band >= prev_air);
    prev_air = band;
  }
  int prev_hum = -1;
  int prev_spo2 = -1;
  for (int i = 0; i <= 11000; ++i) {
    const double v = i * 0.01;
    const int hband = static_cast<int>(band_humidity(v));
    const int sband = static_cast<int>(band_spo2(v));
    CHECK(hband >= prev_hum);
    CHECK(sband >= prev_spo2);
    prev_hum = hband;
    prev_spo2 = sband;
  }
}

TEST_CASE("boundary determinism") {
  for (double t : {35.0, 37.5, 40.0}) CHECK(band_body_temp(t) == band_body_temp(t));
  for (double h : {20.0, 60.0}) CHECK(band_humidity(h) == band_humidity(h));
  for (double s : {95.0, 100.0}) CHECK(band_spo2(s) == band_spo2(s));
}

TEST_CASE("band config round trips through key=value text") {
  const char* path = "test_bands_config.txt";
  {
    std::ofstream out(path);
    out << "# alternate thresholds\n";
    out << "body_temp.hyperthermia_above=38.3\n";
    out << "body_temp.hyperpyrexia_above=41.5\n";
  }
  BandConfig cfg = BandConfig::load(path);
  CHECK(cfg.body_hyperthermia_above == doctest::Approx(38.3));
  CHECK(cfg.body_hyperpyrexia_above == doctest::Approx(41.5));
  CHECK(cfg.body_hypothermia_below == doctest::Approx(35.0));  // untouched default
  CHECK(band_body_temp(38.0, cfg) == WoundTempBand::Normal);
  CHECK(band_body_temp(41.0, cfg) == WoundTempBand::Hyperthermia);
  std::remove(path);
}

TEST_CASE("band config rejects unknown keys and bad ladders") {
  const char* path = "test_bands_config_bad.txt";
  {
    std::ofstream out(path);
    out << "body_temp.fever_above=37.0\n";
  }
  CHECK_THROWS_AS(BandConfig::load(path), ParseError);
  {
    std::ofstream out(path);
    out << "body_temp.hypothermia_below=41.0\n";
  }
  CHECK_THROWS_AS(BandConfig::load(path), ParseError);
  {
    std::ofstream out(path);
    out << "spo2.hypoxemia_below=oops\n";
  }
  CHECK_THROWS_AS(BandConfig::load(path), ParseError);
  std::remove(path);
}

TEST_CASE("class codes are fixed") {
  CHECK(class_code(AssessmentClass::Good) == 1);
  CHECK(class_code(AssessmentClass::Satisfactory) == 0);
  CHECK(class_code(AssessmentClass::Alarming) == -1);
  CHECK(class_from_code(1) == AssessmentClass::Good);
  CHECK(class_from_code(0) == AssessmentClass::Satisfactory);
  CHECK(class_from_code(-1) == AssessmentClass::Alarming);
  CHECK_THROWS_AS(class_from_code(7), ParseError);
}
