#pragma once

#include <optional>
#include <string>
#include <vector>

#include "woundassess/bands.hpp"

namespace woundassess {

// One working rule: four band antecedents and the assessment verdict.
struct Rule {
  int id = 0;
  AirTempBand air_temp = AirTempBand::Normal;
  HumidityBand humidity = HumidityBand::Normal;
  WoundTempBand wound_temp = WoundTempBand::Normal;
  OxygenBand spo2 = OxygenBand::Normal;
  AssessmentClass assessment = AssessmentClass::Good;

  bool matches(const BandedObservation& obs) const {
    return air_temp == obs.air_temp && humidity == obs.humidity &&
           wound_temp == obs.wound_temp && spo2 == obs.spo2;
  }
};

using RuleTable = std::vector<Rule>;

// The 22 built-in working rules. Rules 18 and 22 are identical duplicates
// and are kept as-is.
const RuleTable& rule_table();

// First rule whose four antecedents all match; absent if no exact match.
std::optional<Rule> lookup_rule(const BandedObservation& obs);

// Total labeling function covering all 108 band combinations. Reproduces
// every rule in rule_table() and extends them by severity of the wound
// factors:
//   Alarming      wound temp Hyperpyrexia or Hypothermia
//   Satisfactory  wound temp Hyperthermia, or SpO2 outside Normal
//   Good          otherwise (only environmental factors may be abnormal)
AssessmentClass label(const BandedObservation& obs);

// Exhaustive lexicographic enumeration of all 108 band combinations.
std::vector<BandedObservation> all_combinations();

// CSV with columns rule_id,air_temp,humidity,wound_temp,spo2,class.
std::string rules_to_csv(const RuleTable& table);
RuleTable rules_from_csv(const std::string& csv);

}  // namespace woundassess
