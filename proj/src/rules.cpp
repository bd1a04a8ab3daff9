#include "woundassess/rules.hpp"

#include <sstream>

#include "woundassess/tree.hpp"

namespace woundassess {

namespace {

using W = WoundTempBand;
using A = AirTempBand;
using H = HumidityBand;
using O = OxygenBand;
using C = AssessmentClass;

RuleTable build_rule_table() {
  // Columns: id, air temp, humidity, wound temp, spo2, class.
  // Rules 18 and 22 are an identical pair in the source table; both kept.
  return {
      {1, A::Normal, H::Normal, W::Normal, O::Normal, C::Good},
      {2, A::High, H::Dry, W::Normal, O::Normal, C::Good},
      {3, A::High, H::Normal, W::Normal, O::Normal, C::Good},
      {4, A::Low, H::Normal, W::Normal, O::Normal, C::Good},
      {5, A::Low, H::Wet, W::Normal, O::Normal, C::Good},
      {6, A::High, H::Dry, W::Hyperthermia, O::Normal, C::Satisfactory},
      {7, A::Low, H::Wet, W::Hyperthermia, O::Normal, C::Satisfactory},
      {8, A::Low, H::Wet, W::Hyperthermia, O::Hypoxemia, C::Satisfactory},
      {9, A::High, H::Dry, W::Normal, O::Hypoxemia, C::Satisfactory},
      {10, A::Low, H::Wet, W::Normal, O::Higher, C::Satisfactory},
      {11, A::High, H::Dry, W::Normal, O::Higher, C::Satisfactory},
      {12, A::High, H::Wet, W::Hyperpyrexia, O::Normal, C::Alarming},
      {13, A::Low, H::Dry, W::Hyperpyrexia, O::Normal, C::Alarming},
      {14, A::High, H::Wet, W::Hyperpyrexia, O::Hypoxemia, C::Alarming},
      {15, A::Low, H::Dry, W::Hyperpyrexia, O::Hypoxemia, C::Alarming},
      {16, A::High, H::Wet, W::Hyperpyrexia, O::Higher, C::Alarming},
      {17, A::Low, H::Dry, W::Hyperpyrexia, O::Higher, C::Alarming},
      {18, A::Low, H::Dry, W::Hypothermia, O::Higher, C::Alarming},
      {19, A::High, H::Wet, W::Hypothermia, O::Higher, C::Alarming},
      {20, A::High, H::Wet, W::Hypothermia, O::Hypoxemia, C::Alarming},
      {21, A::Low, H::Dry, W::Hypothermia, O::Hypoxemia, C::Alarming},
      {22, A::Low, H::Dry, W::Hypothermia, O::Higher, C::Alarming},
  };
}

}  // namespace

const RuleTable& rule_table() {
  static const RuleTable table = build_rule_table();
  return table;
}

std::optional<Rule> lookup_rule(const BandedObservation& obs) {
  for (const Rule& r : rule_table()) {
    if (r.matches(obs)) return r;
  }
  return std::nullopt;
}

AssessmentClass label(const BandedObservation& obs) {
  if (obs.wound_temp == W::Hyperpyrexia || obs.wound_temp == W::Hypothermia) {
    return C::Alarming;
  }
  if (obs.wound_temp == W::Hyperthermia || obs.spo2 != O::Normal) {
    return C::Satisfactory;
  }
  return C::Good;
}

std::vector<BandedObservation> all_combinations() {
  std::vector<BandedObservation> out;
  out.reserve(108);
  for (int w = 0; w < 4; ++w) {
    for (int a = 0; a < 3; ++a) {
      for (int h = 0; h < 3; ++h) {
        for (int s = 0; s < 3; ++s) {
          out.push_back({static_cast<W>(w), static_cast<A>(a), static_cast<H>(h),
                         static_cast<O>(s)});
        }
      }
    }
  }
  return out;
}

std::string rules_to_csv(const RuleTable& table) {
  std::ostringstream out;
  out << "rule_id,air_temp,humidity,wound_temp,spo2,class\n";
  for (const Rule& r : table) {
    out << r.id << ',' << to_string(r.air_temp) << ',' << to_string(r.humidity) << ','
        << to_string(r.wound_temp) << ',' << to_string(r.spo2) << ','
        << to_string(r.assessment) << '\n';
  }
  return out.str();
}

RuleTable rules_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "rule_id,air_temp,humidity,wound_temp,spo2,class") {
    throw ParseError("rules csv: bad header");
  }
  RuleTable table;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 6) {
      throw ParseError("rules csv line " + std::to_string(line_no) + ": expected 6 fields");
    }
    Rule r;
    try {
      r.id = std::stoi(fields[0]);
    } catch (const std::exception&) {
      throw ParseError("rules csv line " + std::to_string(line_no) + ": bad rule id");
    }
    r.air_temp = air_temp_band_from_string(fields[1]);
    r.humidity = humidity_band_from_string(fields[2]);
    r.wound_temp = wound_temp_band_from_string(fields[3]);
    r.spo2 = oxygen_band_from_string(fields[4]);
    r.assessment = assessment_class_from_string(fields[5]);
    table.push_back(r);
  }
  // No two rules may share antecedents and disagree on the class.
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = i + 1; j < table.size(); ++j) {
      const Rule& a = table[i];
      const Rule& b = table[j];
      if (a.air_temp == b.air_temp && a.humidity == b.humidity &&
          a.wound_temp == b.wound_temp && a.spo2 == b.spo2 &&
          a.assessment != b.assessment) {
        throw ParseError("rules csv: rules " + std::to_string(a.id) + " and " +
                         std::to_string(b.id) + " share antecedents but disagree");
      }
    }
  }
  return table;
}

}  // namespace woundassess
