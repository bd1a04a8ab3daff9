#include "woundassess/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace woundassess {

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    if (!out.good()) throw std::runtime_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

namespace {

constexpr const char* kRawColumns = "timestamp,body_temp_c,air_temp_c,humidity_pct,spo2_pct";
constexpr const char* kBandHeader = "wound_temp,air_temp,humidity,spo2,label";

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf);
  // Trim trailing zeros but keep one decimal digit.
  auto dot = s.find('.');
  auto last = s.find_last_not_of('0');
  if (last > dot) s.erase(last + 1);
  else s.erase(dot + 2);
  return s;
}

void append_reading(std::ostringstream& out, const SensorReading& r, bool with_case) {
  if (with_case) {
    if (r.case_id.has_value()) out << *r.case_id;
    out << ',';
  }
  out << r.timestamp << ',' << format_value(r.body_temp_c) << ','
      << format_value(r.air_temp_c) << ',' << format_value(r.humidity_pct) << ','
      << format_value(r.spo2_pct);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& s, int line_no) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
}

long long parse_int(const std::string& s, int line_no) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("csv line " + std::to_string(line_no) + ": bad integer '" + s + "'");
  }
}

}  // namespace

std::string readings_to_csv(const std::vector<SensorReading>& readings) {
  bool with_case = false;
  for (const SensorReading& r : readings) with_case = with_case || r.case_id.has_value();
  std::ostringstream out;
  if (with_case) out << "case_id,";
  out << kRawColumns << "\n";
  for (const SensorReading& r : readings) {
    append_reading(out, r, with_case);
    out << "\n";
  }
  return out.str();
}

std::string labeled_readings_to_csv(const std::vector<LabeledReading>& rows) {
  bool with_case = false;
  for (const LabeledReading& r : rows) with_case = with_case || r.reading.case_id.has_value();
  std::ostringstream out;
  if (with_case) out << "case_id,";
  out << kRawColumns << ",label\n";
  for (const LabeledReading& r : rows) {
    append_reading(out, r.reading, with_case);
    out << ',' << class_code(r.assessment) << "\n";
  }
  return out.str();
}

std::vector<CsvReading> readings_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_fields(line);
  std::size_t col = 0;
  bool with_case = false;
  if (col < header.size() && header[col] == "case_id") {
    with_case = true;
    ++col;
  }
  const std::array<std::string, 5> expected = {"timestamp", "body_temp_c", "air_temp_c",
                                               "humidity_pct", "spo2_pct"};
  for (const std::string& name : expected) {
    if (col >= header.size() || header[col] != name) {
      throw ParseError("csv: expected column '" + name + "' in header");
    }
    ++col;
  }
  bool with_label = false;
  if (col < header.size() && header[col] == "label") {
    with_label = true;
    ++col;
  }
  if (col != header.size()) throw ParseError("csv: unexpected trailing columns in header");

  std::vector<CsvReading> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    const std::size_t want = 5 + (with_case ? 1 : 0) + (with_label ? 1 : 0);
    if (fields.size() != want) {
      throw ParseError("csv line " + std::to_string(line_no) + ": expected " +
                       std::to_string(want) + " fields, got " + std::to_string(fields.size()));
    }
    CsvReading row;
    std::size_t f = 0;
    if (with_case) {
      if (!fields[f].empty()) {
        row.reading.case_id = static_cast<int>(parse_int(fields[f], line_no));
      }
      ++f;
    }
    row.reading.timestamp = parse_int(fields[f++], line_no);
    row.reading.body_temp_c = parse_double(fields[f++], line_no);
    row.reading.air_temp_c = parse_double(fields[f++], line_no);
    row.reading.humidity_pct = parse_double(fields[f++], line_no);
    row.reading.spo2_pct = parse_double(fields[f++], line_no);
    if (with_label) {
      const long long code = parse_int(fields[f++], line_no);
      if (code < -1 || code > 1) {
        throw ParseError("csv line " + std::to_string(line_no) + ": bad label code " +
                         std::to_string(code));
      }
      row.assessment = class_from_code(static_cast<int>(code));
    }
    rows.push_back(row);
  }
  return rows;
}

std::string banded_dataset_to_csv(const LabeledDataset& ds) {
  std::ostringstream out;
  out << kBandHeader << "\n";
  for (const LabeledRow& row : ds.rows) {
    out << to_string(row.bands.wound_temp) << ',' << to_string(row.bands.air_temp) << ','
        << to_string(row.bands.humidity) << ',' << to_string(row.bands.spo2) << ','
        << class_code(row.assessment) << "\n";
  }
  return out.str();
}

LabeledDataset banded_dataset_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("csv: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kBandHeader) throw ParseError("csv: bad band-level header");
  LabeledDataset ds;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 5) {
      throw ParseError("csv line " + std::to_string(line_no) + ": expected 5 fields");
    }
    BandedObservation obs;
    try {
      obs.wound_temp = wound_temp_band_from_string(fields[0]);
      obs.air_temp = air_temp_band_from_string(fields[1]);
      obs.humidity = humidity_band_from_string(fields[2]);
      obs.spo2 = oxygen_band_from_string(fields[3]);
    } catch (const ParseError& e) {
      throw ParseError("csv line " + std::to_string(line_no) + ": " + e.what());
    }
    const long long code = parse_int(fields[4], line_no);
    if (code < -1 || code > 1) {
      throw ParseError("csv line " + std::to_string(line_no) + ": bad label code");
    }
    ds.add(obs, class_from_code(static_cast<int>(code)));
  }
  return ds;
}

bool is_banded_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line == kBandHeader;
}

std::string scatter_to_csv(const std::vector<ScatterRow>& rows) {
  std::ostringstream out;
  out << "x,y,true_class,correct\n";
  for (const ScatterRow& r : rows) {
    out << format_value(r.x) << ',' << format_value(r.y) << ',' << class_code(r.truth) << ','
        << (r.correct ? 1 : 0) << "\n";
  }
  return out.str();
}

}  // namespace woundassess
