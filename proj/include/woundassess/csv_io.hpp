#pragma once

#include <optional>
#include <string>
#include <vector>

#include "woundassess/bands.hpp"
#include "woundassess/datagen.hpp"
#include "woundassess/eval.hpp"
#include "woundassess/tree.hpp"

namespace woundassess {

// Write content to path via a temp file + rename, so readers never see a
// partial file.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// Raw dataset CSV. Header:
//   [case_id,]timestamp,body_temp_c,air_temp_c,humidity_pct,spo2_pct[,label]
// label is the numeric class code (1 / 0 / -1). The case_id column is
// included when any row carries one.
std::string readings_to_csv(const std::vector<SensorReading>& readings);
std::string labeled_readings_to_csv(const std::vector<LabeledReading>& rows);

struct CsvReading {
  SensorReading reading;
  std::optional<AssessmentClass> assessment;
};

// Parses either header variant. Throws ParseError naming the 1-based line
// number on malformed rows.
std::vector<CsvReading> readings_from_csv(const std::string& csv);

// Band-level dataset CSV. Header: wound_temp,air_temp,humidity,spo2,label
// with band names as values.
std::string banded_dataset_to_csv(const LabeledDataset& ds);
LabeledDataset banded_dataset_from_csv(const std::string& csv);

// True iff the CSV's first line is the band-level header.
bool is_banded_csv(const std::string& csv);

std::string scatter_to_csv(const std::vector<ScatterRow>& rows);

}  // namespace woundassess
