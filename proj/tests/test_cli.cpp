#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "woundassess/csv_io.hpp"
#include "woundassess/datagen.hpp"
#include "woundassess/rules.hpp"

using namespace woundassess;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(WOUNDASSESS_CLI) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[512];
  while (fgets(buf, sizeof(buf), pipe)) result.output += buf;
  const int status = pclose(pipe);
  result.exit_code = WEXITSTATUS(status);
  return result;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("woundassess_cli_test_" + std::to_string(getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string grep_line(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find(needle) != std::string::npos) return line;
  }
  return {};
}

}  // namespace

TEST_CASE("gen-data: defaults, determinism, empty dataset") {
  TempDir dir;
  const std::string a = dir.file("a.csv");
  const std::string b = dir.file("b.csv");

  RunResult r1 = run("gen-data --seed 11 --output " + a);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("rows: 650") != std::string::npos);
  CHECK(r1.output.find("class totals: Good 172, Satisfactory 84, Alarming 394") !=
        std::string::npos);

  RunResult r2 = run("gen-data --seed 11 --output " + b);
  CHECK(r2.exit_code == 0);
  CHECK(read_file(a) == read_file(b));  // byte-identical for the same seed

  RunResult r3 = run("gen-data --seed 12 --output " + b);
  CHECK(r3.exit_code == 0);
  CHECK(read_file(a) != read_file(b));

  RunResult r0 = run("gen-data --total 0 --output " + dir.file("empty.csv"));
  CHECK(r0.exit_code == 0);
  CHECK(read_file(dir.file("empty.csv")) ==
        "timestamp,body_temp_c,air_temp_c,humidity_pct,spo2_pct,label\n");
}

TEST_CASE("pipeline closure: train accuracy equals evaluate accuracy on the same file") {
  TempDir dir;
  const std::string data = dir.file("data.csv");
  const std::string tree = dir.file("tree.json");

  REQUIRE(run("gen-data --seed 4 --output " + data).exit_code == 0);
  RunResult train = run("train --input " + data + " --output " + tree);
  REQUIRE(train.exit_code == 0);
  CHECK(train.output.find("root split: WoundTemp") != std::string::npos);
  const std::string train_acc = grep_line(train.output, "training accuracy:");
  REQUIRE_FALSE(train_acc.empty());
  CHECK(train_acc.find("1.000000") != std::string::npos);  // noise-free data

  RunResult eval = run("evaluate --tree " + tree + " --input " + data);
  REQUIRE(eval.exit_code == 0);
  const std::string eval_acc = grep_line(eval.output, "accuracy:");
  CHECK(eval_acc.substr(eval_acc.find("accuracy:")) ==
        train_acc.substr(train_acc.find("accuracy:")));
}

TEST_CASE("train on the band-level exhaustive dataset reports full accuracy") {
  TempDir dir;
  const std::string data = dir.file("bands.csv");
  atomic_write_file(data, banded_dataset_to_csv(exhaustive_dataset()));
  RunResult train = run("train --render --input " + data + " --output " + dir.file("t.json"));
  REQUIRE(train.exit_code == 0);
  CHECK(train.output.find("trained on 108 rows") != std::string::npos);
  CHECK(train.output.find("root split: WoundTemp") != std::string::npos);
  CHECK(train.output.find("training accuracy: 1.000000") != std::string::npos);
  CHECK(train.output.find("split WoundTemp") != std::string::npos);
  CHECK(train.output.find("Hyperpyrexia -> Alarming") != std::string::npos);
}

TEST_CASE("train reports csv faults with line numbers and rejects empty input") {
  TempDir dir;
  const std::string bad = dir.file("bad.csv");
  atomic_write_file(bad,
                    "timestamp,body_temp_c,air_temp_c,humidity_pct,spo2_pct,label\n"
                    "0,36.0,22.0,40.0,97.0,1\n"
                    "60,36.0,22.0,40.0,nope,1\n");
  RunResult r = run("train --input " + bad);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error:") != std::string::npos);
  CHECK(r.output.find("line 3") != std::string::npos);

  const std::string empty = dir.file("empty.csv");
  atomic_write_file(empty, "timestamp,body_temp_c,air_temp_c,humidity_pct,spo2_pct,label\n");
  RunResult e = run("train --input " + empty);
  CHECK(e.exit_code == 1);
  CHECK(e.output.find("error:") != std::string::npos);
}

TEST_CASE("training on a single row writes a single-leaf tree document") {
  TempDir dir;
  const std::string one = dir.file("one.csv");
  atomic_write_file(one,
                    "timestamp,body_temp_c,air_temp_c,humidity_pct,spo2_pct,label\n"
                    "0,36.0,22.0,40.0,97.0,1\n");
  const std::string tree = dir.file("one_tree.json");
  REQUIRE(run("train --input " + one + " --output " + tree).exit_code == 0);
  const std::string doc = read_file(tree);
  CHECK(doc.find("\"class\": \"Good\"") != std::string::npos);
  CHECK(doc.find("\"feature\"") == std::string::npos);
}

TEST_CASE("classify: benchmark cases get their rule-oracle verdicts") {
  TempDir dir;
  const std::string data = dir.file("data.csv");
  const std::string tree = dir.file("tree.json");
  atomic_write_file(data, banded_dataset_to_csv(exhaustive_dataset()));
  REQUIRE(run("train --input " + data + " --output " + tree).exit_code == 0);

  // Case 1 rows are all Good, case 4 rows all Satisfactory.
  std::vector<SensorReading> case1;
  std::vector<SensorReading> case4;
  for (const SensorReading& r : case_fixtures()) {
    if (r.case_id == 1) case1.push_back(r);
    if (r.case_id == 4) case4.push_back(r);
  }
  atomic_write_file(dir.file("case1.csv"), readings_to_csv(case1));
  atomic_write_file(dir.file("case4.csv"), readings_to_csv(case4));

  RunResult r1 = run("classify --tree " + tree + " --input " + dir.file("case1.csv") +
                     " --output -");
  CHECK(r1.exit_code == 0);
  std::istringstream lines1(r1.output);
  std::string line;
  std::getline(lines1, line);  // header
  int good_rows = 0;
  while (std::getline(lines1, line)) {
    if (line.find(",Good,1,") != std::string::npos) ++good_rows;
  }
  CHECK(good_rows == 5);

  RunResult r4 = run("classify --tree " + tree + " --input " + dir.file("case4.csv") +
                     " --output -");
  CHECK(r4.exit_code == 0);
  std::istringstream lines4(r4.output);
  std::getline(lines4, line);
  int satisfactory_rows = 0;
  while (std::getline(lines4, line)) {
    if (line.find(",Satisfactory,0,") != std::string::npos) ++satisfactory_rows;
  }
  CHECK(satisfactory_rows == 5);

  // Single-reading flags.
  RunResult single = run("classify --tree " + tree +
                         " --body-temp 39 --air-temp 23 --humidity 20 --spo2 90");
  CHECK(single.exit_code == 0);
  CHECK(single.output.find("Satisfactory") != std::string::npos);

  // An invalid reading is marked not_predicted, not fatal.
  atomic_write_file(dir.file("invalid.csv"),
                    "timestamp,body_temp_c,air_temp_c,humidity_pct,spo2_pct\n"
                    "0,36.0,22.0,-1.0,97.0\n");
  RunResult inv = run("classify --tree " + tree + " --input " + dir.file("invalid.csv") +
                      " --output -");
  CHECK(inv.exit_code == 0);
  CHECK(inv.output.find("not_predicted") != std::string::npos);

  RunResult no_tree = run("classify --tree " + dir.file("missing.json") + " --body-temp 36 "
                          "--air-temp 20 --humidity 50 --spo2 97");
  CHECK(no_tree.exit_code != 0);
}

TEST_CASE("simulate: row counts, zero jitter, reproducibility") {
  TempDir dir;
  RunResult r = run("simulate --cases 5 --per-case 150 --seed 2 --output " + dir.file("s.csv"));
  CHECK(r.exit_code == 0);
  const auto rows = readings_from_csv(read_file(dir.file("s.csv")));
  CHECK(rows.size() == 750);

  RunResult flat = run("simulate --cases 1 --per-case 10 --jitter 0 --output " +
                       dir.file("flat.csv"));
  CHECK(flat.exit_code == 0);
  const auto flat_rows = readings_from_csv(read_file(dir.file("flat.csv")));
  REQUIRE(flat_rows.size() == 10);
  for (const CsvReading& row : flat_rows) {
    CHECK(row.reading.body_temp_c == flat_rows[0].reading.body_temp_c);
    CHECK(row.reading.spo2_pct == flat_rows[0].reading.spo2_pct);
  }

  REQUIRE(run("simulate --seed 5 --per-case 20 --output " + dir.file("x.csv")).exit_code == 0);
  REQUIRE(run("simulate --seed 5 --per-case 20 --output " + dir.file("y.csv")).exit_code == 0);
  CHECK(read_file(dir.file("x.csv")) == read_file(dir.file("y.csv")));
}

TEST_CASE("evaluate: per-case sampling and batch rows") {
  TempDir dir;
  const std::string tree = dir.file("tree.json");
  atomic_write_file(dir.file("bands.csv"), banded_dataset_to_csv(exhaustive_dataset()));
  REQUIRE(run("train --input " + dir.file("bands.csv") + " --output " + tree).exit_code == 0);

  // Labeled per-case file from the simulator profiles.
  std::vector<LabeledReading> labeled;
  for (const CaseProfile& p : default_case_profiles()) {
    for (const SensorReading& r : simulate_patient(p, 150, 77 + p.case_id)) {
      labeled.push_back({r, label(band_reading(r))});
    }
  }
  atomic_write_file(dir.file("labeled.csv"), labeled_readings_to_csv(labeled));

  RunResult r = run("evaluate --tree " + tree + " --input " + dir.file("labeled.csv") +
                    " --sample 50 --seed 1 --scatter " + dir.file("sc.csv") +
                    " --normalize-scatter --roc " + dir.file("roc.csv"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("evaluated rows: 250") != std::string::npos);
  for (int c = 1; c <= 5; ++c) {
    CHECK_FALSE(grep_line(r.output, "case " + std::to_string(c) + ":").empty());
  }
  CHECK(r.output.find("macro auc:") != std::string::npos);
  CHECK(r.output.find("scatter normalization:") != std::string::npos);
  CHECK(read_file(dir.file("sc.csv")).starts_with("x,y,true_class,correct\n"));
  CHECK(read_file(dir.file("roc.csv")).starts_with("class,threshold,fpr,tpr\n"));

  RunResult missing_label = run("evaluate --tree " + tree + " --input " + dir.file("bands.csv"));
  CHECK(missing_label.exit_code == 0);  // band-level input is valid for evaluate

  atomic_write_file(dir.file("unlabeled.csv"),
                    "timestamp,body_temp_c,air_temp_c,humidity_pct,spo2_pct\n"
                    "0,36.0,22.0,40.0,97.0\n");
  RunResult no_label = run("evaluate --tree " + tree + " --input " + dir.file("unlabeled.csv"));
  CHECK(no_label.exit_code == 1);
  CHECK(no_label.output.find("error:") != std::string::npos);
  CHECK(no_label.output.find("label") != std::string::npos);
}

TEST_CASE("global flags work via environment variables") {
  TempDir dir;
  const std::string cmd = std::string("WOUNDASSESS_SEED=11 WOUNDASSESS_OUTPUT=") +
                          dir.file("env.csv") + " " + WOUNDASSESS_CLI + " gen-data 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  RunResult direct = run("gen-data --seed 11 --output " + dir.file("flag.csv"));
  REQUIRE(direct.exit_code == 0);
  CHECK(read_file(dir.file("env.csv")) == read_file(dir.file("flag.csv")));
}

TEST_CASE("band config flag changes the ladders") {
  TempDir dir;
  atomic_write_file(dir.file("alt.cfg"),
                    "body_temp.hyperthermia_above=38.3\n"
                    "body_temp.hyperpyrexia_above=41.5\n");
  const std::string tree = dir.file("tree.json");
  atomic_write_file(dir.file("bands.csv"), banded_dataset_to_csv(exhaustive_dataset()));
  REQUIRE(run("train --input " + dir.file("bands.csv") + " --output " + tree).exit_code == 0);

  // 38.0 C is Hyperthermia by default but Normal under the alternate ladder.
  RunResult alt = run("classify --tree " + tree + " --band-config " + dir.file("alt.cfg") +
                      " --body-temp 38 --air-temp 20 --humidity 50 --spo2 97");
  CHECK(alt.exit_code == 0);
  CHECK(alt.output.find("Good") != std::string::npos);

  RunResult def = run("classify --tree " + tree +
                      " --body-temp 38 --air-temp 20 --humidity 50 --spo2 97");
  CHECK(def.exit_code == 0);
  CHECK(def.output.find("Satisfactory") != std::string::npos);

  RunResult bad = run("gen-data --band-config " + dir.file("nope.cfg") + " --output " +
                      dir.file("z.csv"));
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("error:") != std::string::npos);
}
