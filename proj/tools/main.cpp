// woundassess: band vitals into clinical ranges, train an entropy-based
// decision tree on labeled readings, classify and evaluate.
//
// Subcommands: gen-data, train, classify, simulate, evaluate.
// Global flags --seed / --band-config / --output also read the environment
// variables WOUNDASSESS_SEED / WOUNDASSESS_BAND_CONFIG / WOUNDASSESS_OUTPUT.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "woundassess/csv_io.hpp"
#include "woundassess/datagen.hpp"
#include "woundassess/eval.hpp"
#include "woundassess/preprocess.hpp"
#include "woundassess/rules.hpp"
#include "woundassess/tree.hpp"

using namespace woundassess;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string band_config_path;
  std::string output;

  BandConfig band_config() const {
    return band_config_path.empty() ? BandConfig{} : BandConfig::load(band_config_path);
  }
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    atomic_write_file(path, content);
  }
}

LabeledDataset banded_from_rows(const std::vector<CsvReading>& rows, const BandConfig& cfg) {
  LabeledDataset ds;
  for (const CsvReading& row : rows) {
    if (!row.assessment.has_value()) {
      throw ParseError("dataset is missing the label column");
    }
    ds.add(band_reading(row.reading, cfg), *row.assessment);
  }
  return ds;
}

LabeledDataset load_training_csv(const std::string& path, const BandConfig& cfg) {
  const std::string text = read_file(path);
  if (is_banded_csv(text)) return banded_dataset_from_csv(text);
  return banded_from_rows(readings_from_csv(text), cfg);
}

std::string confusion_report(const ConfusionMatrix& cm) {
  std::ostringstream out;
  out << "confusion matrix (rows = true, columns = predicted):\n";
  out << "                Good  Satisfactory  Alarming\n";
  const char* names[3] = {"Good        ", "Satisfactory", "Alarming    "};
  for (int i = 0; i < 3; ++i) {
    out << names[i];
    for (int j = 0; j < 3; ++j) {
      out << "  " << std::setw(10) << cm.m[i][j];
    }
    out << "\n";
  }
  return out.str();
}

std::string per_class_report(const ConfusionMatrix& cm) {
  std::ostringstream out;
  const auto metrics = per_class_precision_recall(cm);
  out << "per-class metrics:\n";
  for (int i = 0; i < 3; ++i) {
    out << "  " << to_string(kClassOrder[i]) << ": precision ";
    out << (metrics[i].precision ? fmt(*metrics[i].precision, 4) : "undefined");
    out << ", recall ";
    out << (metrics[i].recall ? fmt(*metrics[i].recall, 4) : "undefined");
    out << "\n";
  }
  return out.str();
}

int cmd_gen_data(const GlobalOptions& global, std::size_t total, double noise, bool banded) {
  DatasetSpec spec = reference_training_spec();
  if (total != spec.total) {
    // Rescale the built-in shape to the requested size.
    DatasetSpec scaled = spec;
    scaled.total = total;
    std::uint64_t assigned = 0;
    for (int c = 0; c < 3; ++c) {
      scaled.class_totals[c] = total * spec.class_totals[c] / spec.total;
      assigned += scaled.class_totals[c];
    }
    for (int c = 0; assigned < total; ++c, ++assigned) scaled.class_totals[c % 3] += 1;
    for (std::size_t f = 0; f < scaled.marginals.size(); ++f) {
      std::array<std::uint64_t, 3> column_sums{0, 0, 0};
      for (std::size_t v = 0; v < scaled.marginals[f].size(); ++v) {
        for (int c = 0; c < 3; ++c) {
          scaled.marginals[f][v][c] =
              spec.class_totals[c] == 0
                  ? 0
                  : spec.marginals[f][v][c] * scaled.class_totals[c] / spec.class_totals[c];
          column_sums[c] += scaled.marginals[f][v][c];
        }
      }
      // Top up rounding shortfalls on the largest cell of each column.
      for (int c = 0; c < 3; ++c) {
        std::size_t biggest = 0;
        for (std::size_t v = 1; v < scaled.marginals[f].size(); ++v) {
          if (scaled.marginals[f][v][c] > scaled.marginals[f][biggest][c]) biggest = v;
        }
        scaled.marginals[f][biggest][c] += scaled.class_totals[c] - column_sums[c];
      }
    }
    spec = scaled;
  }
  spec.noise_rate = noise;
  spec.seed = global.seed;

  const LabeledDataset ds = generate_dataset(spec);
  const BandConfig cfg = global.band_config();

  if (banded) {
    emit(global.output, banded_dataset_to_csv(ds));
  } else {
    emit(global.output, labeled_readings_to_csv(materialize_readings(ds, cfg, spec.seed + 1)));
  }

  std::cout << "rows: " << ds.size() << "\n";
  std::cout << "class totals: Good " << ds.class_counts.n[0] << ", Satisfactory "
            << ds.class_counts.n[1] << ", Alarming " << ds.class_counts.n[2] << "\n";
  const auto deviations = marginal_deviations(ds, spec);
  if (deviations.empty()) {
    std::cout << "marginal deviations: none\n";
  } else {
    std::cout << "marginal deviations from spec targets (largest first):\n";
    std::size_t shown = 0;
    for (const MarginalDeviation& d : deviations) {
      if (shown++ == 8) {
        std::cout << "  ... " << deviations.size() - 8 << " more\n";
        break;
      }
      std::cout << "  " << to_string(d.feature) << "="
                << band_value_name(d.feature, d.value) << " x " << to_string(d.assessment)
                << ": target " << d.target << ", generated " << d.generated << "\n";
    }
  }
  return 0;
}

int cmd_train(const GlobalOptions& global, const std::string& input,
              std::optional<int> max_depth, double min_gain, bool show_tree) {
  const BandConfig cfg = global.band_config();
  const LabeledDataset ds = load_training_csv(input, cfg);
  if (ds.empty()) throw std::domain_error("training dataset is empty");

  InductionConfig icfg;
  icfg.max_depth = max_depth;
  icfg.min_gain = min_gain;
  const DecisionTree tree = induce(ds, icfg);

  if (!global.output.empty()) save_tree(tree, global.output);

  std::cout << "trained on " << ds.size() << " rows\n";
  std::cout << "root gains (bits):\n";
  for (FeatureId f : kAllFeatures) {
    std::cout << "  " << to_string(f) << ": " << fmt(information_gain(ds, f)) << "\n";
  }
  if (!tree.root->is_leaf()) {
    std::cout << "root split: " << to_string(*tree.root->split) << "\n";
  }

  std::vector<AssessmentClass> truth;
  std::vector<AssessmentClass> predicted;
  for (const LabeledRow& row : ds.rows) {
    truth.push_back(row.assessment);
    predicted.push_back(predict(tree, row.bands));
  }
  const ConfusionMatrix cm = confusion(truth, predicted);
  std::cout << confusion_report(cm);
  std::cout << "training accuracy: " << fmt(accuracy(cm)) << "\n";
  if (show_tree) std::cout << render(tree);
  if (!global.output.empty()) std::cout << "tree written to " << global.output << "\n";
  return 0;
}

int cmd_classify(const GlobalOptions& global, const std::string& tree_path,
                 const std::string& input, const std::vector<double>& reading_flags) {
  const DecisionTree tree = load_tree(tree_path);
  const BandConfig cfg = global.band_config();

  std::vector<SensorReading> readings;
  if (!input.empty()) {
    for (const CsvReading& row : readings_from_csv(read_file(input))) {
      readings.push_back(row.reading);
    }
  } else {
    SensorReading r;
    r.body_temp_c = reading_flags[0];
    r.air_temp_c = reading_flags[1];
    r.humidity_pct = reading_flags[2];
    r.spo2_pct = reading_flags[3];
    readings.push_back(r);
  }

  std::ostringstream out;
  out << "timestamp,wound_temp,air_temp,humidity,spo2,class,code,p_good,p_satisfactory,"
         "p_alarming\n";
  for (const SensorReading& r : readings) {
    out << r.timestamp << ',';
    if (!is_valid_reading(r)) {
      out << ",,,,not_predicted,,,,\n";
      continue;
    }
    const BandedObservation obs = band_reading(r, cfg);
    const AssessmentClass verdict = predict(tree, obs);
    const auto proba = predict_proba(tree, obs);
    out << to_string(obs.wound_temp) << ',' << to_string(obs.air_temp) << ','
        << to_string(obs.humidity) << ',' << to_string(obs.spo2) << ','
        << to_string(verdict) << ',' << class_code(verdict) << ',' << fmt(proba[0], 4)
        << ',' << fmt(proba[1], 4) << ',' << fmt(proba[2], 4) << "\n";
  }
  emit(global.output, out.str());
  return 0;
}

int cmd_simulate(const GlobalOptions& global, int cases, std::size_t per_case,
                 double jitter_scale, std::int64_t interval) {
  const auto profiles = default_case_profiles();
  if (cases < 1 || cases > static_cast<int>(profiles.size())) {
    throw std::domain_error("simulate: --cases must be between 1 and " +
                            std::to_string(profiles.size()));
  }
  std::vector<SensorReading> all;
  for (int i = 0; i < cases; ++i) {
    CaseProfile p = profiles[i];
    p.body_jitter *= jitter_scale;
    p.air_jitter *= jitter_scale;
    p.humidity_jitter *= jitter_scale;
    p.spo2_jitter *= jitter_scale;
    p.interval_s = interval;
    const auto rows = simulate_patient(p, per_case, global.seed + i);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  emit(global.output, readings_to_csv(all));
  std::cout << "simulated " << all.size() << " readings across " << cases << " case(s)\n";
  return 0;
}

int cmd_evaluate(const GlobalOptions& global, const std::string& tree_path,
                 const std::string& input, std::optional<std::size_t> sample_n,
                 const std::string& scatter_path, const std::string& roc_path,
                 const std::string& scatter_x, const std::string& scatter_y,
                 bool normalize_scatter) {
  const DecisionTree tree = load_tree(tree_path);
  const BandConfig cfg = global.band_config();
  const std::string text = read_file(input);

  if (is_banded_csv(text)) {
    // Band-level input: no raw values, no case ids; report the core metrics.
    const LabeledDataset ds = banded_dataset_from_csv(text);
    std::vector<AssessmentClass> truth;
    std::vector<AssessmentClass> predicted;
    std::vector<std::array<double, 3>> scores;
    for (const LabeledRow& r : ds.rows) {
      truth.push_back(r.assessment);
      predicted.push_back(predict(tree, r.bands));
      scores.push_back(predict_proba(tree, r.bands));
    }
    const ConfusionMatrix cm = confusion(truth, predicted);
    std::ostringstream out;
    out << confusion_report(cm);
    out << "accuracy: " << fmt(accuracy(cm)) << "\n";
    out << per_class_report(cm);
    for (AssessmentClass c : kClassOrder) {
      const RocCurve curve = roc_one_vs_rest(scores, truth, c);
      out << "auc " << to_string(c) << ": "
          << (curve.auc ? fmt(*curve.auc, 4) : "undefined") << "\n";
    }
    const auto macro = macro_auc(scores, truth);
    out << "macro auc: " << (macro ? fmt(*macro, 4) : "undefined") << "\n";
    emit(global.output, out.str());
    return 0;
  }

  struct Row {
    SensorReading reading;
    AssessmentClass truth;
  };
  std::vector<Row> rows;
  for (const CsvReading& row : readings_from_csv(text)) {
    if (!row.assessment.has_value()) {
      throw ParseError("evaluate: dataset is missing the label column");
    }
    rows.push_back({row.reading, *row.assessment});
  }

  // Per-case sampling when requested: n rows from each case id.
  if (sample_n.has_value()) {
    std::map<std::optional<int>, std::vector<std::size_t>> by_case;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      by_case[rows[i].reading.case_id].push_back(i);
    }
    std::vector<Row> sampled;
    std::uint64_t salt = 0;
    for (const auto& [case_id, indices] : by_case) {
      if (*sample_n > indices.size()) {
        throw std::domain_error("evaluate: --sample exceeds rows available in a case");
      }
      for (std::size_t k : sample_indices(indices.size(), *sample_n, global.seed + salt)) {
        sampled.push_back(rows[indices[k]]);
      }
      ++salt;
    }
    rows = std::move(sampled);
  }

  std::vector<AssessmentClass> truth;
  std::vector<AssessmentClass> predicted;
  std::vector<std::array<double, 3>> scores;
  std::vector<SensorReading> predicted_readings;
  std::map<std::optional<int>, BatchOutcome> outcomes;
  for (const Row& row : rows) {
    BatchOutcome& outcome = outcomes[row.reading.case_id];
    if (!is_valid_reading(row.reading)) {
      outcome.not_predicted += 1;
      continue;
    }
    const BandedObservation obs = band_reading(row.reading, cfg);
    const AssessmentClass verdict = predict(tree, obs);
    outcome.total_predicted += 1;
    if (verdict == row.truth) {
      outcome.correctly_predicted += 1;
    } else {
      outcome.wrongly_predicted += 1;
    }
    truth.push_back(row.truth);
    predicted.push_back(verdict);
    scores.push_back(predict_proba(tree, obs));
    predicted_readings.push_back(row.reading);
  }
  if (truth.empty()) throw std::domain_error("evaluate: no valid rows to score");

  const ConfusionMatrix cm = confusion(truth, predicted);
  std::ostringstream out;
  out << "evaluated rows: " << rows.size() << "\n";
  out << confusion_report(cm);
  out << "accuracy: " << fmt(accuracy(cm)) << "\n";
  out << per_class_report(cm);

  out << "batch outcome per case (TP/NP/CP/WP, precision, recall):\n";
  for (const auto& [case_id, outcome] : outcomes) {
    const BatchMetrics m = batch_metrics(outcome);
    out << "  case " << (case_id ? std::to_string(*case_id) : std::string("-")) << ": "
        << outcome.total_predicted << "/" << outcome.not_predicted << "/"
        << outcome.correctly_predicted << "/" << outcome.wrongly_predicted << ", "
        << (m.precision ? std::to_string(report_percent(*m.precision)) + "%" : "undefined")
        << ", "
        << (m.recall ? std::to_string(report_percent(*m.recall)) + "%" : "undefined")
        << "\n";
  }

  for (AssessmentClass c : kClassOrder) {
    const RocCurve curve = roc_one_vs_rest(scores, truth, c);
    out << "auc " << to_string(c) << ": "
        << (curve.auc ? fmt(*curve.auc, 4) : "undefined") << "\n";
  }
  const auto macro = macro_auc(scores, truth);
  out << "macro auc: " << (macro ? fmt(*macro, 4) : "undefined") << "\n";
  emit(global.output, out.str());

  if (!scatter_path.empty()) {
    auto scatter =
        scatter_export(predicted_readings, truth, predicted, feature_from_string(scatter_x),
                       feature_from_string(scatter_y));
    if (normalize_scatter && !scatter.empty()) {
      std::vector<double> xs;
      std::vector<double> ys;
      for (const ScatterRow& r : scatter) {
        xs.push_back(r.x);
        ys.push_back(r.y);
      }
      const auto [x_lo, x_hi] = fit_min_max(xs);
      const auto [y_lo, y_hi] = fit_min_max(ys);
      const NormalizationParams px{x_lo, x_hi, 0.0, 1.0};
      const NormalizationParams py{y_lo, y_hi, 0.0, 1.0};
      for (ScatterRow& r : scatter) {
        r.x = min_max_normalize(r.x, px);
        r.y = min_max_normalize(r.y, py);
      }
      std::cout << "scatter normalization: x [" << fmt(x_lo) << ", " << fmt(x_hi)
                << "] -> [0, 1], y [" << fmt(y_lo) << ", " << fmt(y_hi) << "] -> [0, 1]\n";
    }
    atomic_write_file(scatter_path, scatter_to_csv(scatter));
  }
  if (!roc_path.empty()) {
    std::ostringstream roc;
    roc << "class,threshold,fpr,tpr\n";
    for (AssessmentClass c : kClassOrder) {
      const RocCurve curve = roc_one_vs_rest(scores, truth, c);
      for (const RocPoint& p : curve.points) {
        roc << to_string(c) << ',' << fmt(p.threshold, 6) << ',' << fmt(p.fpr, 6) << ','
            << fmt(p.tpr, 6) << "\n";
      }
    }
    atomic_write_file(roc_path, roc.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wound status assessment: banding, rule labels, decision tree, metrics"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "seed for all randomized steps (default 0)")
      ->envname("WOUNDASSESS_SEED");
  app.add_option("--band-config", global.band_config_path,
                 "key=value file overriding band thresholds")
      ->envname("WOUNDASSESS_BAND_CONFIG");
  app.add_option("--output,-o", global.output, "output path ('-' for stdout)")
      ->envname("WOUNDASSESS_OUTPUT");

  auto* gen = app.add_subcommand("gen-data", "generate a labeled training dataset CSV");
  std::size_t total = 650;
  double noise = 0.0;
  bool banded = false;
  gen->add_option("--total", total, "number of rows (default 650)");
  gen->add_option("--noise", noise, "fraction of labels to flip (default 0)");
  gen->add_flag("--bands", banded, "write band names instead of raw values");

  auto* train = app.add_subcommand("train", "induce a decision tree from a dataset CSV");
  std::string train_input;
  int max_depth = -1;
  double min_gain = 0.0;
  bool show_tree = false;
  train->add_option("--input,-i", train_input, "dataset CSV (raw or band-level)")
      ->required();
  train->add_option("--max-depth", max_depth, "depth cap (-1 = unlimited)");
  train->add_option("--min-gain", min_gain, "minimum split gain in bits (default 0)");
  train->add_flag("--render", show_tree, "print the induced tree as text");

  auto* classify = app.add_subcommand("classify", "classify readings with a trained tree");
  std::string classify_tree;
  std::string classify_input;
  double body = 0, air = 0, hum = 0, spo2 = 0;
  classify->add_option("--tree,-t", classify_tree, "tree document path")->required();
  auto* clf_in = classify->add_option("--input,-i", classify_input, "readings CSV");
  auto* clf_body = classify->add_option("--body-temp", body, "single reading: body °C");
  classify->add_option("--air-temp", air, "single reading: air °C")->needs(clf_body);
  classify->add_option("--humidity", hum, "single reading: humidity %")->needs(clf_body);
  classify->add_option("--spo2", spo2, "single reading: SpO2 %")->needs(clf_body);
  clf_body->excludes(clf_in);

  auto* simulate = app.add_subcommand("simulate", "produce synthetic patient readings");
  int cases = 5;
  std::size_t per_case = 150;
  double jitter = 1.0;
  std::int64_t interval = 60;
  simulate->add_option("--cases", cases, "number of patient cases (1-5, default 5)");
  simulate->add_option("--per-case", per_case, "readings per case (default 150)");
  simulate->add_option("--jitter", jitter, "jitter scale (0 = constant columns)");
  simulate->add_option("--interval", interval, "seconds between readings (default 60)");

  auto* evaluate = app.add_subcommand("evaluate", "score a tree against labeled readings");
  std::string eval_tree;
  std::string eval_input;
  std::optional<std::size_t> sample_n;
  std::string scatter_path;
  std::string roc_path;
  std::string scatter_x = "WoundTemp";
  std::string scatter_y = "Humidity";
  evaluate->add_option("--tree,-t", eval_tree, "tree document path")->required();
  evaluate->add_option("--input,-i", eval_input, "labeled readings CSV")->required();
  evaluate->add_option("--sample", sample_n, "rows to sample per case");
  evaluate->add_option("--scatter", scatter_path, "write scatter CSV here");
  evaluate->add_option("--roc", roc_path, "write ROC curve CSV here");
  evaluate->add_option("--scatter-x", scatter_x, "x column (default WoundTemp)");
  evaluate->add_option("--scatter-y", scatter_y, "y column (default Humidity)");
  bool normalize_scatter = false;
  evaluate->add_flag("--normalize-scatter", normalize_scatter,
                     "min-max normalize scatter columns to [0, 1]");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_data(global, total, noise, banded);
    if (train->parsed()) {
      return cmd_train(global, train_input,
                       max_depth < 0 ? std::nullopt : std::optional<int>(max_depth), min_gain,
                       show_tree);
    }
    if (classify->parsed()) {
      if (classify_input.empty() && clf_body->count() == 0) {
        throw std::domain_error("classify: provide --input or --body-temp/... flags");
      }
      return cmd_classify(global, classify_tree, classify_input, {body, air, hum, spo2});
    }
    if (simulate->parsed()) {
      return cmd_simulate(global, cases, per_case, jitter, interval);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(global, eval_tree, eval_input, sample_n, scatter_path, roc_path,
                          scatter_x, scatter_y, normalize_scatter);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
