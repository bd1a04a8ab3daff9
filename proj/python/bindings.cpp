#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "woundassess/csv_io.hpp"
#include "woundassess/datagen.hpp"
#include "woundassess/eval.hpp"
#include "woundassess/preprocess.hpp"
#include "woundassess/rules.hpp"
#include "woundassess/tree.hpp"

namespace py = pybind11;
using namespace woundassess;

PYBIND11_MODULE(_core, m) {
  m.doc() = "wound status assessment: clinical banding, rule labels, ID3 tree, metrics";

  py::register_exception<InvalidReading>(m, "InvalidReading", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InfeasibleSpec>(m, "InfeasibleSpec", PyExc_ValueError);

  py::enum_<WoundTempBand>(m, "WoundTempBand")
      .value("Hypothermia", WoundTempBand::Hypothermia)
      .value("Normal", WoundTempBand::Normal)
      .value("Hyperthermia", WoundTempBand::Hyperthermia)
      .value("Hyperpyrexia", WoundTempBand::Hyperpyrexia);
  py::enum_<AirTempBand>(m, "AirTempBand")
      .value("Low", AirTempBand::Low)
      .value("Normal", AirTempBand::Normal)
      .value("High", AirTempBand::High);
  py::enum_<HumidityBand>(m, "HumidityBand")
      .value("Dry", HumidityBand::Dry)
      .value("Normal", HumidityBand::Normal)
      .value("Wet", HumidityBand::Wet);
  py::enum_<OxygenBand>(m, "OxygenBand")
      .value("Hypoxemia", OxygenBand::Hypoxemia)
      .value("Normal", OxygenBand::Normal)
      .value("Higher", OxygenBand::Higher);
  py::enum_<AssessmentClass>(m, "AssessmentClass")
      .value("Good", AssessmentClass::Good)
      .value("Satisfactory", AssessmentClass::Satisfactory)
      .value("Alarming", AssessmentClass::Alarming);
  py::enum_<FeatureId>(m, "FeatureId")
      .value("WoundTemp", FeatureId::WoundTemp)
      .value("AirTemp", FeatureId::AirTemp)
      .value("Humidity", FeatureId::Humidity)
      .value("SpO2", FeatureId::SpO2);

  m.def("class_code", &class_code);
  m.def("class_from_code", &class_from_code);
  m.def("severity", &severity);

  py::class_<SensorReading>(m, "SensorReading")
      .def(py::init<>())
      .def(py::init([](std::int64_t ts, double body, double air, double hum, double spo2,
                       std::optional<int> case_id) {
             return SensorReading{ts, body, air, hum, spo2, case_id};
           }),
           py::arg("timestamp"), py::arg("body_temp_c"), py::arg("air_temp_c"),
           py::arg("humidity_pct"), py::arg("spo2_pct"), py::arg("case_id") = std::nullopt)
      .def_readwrite("timestamp", &SensorReading::timestamp)
      .def_readwrite("body_temp_c", &SensorReading::body_temp_c)
      .def_readwrite("air_temp_c", &SensorReading::air_temp_c)
      .def_readwrite("humidity_pct", &SensorReading::humidity_pct)
      .def_readwrite("spo2_pct", &SensorReading::spo2_pct)
      .def_readwrite("case_id", &SensorReading::case_id);

  py::class_<BandedObservation>(m, "BandedObservation")
      .def(py::init<>())
      .def(py::init<WoundTempBand, AirTempBand, HumidityBand, OxygenBand>(),
           py::arg("wound_temp"), py::arg("air_temp"), py::arg("humidity"), py::arg("spo2"))
      .def_readwrite("wound_temp", &BandedObservation::wound_temp)
      .def_readwrite("air_temp", &BandedObservation::air_temp)
      .def_readwrite("humidity", &BandedObservation::humidity)
      .def_readwrite("spo2", &BandedObservation::spo2)
      .def(py::self == py::self)
      .def("__repr__", [](const BandedObservation& o) {
        return "BandedObservation(" + std::string(to_string(o.wound_temp)) + ", " +
               std::string(to_string(o.air_temp)) + ", " + std::string(to_string(o.humidity)) +
               ", " + std::string(to_string(o.spo2)) + ")";
      });

  py::class_<BandConfig>(m, "BandConfig")
      .def(py::init<>())
      .def_readwrite("body_hypothermia_below", &BandConfig::body_hypothermia_below)
      .def_readwrite("body_hyperthermia_above", &BandConfig::body_hyperthermia_above)
      .def_readwrite("body_hyperpyrexia_above", &BandConfig::body_hyperpyrexia_above)
      .def_readwrite("air_low_below", &BandConfig::air_low_below)
      .def_readwrite("air_high_above", &BandConfig::air_high_above)
      .def_readwrite("humidity_dry_below", &BandConfig::humidity_dry_below)
      .def_readwrite("humidity_wet_from", &BandConfig::humidity_wet_from)
      .def_readwrite("spo2_hypoxemia_below", &BandConfig::spo2_hypoxemia_below)
      .def_readwrite("spo2_higher_above", &BandConfig::spo2_higher_above)
      .def("validate", &BandConfig::validate)
      .def_static("load", &BandConfig::load)
      .def("to_text", &BandConfig::to_text);

  m.def("band_body_temp", &band_body_temp, py::arg("celsius"), py::arg("cfg") = BandConfig{});
  m.def("band_air_temp", &band_air_temp, py::arg("celsius"), py::arg("cfg") = BandConfig{});
  m.def("band_humidity", &band_humidity, py::arg("pct"), py::arg("cfg") = BandConfig{});
  m.def("band_spo2", &band_spo2, py::arg("pct"), py::arg("cfg") = BandConfig{});
  m.def("band_reading", &band_reading, py::arg("reading"), py::arg("cfg") = BandConfig{});
  m.def("is_valid_reading", &is_valid_reading);
  m.def("validate_reading", &validate_reading);

  py::class_<Rule>(m, "Rule")
      .def_readonly("id", &Rule::id)
      .def_readonly("air_temp", &Rule::air_temp)
      .def_readonly("humidity", &Rule::humidity)
      .def_readonly("wound_temp", &Rule::wound_temp)
      .def_readonly("spo2", &Rule::spo2)
      .def_readonly("assessment", &Rule::assessment)
      .def("matches", &Rule::matches);

  m.def("rule_table", &rule_table, py::return_value_policy::reference);
  m.def("lookup_rule", &lookup_rule);
  m.def("label", &label);
  m.def("all_combinations", &all_combinations);
  m.def("rules_to_csv", &rules_to_csv);
  m.def("rules_from_csv", &rules_from_csv);

  py::class_<ClassCounts>(m, "ClassCounts")
      .def(py::init<>())
      .def(py::init<std::uint64_t, std::uint64_t, std::uint64_t>(), py::arg("good"),
           py::arg("satisfactory"), py::arg("alarming"))
      .def_readwrite("n", &ClassCounts::n)
      .def("total", &ClassCounts::total)
      .def("majority", &ClassCounts::majority);

  py::class_<LabeledRow>(m, "LabeledRow")
      .def_readwrite("bands", &LabeledRow::bands)
      .def_readwrite("assessment", &LabeledRow::assessment);

  py::class_<LabeledDataset>(m, "LabeledDataset")
      .def(py::init<>())
      .def("add", &LabeledDataset::add)
      .def("__len__", &LabeledDataset::size)
      .def_readonly("rows", &LabeledDataset::rows)
      .def_readonly("class_counts", &LabeledDataset::class_counts);

  m.def("exhaustive_dataset", &exhaustive_dataset);

  py::class_<InductionConfig>(m, "InductionConfig")
      .def(py::init<>())
      .def_readwrite("max_depth", &InductionConfig::max_depth)
      .def_readwrite("min_gain", &InductionConfig::min_gain);

  py::class_<DecisionTree>(m, "DecisionTree")
      .def("depth", &DecisionTree::depth)
      .def_readonly("config", &DecisionTree::config);

  m.def("entropy", &entropy);
  m.def("max_entropy", &max_entropy);
  m.def("conditional_entropy", &conditional_entropy);
  m.def("information_gain", &information_gain);
  m.def("induce", &induce, py::arg("dataset"), py::arg("config") = InductionConfig{});
  m.def("predict", &predict);
  m.def("predict_proba", &predict_proba);
  m.def("render", &render);
  m.def("serialize", &serialize);
  m.def("deserialize", &deserialize);
  m.def("save_tree", &save_tree);
  m.def("load_tree", &load_tree);
  m.def("tree_equal", &tree_equal);

  py::class_<NormalizationParams>(m, "NormalizationParams")
      .def(py::init<>())
      .def(py::init([](double lo, double hi, double new_lo, double new_hi) {
             return NormalizationParams{lo, hi, new_lo, new_hi};
           }),
           py::arg("min"), py::arg("max"), py::arg("new_min") = 0.0, py::arg("new_max") = 1.0)
      .def_readwrite("min", &NormalizationParams::min)
      .def_readwrite("max", &NormalizationParams::max)
      .def_readwrite("new_min", &NormalizationParams::new_min)
      .def_readwrite("new_max", &NormalizationParams::new_max);

  m.def("fit_min_max", [](const std::vector<double>& column) {
    return fit_min_max(std::span<const double>(column));
  });
  m.def("min_max_normalize", &min_max_normalize);
  m.def("min_max_denormalize", &min_max_denormalize);
  m.def("sample_indices", &sample_indices);
  m.def("random_sample",
        [](const LabeledDataset& ds, std::size_t n, std::uint64_t seed) {
          return random_sample(ds, n, seed);
        });

  py::class_<CaseProfile>(m, "CaseProfile")
      .def(py::init<>())
      .def_readwrite("case_id", &CaseProfile::case_id)
      .def_readwrite("body_temp_c", &CaseProfile::body_temp_c)
      .def_readwrite("air_temp_c", &CaseProfile::air_temp_c)
      .def_readwrite("humidity_pct", &CaseProfile::humidity_pct)
      .def_readwrite("spo2_pct", &CaseProfile::spo2_pct)
      .def_readwrite("body_jitter", &CaseProfile::body_jitter)
      .def_readwrite("air_jitter", &CaseProfile::air_jitter)
      .def_readwrite("humidity_jitter", &CaseProfile::humidity_jitter)
      .def_readwrite("spo2_jitter", &CaseProfile::spo2_jitter)
      .def_readwrite("interval_s", &CaseProfile::interval_s)
      .def_readwrite("start_time", &CaseProfile::start_time);

  m.def("case_fixtures", &case_fixtures,
        "the 25 benchmark readings (5 cases x 5 rows)");
  m.def("default_case_profiles", &default_case_profiles);
  m.def("simulate_patient", &simulate_patient);

  py::class_<DatasetSpec>(m, "DatasetSpec")
      .def(py::init<>())
      .def_readwrite("total", &DatasetSpec::total)
      .def_readwrite("class_totals", &DatasetSpec::class_totals)
      .def_readwrite("marginals", &DatasetSpec::marginals)
      .def_readwrite("noise_rate", &DatasetSpec::noise_rate)
      .def_readwrite("seed", &DatasetSpec::seed)
      .def("validate", &DatasetSpec::validate);

  m.def("reference_training_spec", &reference_training_spec);
  m.def("generate_dataset", &generate_dataset);

  py::class_<LabeledReading>(m, "LabeledReading")
      .def_readwrite("reading", &LabeledReading::reading)
      .def_readwrite("assessment", &LabeledReading::assessment);

  m.def("materialize_readings", &materialize_readings);

  py::class_<MarginalDeviation>(m, "MarginalDeviation")
      .def_readonly("feature", &MarginalDeviation::feature)
      .def_readonly("value", &MarginalDeviation::value)
      .def_readonly("assessment", &MarginalDeviation::assessment)
      .def_readonly("target", &MarginalDeviation::target)
      .def_readonly("generated", &MarginalDeviation::generated);

  m.def("marginal_deviations", &marginal_deviations);

  py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
      .def(py::init<>())
      .def_readwrite("m", &ConfusionMatrix::m)
      .def("total", &ConfusionMatrix::total)
      .def("trace", &ConfusionMatrix::trace)
      .def("row_sum", &ConfusionMatrix::row_sum)
      .def("col_sum", &ConfusionMatrix::col_sum);

  m.def("confusion", [](const std::vector<AssessmentClass>& truth,
                        const std::vector<AssessmentClass>& predicted) {
    return confusion(truth, predicted);
  });
  m.def("accuracy", &accuracy);

  py::class_<BatchOutcome>(m, "BatchOutcome")
      .def(py::init<>())
      .def(py::init([](std::uint64_t tp, std::uint64_t np, std::uint64_t cp, std::uint64_t wp) {
             return BatchOutcome{tp, np, cp, wp};
           }),
           py::arg("total_predicted"), py::arg("not_predicted"),
           py::arg("correctly_predicted"), py::arg("wrongly_predicted"))
      .def_readwrite("total_predicted", &BatchOutcome::total_predicted)
      .def_readwrite("not_predicted", &BatchOutcome::not_predicted)
      .def_readwrite("correctly_predicted", &BatchOutcome::correctly_predicted)
      .def_readwrite("wrongly_predicted", &BatchOutcome::wrongly_predicted);

  py::class_<BatchMetrics>(m, "BatchMetrics")
      .def_readonly("precision", &BatchMetrics::precision)
      .def_readonly("recall", &BatchMetrics::recall);

  m.def("batch_metrics", &batch_metrics);
  m.def("report_percent", &report_percent);

  py::class_<ClassMetrics>(m, "ClassMetrics")
      .def_readonly("precision", &ClassMetrics::precision)
      .def_readonly("recall", &ClassMetrics::recall);

  m.def("per_class_precision_recall", &per_class_precision_recall);

  py::class_<RocPoint>(m, "RocPoint")
      .def_readonly("threshold", &RocPoint::threshold)
      .def_readonly("fpr", &RocPoint::fpr)
      .def_readonly("tpr", &RocPoint::tpr);

  py::class_<RocCurve>(m, "RocCurve")
      .def_readonly("positive", &RocCurve::positive)
      .def_readonly("points", &RocCurve::points)
      .def_readonly("auc", &RocCurve::auc);

  m.def("roc_one_vs_rest",
        [](const std::vector<std::array<double, 3>>& scores,
           const std::vector<AssessmentClass>& truth, AssessmentClass positive) {
          return roc_one_vs_rest(scores, truth, positive);
        });
  m.def("macro_auc", [](const std::vector<std::array<double, 3>>& scores,
                        const std::vector<AssessmentClass>& truth) {
    return macro_auc(scores, truth);
  });

  py::class_<ScatterRow>(m, "ScatterRow")
      .def_readonly("x", &ScatterRow::x)
      .def_readonly("y", &ScatterRow::y)
      .def_readonly("truth", &ScatterRow::truth)
      .def_readonly("correct", &ScatterRow::correct);

  m.def("scatter_export",
        [](const std::vector<SensorReading>& readings,
           const std::vector<AssessmentClass>& truth,
           const std::vector<AssessmentClass>& predicted, FeatureId x, FeatureId y) {
          return scatter_export(readings, truth, predicted, x, y);
        });

  m.def("readings_to_csv", &readings_to_csv);
  m.def("labeled_readings_to_csv", &labeled_readings_to_csv);
  m.def("banded_dataset_to_csv", &banded_dataset_to_csv);
  m.def("banded_dataset_from_csv", &banded_dataset_from_csv);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
