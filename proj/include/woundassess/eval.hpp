#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "woundassess/bands.hpp"
#include "woundassess/tree.hpp"

namespace woundassess {

// 3x3 counts, rows = true class, columns = predicted class (class_index order).
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, 3>, 3> m{};

  std::uint64_t& at(AssessmentClass truth, AssessmentClass predicted) {
    return m[class_index(truth)][class_index(predicted)];
  }
  std::uint64_t at(AssessmentClass truth, AssessmentClass predicted) const {
    return m[class_index(truth)][class_index(predicted)];
  }
  std::uint64_t row_sum(int i) const { return m[i][0] + m[i][1] + m[i][2]; }
  std::uint64_t col_sum(int j) const { return m[0][j] + m[1][j] + m[2][j]; }
  std::uint64_t total() const { return row_sum(0) + row_sum(1) + row_sum(2); }
  std::uint64_t trace() const { return m[0][0] + m[1][1] + m[2][2]; }
};

ConfusionMatrix confusion(std::span<const AssessmentClass> truth,
                          std::span<const AssessmentClass> predicted);

double accuracy(const ConfusionMatrix& cm);

// Batch prediction outcome in the prediction-report sense: total_predicted
// counts every row that reached a verdict, not_predicted the rows rejected
// before prediction (invalid readings).
struct BatchOutcome {
  std::uint64_t total_predicted = 0;
  std::uint64_t not_predicted = 0;
  std::uint64_t correctly_predicted = 0;
  std::uint64_t wrongly_predicted = 0;
};

struct BatchMetrics {
  std::optional<double> precision;  // TP / (TP + WP)
  std::optional<double> recall;     // TP / (TP + NP)
};

BatchMetrics batch_metrics(const BatchOutcome& outcome);

// Percent as printed in prediction reports: truncated, not rounded.
int report_percent(double fraction);

struct ClassMetrics {
  std::optional<double> precision;
  std::optional<double> recall;
};

// Standard one-vs-rest precision/recall per class; nullopt on zero denominators.
std::array<ClassMetrics, 3> per_class_precision_recall(const ConfusionMatrix& cm);

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  AssessmentClass positive = AssessmentClass::Good;
  std::vector<RocPoint> points;  // fpr-monotone, from (0,0) to (1,1)
  std::optional<double> auc;     // nullopt when truth has a single class
};

// One-vs-rest ROC by threshold sweep over the positive-class scores; AUC by
// trapezoidal integration.
RocCurve roc_one_vs_rest(std::span<const std::array<double, 3>> scores,
                         std::span<const AssessmentClass> truth,
                         AssessmentClass positive);

// Mean of the defined one-vs-rest AUCs; nullopt when none is defined.
std::optional<double> macro_auc(std::span<const std::array<double, 3>> scores,
                                std::span<const AssessmentClass> truth);

struct ScatterRow {
  double x = 0.0;
  double y = 0.0;
  AssessmentClass truth = AssessmentClass::Good;
  bool correct = false;
};

// Plot-ready (x, y, true class, correct?) rows; x/y pick raw reading columns.
std::vector<ScatterRow> scatter_export(std::span<const SensorReading> readings,
                                       std::span<const AssessmentClass> truth,
                                       std::span<const AssessmentClass> predicted,
                                       FeatureId x_feature, FeatureId y_feature);

double reading_column(const SensorReading& r, FeatureId f);

}  // namespace woundassess
