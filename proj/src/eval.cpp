#include "woundassess/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace woundassess {

ConfusionMatrix confusion(std::span<const AssessmentClass> truth,
                          std::span<const AssessmentClass> predicted) {
  if (truth.size() != predicted.size()) {
    throw std::domain_error("confusion: truth and predicted lengths differ");
  }
  if (truth.empty()) throw std::domain_error("confusion: empty input");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    cm.at(truth[i], predicted[i]) += 1;
  }
  return cm;
}

double accuracy(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) throw std::domain_error("accuracy: empty matrix");
  return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

BatchMetrics batch_metrics(const BatchOutcome& outcome) {
  if (outcome.total_predicted + outcome.not_predicted == 0) {
    throw std::domain_error("batch_metrics: empty sample");
  }
  BatchMetrics m;
  const double tp = static_cast<double>(outcome.total_predicted);
  if (outcome.total_predicted + outcome.wrongly_predicted > 0) {
    m.precision = tp / static_cast<double>(outcome.total_predicted + outcome.wrongly_predicted);
  }
  if (outcome.total_predicted + outcome.not_predicted > 0) {
    m.recall = tp / static_cast<double>(outcome.total_predicted + outcome.not_predicted);
  }
  return m;
}

int report_percent(double fraction) {
  // Truncated percent, with a hair of slack for binary representation.
  return static_cast<int>(std::floor(fraction * 100.0 + 1e-9));
}

std::array<ClassMetrics, 3> per_class_precision_recall(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw std::domain_error("per_class_precision_recall: empty matrix");
  std::array<ClassMetrics, 3> out;
  for (int i = 0; i < 3; ++i) {
    const std::uint64_t col = cm.col_sum(i);
    const std::uint64_t row = cm.row_sum(i);
    if (col > 0) out[i].precision = static_cast<double>(cm.m[i][i]) / static_cast<double>(col);
    if (row > 0) out[i].recall = static_cast<double>(cm.m[i][i]) / static_cast<double>(row);
  }
  return out;
}

RocCurve roc_one_vs_rest(std::span<const std::array<double, 3>> scores,
                         std::span<const AssessmentClass> truth,
                         AssessmentClass positive) {
  if (scores.size() != truth.size()) {
    throw std::domain_error("roc_one_vs_rest: scores and truth lengths differ");
  }
  RocCurve curve;
  curve.positive = positive;

  const int pos_index = class_index(positive);
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  std::vector<std::pair<double, bool>> ranked;  // (score, is_positive)
  ranked.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool is_pos = truth[i] == positive;
    ranked.push_back({scores[i][pos_index], is_pos});
    (is_pos ? positives : negatives) += 1;
  }
  if (positives == 0 || negatives == 0) {
    return curve;  // single-class truth: curve empty, auc unset
  }

  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  double auc = 0.0;
  double prev_fpr = 0.0;
  double prev_tpr = 0.0;
  std::size_t i = 0;
  while (i < ranked.size()) {
    const double threshold = ranked[i].first;
    // Consume the whole tie group before emitting a point.
    while (i < ranked.size() && ranked[i].first == threshold) {
      (ranked[i].second ? tp : fp) += 1;
      ++i;
    }
    const double fpr = static_cast<double>(fp) / static_cast<double>(negatives);
    const double tpr = static_cast<double>(tp) / static_cast<double>(positives);
    auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
    curve.points.push_back({threshold, fpr, tpr});
    prev_fpr = fpr;
    prev_tpr = tpr;
  }
  curve.auc = auc;
  return curve;
}

std::optional<double> macro_auc(std::span<const std::array<double, 3>> scores,
                                std::span<const AssessmentClass> truth) {
  double sum = 0.0;
  int defined = 0;
  for (AssessmentClass c : kClassOrder) {
    const RocCurve curve = roc_one_vs_rest(scores, truth, c);
    if (curve.auc.has_value()) {
      sum += *curve.auc;
      ++defined;
    }
  }
  if (defined == 0) return std::nullopt;
  return sum / defined;
}

double reading_column(const SensorReading& r, FeatureId f) {
  switch (f) {
    case FeatureId::WoundTemp: return r.body_temp_c;
    case FeatureId::AirTemp: return r.air_temp_c;
    case FeatureId::Humidity: return r.humidity_pct;
    case FeatureId::SpO2: return r.spo2_pct;
  }
  return 0.0;
}

std::vector<ScatterRow> scatter_export(std::span<const SensorReading> readings,
                                       std::span<const AssessmentClass> truth,
                                       std::span<const AssessmentClass> predicted,
                                       FeatureId x_feature, FeatureId y_feature) {
  if (readings.size() != truth.size() || truth.size() != predicted.size()) {
    throw std::domain_error("scatter_export: input lengths differ");
  }
  std::vector<ScatterRow> rows;
  rows.reserve(readings.size());
  for (std::size_t i = 0; i < readings.size(); ++i) {
    rows.push_back({reading_column(readings[i], x_feature),
                    reading_column(readings[i], y_feature), truth[i],
                    truth[i] == predicted[i]});
  }
  return rows;
}

}  // namespace woundassess
