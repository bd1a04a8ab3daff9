#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "woundassess/bands.hpp"

namespace woundassess {

// Per-class instance counts, indexed by class_index (Good, Satisfactory,
// Alarming). Houses the p_i = count_i / total probabilities.
struct ClassCounts {
  std::array<std::uint64_t, 3> n{0, 0, 0};

  ClassCounts() = default;
  ClassCounts(std::uint64_t good, std::uint64_t satisfactory, std::uint64_t alarming)
      : n{good, satisfactory, alarming} {}

  std::uint64_t total() const { return n[0] + n[1] + n[2]; }
  std::uint64_t operator[](AssessmentClass c) const { return n[class_index(c)]; }
  void add(AssessmentClass c, std::uint64_t k = 1) { n[class_index(c)] += k; }

  // Majority class; ties break toward the more severe class.
  AssessmentClass majority() const;

  bool operator==(const ClassCounts&) const = default;
};

// The four predictor features, in declared (tie-breaking) order.
enum class FeatureId { WoundTemp, AirTemp, Humidity, SpO2 };

inline constexpr std::array<FeatureId, 4> kAllFeatures = {
    FeatureId::WoundTemp, FeatureId::AirTemp, FeatureId::Humidity, FeatureId::SpO2};

// Number of band values a feature can take.
constexpr int feature_cardinality(FeatureId f) {
  return f == FeatureId::WoundTemp ? 4 : 3;
}

// Band value of an observation as a dense index along the feature's ladder.
int feature_value(const BandedObservation& obs, FeatureId f);

std::string_view to_string(FeatureId f);
FeatureId feature_from_string(std::string_view s);

// Band name for a (feature, value-index) pair, e.g. (WoundTemp, 0) -> "Hypothermia".
std::string_view band_value_name(FeatureId f, int value);
int band_value_from_name(FeatureId f, std::string_view name);

struct LabeledRow {
  BandedObservation bands;
  AssessmentClass assessment = AssessmentClass::Good;

  bool operator==(const LabeledRow&) const = default;
};

// Labeled collection of banded observations.
struct LabeledDataset {
  std::vector<LabeledRow> rows;
  ClassCounts class_counts;

  void add(const BandedObservation& obs, AssessmentClass c) {
    rows.push_back({obs, c});
    class_counts.add(c);
  }
  bool empty() const { return rows.empty(); }
  std::size_t size() const { return rows.size(); }
};

// Build the 108-row dataset labeling every band combination with label().
LabeledDataset exhaustive_dataset();

struct InductionConfig {
  std::optional<int> max_depth;  // unlimited when unset
  double min_gain = 0.0;         // bits

  bool operator==(const InductionConfig&) const = default;
};

// Tree node: a leaf when split is unset, otherwise an internal node testing
// `split` with one child per band value seen in training. Every node keeps
// its training class counts; `majority` is the prediction fallback when a
// band value has no child branch.
struct TreeNode {
  ClassCounts counts;
  AssessmentClass majority = AssessmentClass::Good;
  std::optional<FeatureId> split;
  std::map<int, std::unique_ptr<TreeNode>> children;  // band value -> child

  bool is_leaf() const { return !split.has_value(); }
};

struct DecisionTree {
  std::unique_ptr<TreeNode> root;
  InductionConfig config;

  int depth() const;
};

bool tree_equal(const DecisionTree& a, const DecisionTree& b);

// Shannon entropy of a class distribution, in bits. 0*log2(0) == 0; empty
// and pure distributions both give 0.
double entropy(const ClassCounts& counts);

// Entropy ceiling log2(k) for k classes. k must be >= 1.
double max_entropy(int k);

// Weighted average entropy of the dataset partitioned by feature f.
double conditional_entropy(const LabeledDataset& ds, FeatureId f);

// entropy(ds) - conditional_entropy(ds, f); non-negative up to float noise.
double information_gain(const LabeledDataset& ds, FeatureId f);

// Top-down induction: at each node split on the unused feature with maximum
// information gain (ties to the lower FeatureId); stop on purity, feature
// exhaustion, gain below min_gain, or max_depth.
DecisionTree induce(const LabeledDataset& ds, const InductionConfig& cfg = {});

AssessmentClass predict(const DecisionTree& tree, const BandedObservation& obs);

// Leaf class counts normalized to probabilities (class_index order). A leaf
// with zero total yields the uniform distribution.
std::array<double, 3> predict_proba(const DecisionTree& tree, const BandedObservation& obs);

// Deterministic indented text diagram, one line per node.
std::string render(const DecisionTree& tree);

// JSON document with stable field names: feature, children, class, counts.
std::string serialize(const DecisionTree& tree);
DecisionTree deserialize(const std::string& document);

void save_tree(const DecisionTree& tree, const std::string& path);
DecisionTree load_tree(const std::string& path);

}  // namespace woundassess
