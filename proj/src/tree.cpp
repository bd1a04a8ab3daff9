#include "woundassess/tree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "woundassess/csv_io.hpp"
#include "woundassess/rules.hpp"

namespace woundassess {

using json = nlohmann::ordered_json;

AssessmentClass ClassCounts::majority() const {
  AssessmentClass best = AssessmentClass::Good;
  std::uint64_t best_n = 0;
  for (AssessmentClass c : kClassOrder) {
    std::uint64_t k = (*this)[c];
    // >= so that ties fall to the later (more severe) class
    if (k >= best_n) {
      best_n = k;
      best = c;
    }
  }
  return best;
}

int feature_value(const BandedObservation& obs, FeatureId f) {
  switch (f) {
    case FeatureId::WoundTemp: return static_cast<int>(obs.wound_temp);
    case FeatureId::AirTemp: return static_cast<int>(obs.air_temp);
    case FeatureId::Humidity: return static_cast<int>(obs.humidity);
    case FeatureId::SpO2: return static_cast<int>(obs.spo2);
  }
  return 0;
}

std::string_view to_string(FeatureId f) {
  switch (f) {
    case FeatureId::WoundTemp: return "WoundTemp";
    case FeatureId::AirTemp: return "AirTemp";
    case FeatureId::Humidity: return "Humidity";
    case FeatureId::SpO2: return "SpO2";
  }
  return "?";
}

FeatureId feature_from_string(std::string_view s) {
  if (s == "WoundTemp") return FeatureId::WoundTemp;
  if (s == "AirTemp") return FeatureId::AirTemp;
  if (s == "Humidity") return FeatureId::Humidity;
  if (s == "SpO2") return FeatureId::SpO2;
  throw ParseError("unknown feature '" + std::string(s) + "'");
}

std::string_view band_value_name(FeatureId f, int value) {
  switch (f) {
    case FeatureId::WoundTemp: return to_string(static_cast<WoundTempBand>(value));
    case FeatureId::AirTemp: return to_string(static_cast<AirTempBand>(value));
    case FeatureId::Humidity: return to_string(static_cast<HumidityBand>(value));
    case FeatureId::SpO2: return to_string(static_cast<OxygenBand>(value));
  }
  return "?";
}

int band_value_from_name(FeatureId f, std::string_view name) {
  switch (f) {
    case FeatureId::WoundTemp: return static_cast<int>(wound_temp_band_from_string(name));
    case FeatureId::AirTemp: return static_cast<int>(air_temp_band_from_string(name));
    case FeatureId::Humidity: return static_cast<int>(humidity_band_from_string(name));
    case FeatureId::SpO2: return static_cast<int>(oxygen_band_from_string(name));
  }
  throw ParseError("unknown feature");
}

LabeledDataset exhaustive_dataset() {
  LabeledDataset ds;
  for (const BandedObservation& obs : all_combinations()) {
    ds.add(obs, label(obs));
  }
  return ds;
}

double entropy(const ClassCounts& counts) {
  const double total = static_cast<double>(counts.total());
  if (total == 0.0) return 0.0;
  double h = 0.0;
  for (std::uint64_t k : counts.n) {
    if (k == 0) continue;  // 0*log2(0) == 0
    const double p = static_cast<double>(k) / total;
    h -= p * std::log2(p);
  }
  return h < 0.0 ? 0.0 : h;
}

double max_entropy(int k) {
  if (k < 1) throw std::domain_error("max_entropy: class count must be >= 1");
  return std::log2(static_cast<double>(k));
}

double conditional_entropy(const LabeledDataset& ds, FeatureId f) {
  if (ds.empty()) throw std::domain_error("conditional_entropy: empty dataset");
  std::array<ClassCounts, 4> cells{};
  for (const LabeledRow& row : ds.rows) {
    cells[feature_value(row.bands, f)].add(row.assessment);
  }
  const double total = static_cast<double>(ds.size());
  double h = 0.0;
  for (const ClassCounts& cell : cells) {
    if (cell.total() == 0) continue;
    h += static_cast<double>(cell.total()) / total * entropy(cell);
  }
  return h;
}

double information_gain(const LabeledDataset& ds, FeatureId f) {
  if (ds.empty()) throw std::domain_error("information_gain: empty dataset");
  return entropy(ds.class_counts) - conditional_entropy(ds, f);
}

namespace {

ClassCounts count_rows(const std::vector<LabeledRow>& rows) {
  ClassCounts counts;
  for (const LabeledRow& r : rows) counts.add(r.assessment);
  return counts;
}

std::unique_ptr<TreeNode> grow(const std::vector<LabeledRow>& rows,
                               std::vector<FeatureId> unused, int depth,
                               const InductionConfig& cfg) {
  auto node = std::make_unique<TreeNode>();
  node->counts = count_rows(rows);
  node->majority = node->counts.majority();

  const bool pure = node->counts[node->majority] == node->counts.total();
  const bool depth_capped = cfg.max_depth.has_value() && depth >= *cfg.max_depth;
  if (pure || unused.empty() || depth_capped) return node;

  LabeledDataset here;
  here.rows = rows;
  here.class_counts = node->counts;

  FeatureId best = unused.front();
  double best_gain = -1.0;
  for (FeatureId f : unused) {  // declared order; first max wins ties
    const double g = information_gain(here, f);
    if (g > best_gain) {
      best_gain = g;
      best = f;
    }
  }
  if (best_gain < cfg.min_gain) return node;

  std::vector<FeatureId> remaining;
  for (FeatureId f : unused) {
    if (f != best) remaining.push_back(f);
  }

  std::map<int, std::vector<LabeledRow>> partition;
  for (const LabeledRow& r : rows) {
    partition[feature_value(r.bands, best)].push_back(r);
  }

  node->split = best;
  for (auto& [value, subset] : partition) {
    node->children[value] = grow(subset, remaining, depth + 1, cfg);
  }
  return node;
}

int node_depth(const TreeNode& node) {
  int d = 0;
  for (const auto& [value, child] : node.children) {
    d = std::max(d, 1 + node_depth(*child));
  }
  return d;
}

}  // namespace

int DecisionTree::depth() const { return root ? node_depth(*root) : 0; }

DecisionTree induce(const LabeledDataset& ds, const InductionConfig& cfg) {
  if (ds.empty()) throw std::domain_error("induce: empty dataset");
  DecisionTree tree;
  tree.config = cfg;
  tree.root = grow(ds.rows, {kAllFeatures.begin(), kAllFeatures.end()}, 0, cfg);
  return tree;
}

namespace {

const TreeNode& descend(const DecisionTree& tree, const BandedObservation& obs) {
  if (!tree.root) throw std::domain_error("predict: empty tree");
  const TreeNode* node = tree.root.get();
  while (!node->is_leaf()) {
    auto it = node->children.find(feature_value(obs, *node->split));
    if (it == node->children.end()) break;  // unseen branch: answer from here
    node = it->second.get();
  }
  return *node;
}

}  // namespace

AssessmentClass predict(const DecisionTree& tree, const BandedObservation& obs) {
  return descend(tree, obs).majority;
}

std::array<double, 3> predict_proba(const DecisionTree& tree, const BandedObservation& obs) {
  const TreeNode& node = descend(tree, obs);
  const double total = static_cast<double>(node.counts.total());
  if (total == 0.0) return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return {static_cast<double>(node.counts.n[0]) / total,
          static_cast<double>(node.counts.n[1]) / total,
          static_cast<double>(node.counts.n[2]) / total};
}

namespace {

void render_counts(std::ostringstream& out, const ClassCounts& c) {
  out << "[" << c.n[0] << "/" << c.n[1] << "/" << c.n[2] << "]";
}

void render_node(std::ostringstream& out, const TreeNode& node, int indent) {
  if (node.is_leaf()) {
    out << to_string(node.majority) << " ";
    render_counts(out, node.counts);
    out << "\n";
    return;
  }
  out << "split " << to_string(*node.split) << "\n";
  for (const auto& [value, child] : node.children) {
    out << std::string(static_cast<std::size_t>(indent + 1) * 2, ' ')
        << band_value_name(*node.split, value) << " -> ";
    render_node(out, *child, indent + 1);
  }
}

}  // namespace

std::string render(const DecisionTree& tree) {
  std::ostringstream out;
  if (tree.root) render_node(out, *tree.root, 0);
  return out.str();
}

namespace {

json counts_to_json(const ClassCounts& c) {
  return json{{"good", c.n[0]}, {"satisfactory", c.n[1]}, {"alarming", c.n[2]}};
}

ClassCounts counts_from_json(const json& j) {
  if (!j.is_object() || !j.contains("good") || !j.contains("satisfactory") ||
      !j.contains("alarming")) {
    throw ParseError("tree document: counts must have good/satisfactory/alarming");
  }
  return ClassCounts(j.at("good").get<std::uint64_t>(),
                     j.at("satisfactory").get<std::uint64_t>(),
                     j.at("alarming").get<std::uint64_t>());
}

json node_to_json(const TreeNode& node) {
  json j;
  if (node.is_leaf()) {
    j["class"] = std::string(to_string(node.majority));
  } else {
    j["feature"] = std::string(to_string(*node.split));
  }
  j["counts"] = counts_to_json(node.counts);
  if (!node.is_leaf()) {
    json children = json::object();
    for (const auto& [value, child] : node.children) {
      children[std::string(band_value_name(*node.split, value))] = node_to_json(*child);
    }
    j["children"] = children;
  }
  return j;
}

std::unique_ptr<TreeNode> node_from_json(const json& j) {
  auto node = std::make_unique<TreeNode>();
  if (!j.is_object()) throw ParseError("tree document: node must be an object");
  node->counts = counts_from_json(j.at("counts"));
  node->majority = node->counts.majority();
  if (j.contains("feature")) {
    node->split = feature_from_string(j.at("feature").get<std::string>());
    if (!j.contains("children") || !j.at("children").is_object() ||
        j.at("children").empty()) {
      throw ParseError("tree document: internal node needs non-empty children");
    }
    for (const auto& [name, child] : j.at("children").items()) {
      int value = band_value_from_name(*node->split, name);
      if (node->children.count(value)) {
        throw ParseError("tree document: duplicate branch '" + name + "'");
      }
      node->children[value] = node_from_json(child);
    }
  } else if (j.contains("class")) {
    AssessmentClass stored = assessment_class_from_string(j.at("class").get<std::string>());
    if (stored != node->majority) {
      throw ParseError("tree document: leaf class does not match its counts");
    }
  } else {
    throw ParseError("tree document: node needs 'feature' or 'class'");
  }
  return node;
}

void check_no_repeat(const TreeNode& node, unsigned used) {
  if (node.is_leaf()) return;
  unsigned bit = 1u << static_cast<unsigned>(*node.split);
  if (used & bit) {
    throw ParseError(std::string("tree document: feature '") +
                     std::string(to_string(*node.split)) + "' repeats on a path");
  }
  for (const auto& [value, child] : node.children) check_no_repeat(*child, used | bit);
}

}  // namespace

std::string serialize(const DecisionTree& tree) {
  json j;
  json cfg;
  if (tree.config.max_depth.has_value()) {
    cfg["max_depth"] = *tree.config.max_depth;
  } else {
    cfg["max_depth"] = nullptr;
  }
  cfg["min_gain"] = tree.config.min_gain;
  j["config"] = cfg;
  j["root"] = tree.root ? node_to_json(*tree.root) : json(nullptr);
  return j.dump(2) + "\n";
}

DecisionTree deserialize(const std::string& document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("tree document: ") + e.what());
  }
  if (!j.is_object() || !j.contains("root")) {
    throw ParseError("tree document: missing 'root'");
  }
  DecisionTree tree;
  if (j.contains("config")) {
    const json& cfg = j.at("config");
    if (cfg.contains("max_depth") && !cfg.at("max_depth").is_null()) {
      tree.config.max_depth = cfg.at("max_depth").get<int>();
    }
    if (cfg.contains("min_gain")) tree.config.min_gain = cfg.at("min_gain").get<double>();
  }
  if (!j.at("root").is_null()) {
    tree.root = node_from_json(j.at("root"));
    check_no_repeat(*tree.root, 0);
  }
  return tree;
}

namespace {

bool node_equal(const TreeNode* a, const TreeNode* b) {
  if (!a || !b) return a == b;
  if (a->counts != b->counts || a->majority != b->majority || a->split != b->split) {
    return false;
  }
  if (a->children.size() != b->children.size()) return false;
  for (auto ita = a->children.begin(), itb = b->children.begin();
       ita != a->children.end(); ++ita, ++itb) {
    if (ita->first != itb->first) return false;
    if (!node_equal(ita->second.get(), itb->second.get())) return false;
  }
  return true;
}

}  // namespace

bool tree_equal(const DecisionTree& a, const DecisionTree& b) {
  return a.config == b.config && node_equal(a.root.get(), b.root.get());
}

void save_tree(const DecisionTree& tree, const std::string& path) {
  atomic_write_file(path, serialize(tree));
}

DecisionTree load_tree(const std::string& path) {
  return deserialize(read_file(path));
}

}  // namespace woundassess
