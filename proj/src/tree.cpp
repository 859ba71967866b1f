#include "qap/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "json.hpp"
#include "qap/error.hpp"

namespace qap {

namespace {

constexpr double kGainEpsilon = 1e-12;
constexpr std::size_t kMaxLoadDepth = 4096;

std::size_t total(const LabelCounts& c) {
  std::size_t n = 0;
  for (std::size_t v : c) n += v;
  return n;
}

}  // namespace

LabelCounts count_labels(std::span<const QuestionType> labels) {
  LabelCounts c{};
  for (QuestionType q : labels) ++c[index_of(q)];
  return c;
}

LabelCounts count_labels(std::span<const LabeledInstance> data) {
  LabelCounts c{};
  for (const LabeledInstance& x : data) ++c[index_of(x.label)];
  return c;
}

bool SplitTest::operator()(const FeatureVector& fv) const {
  if (feature == FeatureId::Length) return static_cast<double>(fv.length) > threshold;
  return boolean_value(fv, feature);
}

double entropy(const LabelCounts& counts) {
  const std::size_t n = total(counts);
  if (n == 0) return 0.0;
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    h -= p * std::log2(p);
  }
  return h;
}

double entropy(std::span<const QuestionType> labels) { return entropy(count_labels(labels)); }

namespace {

struct SideCounts {
  LabelCounts left{};
  LabelCounts right{};
};

SideCounts partition_counts(std::span<const LabeledInstance> data, const SplitTest& split) {
  SideCounts s;
  for (const LabeledInstance& x : data) ++(split(x.fv) ? s.right : s.left)[index_of(x.label)];
  return s;
}

double gain_from(const LabelCounts& parent, const SideCounts& s) {
  const std::size_t n = total(parent), nl = total(s.left), nr = total(s.right);
  if (nl == 0 || nr == 0) return 0.0;
  const double weighted = (static_cast<double>(nl) * entropy(s.left) + static_cast<double>(nr) * entropy(s.right)) /
                          static_cast<double>(n);
  return std::max(0.0, entropy(parent) - weighted);
}

}  // namespace

double information_gain(std::span<const LabeledInstance> parent, const SplitTest& split) {
  return gain_from(count_labels(parent), partition_counts(parent, split));
}

std::vector<SplitTest> candidate_splits(std::span<const LabeledInstance> data) {
  std::vector<SplitTest> out;
  for (FeatureId id : kFeatureIds) {
    if (id != FeatureId::Length) out.push_back({id, 0.0});
  }
  std::vector<std::size_t> lengths;
  for (const LabeledInstance& x : data) lengths.push_back(x.fv.length);
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  for (std::size_t i = 1; i < lengths.size(); ++i) {
    out.push_back({FeatureId::Length, (static_cast<double>(lengths[i - 1]) + static_cast<double>(lengths[i])) / 2.0});
  }
  return out;
}

std::optional<ScoredSplit> best_split(std::span<const LabeledInstance> data, const TrainConfig& cfg) {
  const LabelCounts parent = count_labels(data);
  const std::size_t min_side = std::max<std::size_t>(1, cfg.min_samples_leaf);
  std::optional<ScoredSplit> best;
  for (const SplitTest& test : candidate_splits(data)) {
    const SideCounts sides = partition_counts(data, test);
    if (total(sides.left) < min_side || total(sides.right) < min_side) continue;
    const double gain = gain_from(parent, sides);
    if (gain <= kGainEpsilon) continue;
    if (!best || gain > best->gain + kGainEpsilon) best = ScoredSplit{test, gain};
  }
  return best;
}

QuestionType majority_label(const LabelCounts& counts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = i;
  }
  return kQuestionTypes[best];
}

namespace {

// Leaf ties fall back to overall training frequency, then the fixed order.
QuestionType leaf_label(const LabelCounts& counts, const LabelCounts& global) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best] || (counts[i] == counts[best] && global[i] > global[best])) best = i;
  }
  return kQuestionTypes[best];
}

class Builder {
 public:
  Builder(const TrainConfig& cfg, const LabelCounts& global) : cfg_(cfg), global_(global) {}

  std::size_t build(std::vector<LabeledInstance> data, std::size_t depth) {
    const std::size_t index = nodes_.size();
    nodes_.emplace_back();
    const LabelCounts counts = count_labels(data);
    nodes_[index].distribution = counts;
    nodes_[index].label = leaf_label(counts, global_);

    const bool pure = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1;
    const bool depth_exhausted = cfg_.max_depth && depth >= *cfg_.max_depth;
    if (pure || depth_exhausted) return index;
    auto split = best_split(data, cfg_);
    // no split gains anything (xor-like node): take the first admissible one
    if (!split) split = first_admissible(data);
    if (!split) return index;

    std::vector<LabeledInstance> left, right;
    for (LabeledInstance& x : data) (split->test(x.fv) ? right : left).push_back(std::move(x));
    nodes_[index].split = split->test;
    const std::size_t l = build(std::move(left), depth + 1);
    nodes_[index].left = l;
    const std::size_t r = build(std::move(right), depth + 1);
    nodes_[index].right = r;
    return index;
  }

  std::vector<TreeNode> take() { return std::move(nodes_); }

 private:
  std::optional<ScoredSplit> first_admissible(std::span<const LabeledInstance> data) const {
    const std::size_t min_side = std::max<std::size_t>(1, cfg_.min_samples_leaf);
    for (const SplitTest& test : candidate_splits(data)) {
      const SideCounts sides = partition_counts(data, test);
      if (total(sides.left) >= min_side && total(sides.right) >= min_side) return ScoredSplit{test, 0.0};
    }
    return std::nullopt;
  }

  const TrainConfig& cfg_;
  const LabelCounts& global_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

TreeModel train_tree(std::vector<LabeledInstance> data, const TrainConfig& cfg) {
  if (data.empty()) throw EmptyTrainingSet();
  if (cfg.max_depth && *cfg.max_depth == 0) throw Error("max_depth must be at least 1");
  std::sort(data.begin(), data.end());
  const LabelCounts global = count_labels(data);
  Builder builder(cfg, global);
  builder.build(std::move(data), 0);
  return TreeModel(builder.take());
}

QuestionType predict(const TreeModel& model, const FeatureVector& fv) {
  const auto& nodes = model.nodes();
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) i = (*nodes[i].split)(fv) ? nodes[i].right : nodes[i].left;
  return nodes[i].label;
}

MajorityBaseline majority_baseline(std::span<const QuestionType> train_labels) {
  if (train_labels.empty()) throw EmptyTrainingSet();
  return MajorityBaseline(majority_label(count_labels(train_labels)));
}

TreeModel::TreeModel(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw MalformedModel("tree has no nodes");
  // Every node except the root must be referenced exactly once, by a parent
  // with a smaller index (preorder), so the structure is a finite tree.
  std::vector<int> refs(nodes_.size(), 0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf()) continue;
    for (std::size_t child : {nodes_[i].left, nodes_[i].right}) {
      if (child <= i || child >= nodes_.size()) throw MalformedModel("child index out of order");
      ++refs[child];
    }
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (refs[i] != 1) throw MalformedModel("node " + std::to_string(i) + " is not referenced exactly once");
  }
}

std::size_t TreeModel::depth() const {
  std::function<std::size_t(std::size_t)> rec = [&](std::size_t i) -> std::size_t {
    if (nodes_[i].is_leaf()) return 0;
    return 1 + std::max(rec(nodes_[i].left), rec(nodes_[i].right));
  };
  return nodes_.empty() ? 0 : rec(0);
}

std::size_t TreeModel::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

bool operator==(const TreeModel& a, const TreeModel& b) {
  if (a.nodes_.size() != b.nodes_.size()) return false;
  if (a.nodes_.empty()) return true;
  std::function<bool(std::size_t, std::size_t)> same = [&](std::size_t i, std::size_t j) {
    const TreeNode& x = a.nodes_[i];
    const TreeNode& y = b.nodes_[j];
    if (x.split != y.split || x.label != y.label || x.distribution != y.distribution) return false;
    return x.is_leaf() || (same(x.left, y.left) && same(x.right, y.right));
  };
  return same(0, 0);
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json node_to_json(const std::vector<TreeNode>& nodes, std::size_t i) {
  const TreeNode& n = nodes[i];
  ordered_json j;
  if (n.split) {
    j["feature"] = to_string(n.split->feature);
    j["threshold"] = n.split->feature == FeatureId::Length ? ordered_json(n.split->threshold) : ordered_json(nullptr);
    j["left"] = node_to_json(nodes, n.left);
    j["right"] = node_to_json(nodes, n.right);
  }
  j["label"] = to_string(n.label);
  ordered_json dist = ordered_json::object();
  for (QuestionType q : kQuestionTypes) dist[std::string(to_string(q))] = n.distribution[index_of(q)];
  j["distribution"] = dist;
  return j;
}

std::size_t node_from_json(const nlohmann::json& j, std::vector<TreeNode>& nodes, std::size_t depth) {
  if (depth > kMaxLoadDepth) throw MalformedModel("tree too deep");
  if (!j.is_object()) throw MalformedModel("node is not an object");
  const std::size_t index = nodes.size();
  nodes.emplace_back();

  TreeNode node;
  auto label = j.find("label");
  if (label == j.end() || !label->is_string()) throw MalformedModel("node without label");
  try {
    node.label = parse_question_type(label->get<std::string>());
  } catch (const UnknownTag& e) {
    throw MalformedModel(e.what());
  }
  auto dist = j.find("distribution");
  if (dist == j.end() || !dist->is_object()) throw MalformedModel("node without distribution");
  for (auto it = dist->begin(); it != dist->end(); ++it) {
    if (!it.value().is_number_unsigned()) throw MalformedModel("distribution counts must be non-negative integers");
    try {
      node.distribution[index_of(parse_question_type(it.key()))] = it.value().get<std::size_t>();
    } catch (const UnknownTag& e) {
      throw MalformedModel(e.what());
    }
  }

  const bool has_feature = j.contains("feature"), has_left = j.contains("left"), has_right = j.contains("right");
  if (has_feature || has_left || has_right) {
    if (!(has_feature && has_left && has_right)) throw MalformedModel("internal node needs feature, left and right");
    const auto& f = j["feature"];
    const auto id = f.is_string() ? parse_feature_id(f.get<std::string>()) : std::nullopt;
    if (!id) throw MalformedModel("unknown split feature");
    SplitTest test{*id, 0.0};
    if (*id == FeatureId::Length) {
      auto t = j.find("threshold");
      if (t == j.end() || !t->is_number()) throw MalformedModel("length split without numeric threshold");
      test.threshold = t->get<double>();
    }
    node.split = test;
    node.left = node_from_json(j["left"], nodes, depth + 1);
    node.right = node_from_json(j["right"], nodes, depth + 1);
  }
  nodes[index] = node;
  return index;
}

}  // namespace

void save_model(std::ostream& out, const TreeModel& model) {
  ordered_json doc;
  doc["format"] = "qap-decision-tree";
  doc["version"] = kModelVersion;
  doc["features"] = ordered_json::array();
  for (FeatureId id : kFeatureIds) doc["features"].push_back(to_string(id));
  doc["root"] = node_to_json(model.nodes(), 0);
  out << doc.dump(2) << '\n';
}

TreeModel load_model(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedModel(e.what());
  }
  if (!doc.is_object()) throw MalformedModel("document is not an object");
  auto version = doc.find("version");
  if (version == doc.end() || !version->is_number_integer()) throw MalformedModel("missing version");
  if (version->get<int>() != kModelVersion) throw UnsupportedVersion(version->get<int>());
  auto root = doc.find("root");
  if (root == doc.end()) throw MalformedModel("missing root");
  std::vector<TreeNode> nodes;
  node_from_json(*root, nodes, 0);
  return TreeModel(std::move(nodes));
}

}  // namespace qap
