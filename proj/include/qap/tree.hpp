#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "qap/features.hpp"
#include "qap/tags.hpp"

namespace qap {

struct LabeledInstance {
  FeatureVector fv;
  QuestionType label = QuestionType::YN;

  friend auto operator<=>(const LabeledInstance&, const LabeledInstance&) = default;
};

using LabelCounts = std::array<std::size_t, kQuestionTypes.size()>;

LabelCounts count_labels(std::span<const QuestionType> labels);
LabelCounts count_labels(std::span<const LabeledInstance> data);

// Binary test routed right when true: a boolean feature is set, or
// length > threshold.
struct SplitTest {
  FeatureId feature = FeatureId::HasWh;
  double threshold = 0.0;  // only meaningful for FeatureId::Length

  bool operator()(const FeatureVector& fv) const;
  friend bool operator==(const SplitTest&, const SplitTest&) = default;
};

struct TrainConfig {
  std::optional<std::size_t> max_depth;  // unlimited when empty; >= 1 when set
  std::size_t min_samples_leaf = 1;
  unsigned random_seed = 0;  // reserved; training is deterministic
};

struct TreeNode {
  std::optional<SplitTest> split;  // empty for leaves
  std::size_t left = 0;            // index of the test-false child
  std::size_t right = 0;           // index of the test-true child
  QuestionType label = QuestionType::YN;
  LabelCounts distribution{};

  bool is_leaf() const { return !split.has_value(); }
};

// Binary tree stored in preorder; nodes[0] is the root.
class TreeModel {
 public:
  TreeModel() = default;
  explicit TreeModel(std::vector<TreeNode> nodes);  // throws MalformedModel if not a valid tree

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  std::size_t depth() const;
  std::size_t leaf_count() const;

  // Structural equality, independent of node numbering.
  friend bool operator==(const TreeModel& a, const TreeModel& b);

 private:
  std::vector<TreeNode> nodes_;
};

// Shannon entropy in bits.
double entropy(const LabelCounts& counts);
double entropy(std::span<const QuestionType> labels);

// Parent entropy minus size-weighted child entropy; 0 when the split leaves
// one side empty.
double information_gain(std::span<const LabeledInstance> parent, const SplitTest& split);

// Every boolean test, then length thresholds at midpoints between sorted
// distinct observed lengths. This is also the tie-break order.
std::vector<SplitTest> candidate_splits(std::span<const LabeledInstance> data);

struct ScoredSplit {
  SplitTest test;
  double gain = 0.0;
};

// Highest-gain admissible candidate (both sides hold at least
// min_samples_leaf instances), first in candidate order on ties. Empty when
// no candidate achieves positive gain.
std::optional<ScoredSplit> best_split(std::span<const LabeledInstance> data, const TrainConfig& cfg);

// Greedy recursive partitioning. An impure node where no split gains splits
// on the first admissible candidate anyway. Instances are sorted first, so the result
// does not depend on input order. Throws EmptyTrainingSet.
TreeModel train_tree(std::vector<LabeledInstance> data, const TrainConfig& cfg = {});

QuestionType predict(const TreeModel& model, const FeatureVector& fv);

// Most frequent label; ties go to the earlier label in YN, WH, DQ, CS, PQ.
QuestionType majority_label(const LabelCounts& counts);

class MajorityBaseline {
 public:
  explicit MajorityBaseline(QuestionType label) : label_(label) {}
  QuestionType label() const { return label_; }
  QuestionType predict(const FeatureVector&) const { return label_; }

 private:
  QuestionType label_;
};

// Throws EmptyTrainingSet.
MajorityBaseline majority_baseline(std::span<const QuestionType> train_labels);

inline constexpr int kModelVersion = 1;

// Versioned JSON tree. load throws MalformedModel, UnsupportedVersion.
void save_model(std::ostream& out, const TreeModel& model);
TreeModel load_model(std::istream& in);

}  // namespace qap
