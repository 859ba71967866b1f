#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qap/model.hpp"

namespace qap {

enum class Layer { Questions, Features, Answers };

std::string_view to_string(Layer layer);
Layer parse_layer(std::string_view s);  // throws UnknownTag

struct AgreementReport {
  Layer layer = Layer::Questions;
  std::string annotator_a;
  std::string annotator_b;
  std::size_t items = 0;
  double observed = 0.0;  // A_o
  double kappa = 0.0;
};

struct AgreementSummary {
  Layer layer = Layer::Questions;
  std::vector<AgreementReport> pairs;
  double mean_observed = 0.0;
  double mean_kappa = 0.0;
};

// Pairwise A_o and Cohen's kappa for every annotator pair, plus their
// unweighted means. Items align on (dialogue_id, turn_index, span):
//   questions  items both annotators marked as questions
//   features   items both typed WH or DQ; a missing feature is its own label
//   answers    questions both annotators answered
// Pairs sharing no item on the layer are left out. Throws NoAlignedItems
// when fewer than two annotators are present or no pair shares an item.
AgreementSummary pairwise_agreement(const AnnotationSet& set, Layer layer);

enum class DisagreementCategory { Mistake, Cascade, GuidelineGap, Ambiguous, Uncategorized };

std::string_view to_string(DisagreementCategory c);

inline constexpr std::string_view kMissingTag = "<missing>";
inline constexpr std::string_view kNoneTag = "-";

struct DisagreementRecord {
  ItemKey item;
  Layer layer = Layer::Questions;
  std::map<std::string, std::string> tags;  // annotator -> tag
  DisagreementCategory category = DisagreementCategory::Uncategorized;
};

// Every item (the union over annotators) whose tags differ on some layer.
// Feature and answer disagreements on items whose question types also
// differ are marked Cascade; everything else is left Uncategorized for a
// human to sort into the remaining categories.
std::vector<DisagreementRecord> disagreement_report(const AnnotationSet& set);

nlohmann::ordered_json to_json(const AgreementSummary& summary);
nlohmann::ordered_json to_json(const DisagreementRecord& record);

}  // namespace qap
