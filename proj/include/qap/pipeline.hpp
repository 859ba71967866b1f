#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qap/features.hpp"
#include "qap/model.hpp"
#include "qap/rules.hpp"
#include "qap/tree.hpp"

namespace qap {

// An utterance whose trimmed text ends in '?', spanning the whole text.
bool is_question(const Utterance& u);
Span full_span(const Utterance& u);

struct Classifier {
  ExtractorConfig extractor = ExtractorConfig::english();
  RuleConfig rules;
  WhFeatureMap wh_map = WhFeatureMap::english();
  std::optional<TreeModel> model;  // tree mode when set, rule mode otherwise
  std::string annotator_id = "auto";
};

// One question annotation per detected question, in (dialogue_id,
// turn_index) order. When `targets` is given its question items replace
// '?'-based detection. WH questions get the mapped wh feature.
AnnotationSet classify_dialogues(const std::vector<Dialogue>& dialogues, const Classifier& classifier,
                                 const AnnotationSet* targets = nullptr);

// Feature vectors for every question annotation that resolves to an
// utterance in `dialogues`; annotations that do not resolve are skipped and
// counted in `skipped` when given.
std::vector<LabeledInstance> build_instances(const std::vector<Dialogue>& dialogues, const AnnotationSet& gold,
                                             const ExtractorConfig& cfg, std::size_t* skipped = nullptr);

}  // namespace qap
