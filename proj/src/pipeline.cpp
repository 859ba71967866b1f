#include "qap/pipeline.hpp"

#include <algorithm>
#include <map>

#include "qap/text.hpp"

namespace qap {

bool is_question(const Utterance& u) {
  const std::string_view t = trim(u.text);
  return !t.empty() && t.back() == '?';
}

Span full_span(const Utterance& u) { return {0, codepoint_count(u.text)}; }

namespace {

using DialogueIndex = std::map<std::string, const Dialogue*, std::less<>>;

DialogueIndex index_dialogues(const std::vector<Dialogue>& dialogues) {
  DialogueIndex index;
  for (const Dialogue& d : dialogues) index.emplace(d.dialogue_id, &d);
  return index;
}

const Utterance* previous_of(const Dialogue& d, const Utterance& u) {
  return u.turn_index == 0 ? nullptr : d.find(u.turn_index - 1);
}

QuestionAnnotation annotate(const Dialogue& d, const Utterance& u, Span span, const Classifier& c) {
  const Tokens tokens = tokenize(slice_codepoints(u.text, span.start, span.end));
  const FeatureVector fv = extract_features(tokens, previous_of(d, u), c.extractor);
  QuestionAnnotation q;
  q.dialogue_id = u.dialogue_id;
  q.turn_index = u.turn_index;
  q.span = span;
  q.q_type = c.model ? predict(*c.model, fv) : rule_classify(fv, c.rules);
  if (q.q_type == QuestionType::WH) q.feature = map_wh_feature(tokens, c.wh_map);
  q.annotator_id = c.annotator_id;
  return q;
}

}  // namespace

AnnotationSet classify_dialogues(const std::vector<Dialogue>& dialogues, const Classifier& classifier,
                                 const AnnotationSet* targets) {
  AnnotationSet out;
  if (targets) {
    const DialogueIndex index = index_dialogues(dialogues);
    std::map<ItemKey, bool> seen;
    for (const QuestionAnnotation& t : targets->questions) seen.emplace(t.key(), true);
    for (const auto& [key, _] : seen) {
      auto d = index.find(key.dialogue_id);
      if (d == index.end()) continue;
      const Utterance* u = d->second->find(key.turn_index);
      if (!u) continue;
      out.questions.push_back(annotate(*d->second, *u, key.span, classifier));
    }
    return out;
  }
  std::vector<const Dialogue*> ordered;
  for (const Dialogue& d : dialogues) ordered.push_back(&d);
  std::sort(ordered.begin(), ordered.end(),
            [](const Dialogue* a, const Dialogue* b) { return a->dialogue_id < b->dialogue_id; });
  for (const Dialogue* d : ordered) {
    for (const Utterance& u : d->utterances) {
      if (is_question(u)) out.questions.push_back(annotate(*d, u, full_span(u), classifier));
    }
  }
  return out;
}

std::vector<LabeledInstance> build_instances(const std::vector<Dialogue>& dialogues, const AnnotationSet& gold,
                                             const ExtractorConfig& cfg, std::size_t* skipped) {
  const DialogueIndex index = index_dialogues(dialogues);
  std::vector<LabeledInstance> out;
  std::size_t missed = 0;
  for (const QuestionAnnotation& q : gold.questions) {
    auto d = index.find(q.dialogue_id);
    const Utterance* u = d == index.end() ? nullptr : d->second->find(q.turn_index);
    if (!u) {
      ++missed;
      continue;
    }
    out.push_back({extract_features(*u, q.span, previous_of(*d->second, *u), cfg), q.q_type});
  }
  if (skipped) *skipped = missed;
  return out;
}

}  // namespace qap
