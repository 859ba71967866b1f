#include "qap/agreement.hpp"

#include <algorithm>
#include <set>

#include "qap/error.hpp"
#include "qap/metrics.hpp"

namespace qap {

std::string_view to_string(Layer layer) {
  switch (layer) {
    case Layer::Questions: return "questions";
    case Layer::Features: return "features";
    case Layer::Answers: return "answers";
  }
  return "?";
}

Layer parse_layer(std::string_view s) {
  for (Layer l : {Layer::Questions, Layer::Features, Layer::Answers}) {
    if (to_string(l) == s) return l;
  }
  throw UnknownTag(std::string(s));
}

std::string_view to_string(DisagreementCategory c) {
  switch (c) {
    case DisagreementCategory::Mistake: return "mistake";
    case DisagreementCategory::Cascade: return "cascade";
    case DisagreementCategory::GuidelineGap: return "guideline-gap";
    case DisagreementCategory::Ambiguous: return "ambiguous";
    case DisagreementCategory::Uncategorized: return "uncategorized";
  }
  return "?";
}

namespace {

struct AnnotatorView {
  std::map<ItemKey, QuestionAnnotation> questions;
  std::map<ItemKey, AnswerType> answers;  // keyed by the answered question
};

std::map<std::string, AnnotatorView> by_annotator(const AnnotationSet& set) {
  std::map<std::string, AnnotatorView> views;
  for (const QuestionAnnotation& q : set.questions) views[q.annotator_id].questions.emplace(q.key(), q);
  for (const AnswerAnnotation& a : set.answers) views[a.annotator_id].answers.emplace(a.question_ref, a.a_type);
  return views;
}

std::string feature_tag(const QuestionAnnotation& q) {
  return q.feature ? std::string(to_string(*q.feature)) : std::string(kNoneTag);
}

// Aligned label sequences for one annotator pair on one layer.
void align(const AnnotatorView& a, const AnnotatorView& b, Layer layer, std::vector<std::string>& la,
           std::vector<std::string>& lb) {
  for (const auto& [key, qa] : a.questions) {
    auto it = b.questions.find(key);
    if (it == b.questions.end()) continue;
    const QuestionAnnotation& qb = it->second;
    switch (layer) {
      case Layer::Questions:
        la.emplace_back(to_string(qa.q_type));
        lb.emplace_back(to_string(qb.q_type));
        break;
      case Layer::Features:
        if (feature_applicable(qa.q_type) && feature_applicable(qb.q_type)) {
          la.push_back(feature_tag(qa));
          lb.push_back(feature_tag(qb));
        }
        break;
      case Layer::Answers: {
        auto xa = a.answers.find(key), xb = b.answers.find(key);
        if (xa != a.answers.end() && xb != b.answers.end()) {
          la.emplace_back(to_string(xa->second));
          lb.emplace_back(to_string(xb->second));
        }
        break;
      }
    }
  }
}

}  // namespace

AgreementSummary pairwise_agreement(const AnnotationSet& set, Layer layer) {
  const auto views = by_annotator(set);
  if (views.size() < 2) throw NoAlignedItems("need at least two annotators, found " + std::to_string(views.size()));

  AgreementSummary summary;
  summary.layer = layer;
  for (auto i = views.begin(); i != views.end(); ++i) {
    for (auto j = std::next(i); j != views.end(); ++j) {
      std::vector<std::string> la, lb;
      align(i->second, j->second, layer, la, lb);
      if (la.empty()) continue;
      summary.pairs.push_back({layer, i->first, j->first, la.size(), observed_agreement(la, lb), cohen_kappa(la, lb)});
    }
  }
  if (summary.pairs.empty()) throw NoAlignedItems(std::string("no annotator pair shares an item on layer ") +
                                                  std::string(to_string(layer)));
  for (const AgreementReport& r : summary.pairs) {
    summary.mean_observed += r.observed;
    summary.mean_kappa += r.kappa;
  }
  summary.mean_observed /= static_cast<double>(summary.pairs.size());
  summary.mean_kappa /= static_cast<double>(summary.pairs.size());
  return summary;
}

std::vector<DisagreementRecord> disagreement_report(const AnnotationSet& set) {
  const auto views = by_annotator(set);
  std::vector<DisagreementRecord> out;
  if (views.size() < 2) return out;

  std::set<ItemKey> items;
  for (const auto& [_, view] : views) {
    for (const auto& [key, __] : view.questions) items.insert(key);
  }

  auto all_equal = [](const std::map<std::string, std::string>& tags) {
    return std::all_of(tags.begin(), tags.end(), [&](const auto& kv) { return kv.second == tags.begin()->second; });
  };

  for (const ItemKey& key : items) {
    std::map<std::string, std::string> qtags, ftags, atags;
    for (const auto& [annotator, view] : views) {
      auto q = view.questions.find(key);
      if (q == view.questions.end()) {
        qtags[annotator] = ftags[annotator] = atags[annotator] = std::string(kMissingTag);
        continue;
      }
      qtags[annotator] = std::string(to_string(q->second.q_type));
      ftags[annotator] = feature_tag(q->second);
      auto a = view.answers.find(key);
      atags[annotator] = a == view.answers.end() ? std::string(kNoneTag) : std::string(to_string(a->second));
    }
    const bool question_differs = !all_equal(qtags);
    const auto dependent = question_differs ? DisagreementCategory::Cascade : DisagreementCategory::Uncategorized;
    if (question_differs) out.push_back({key, Layer::Questions, qtags, DisagreementCategory::Uncategorized});
    if (!all_equal(ftags)) out.push_back({key, Layer::Features, ftags, dependent});
    if (!all_equal(atags)) out.push_back({key, Layer::Answers, atags, dependent});
  }
  return out;
}

nlohmann::ordered_json to_json(const AgreementSummary& summary) {
  nlohmann::ordered_json j;
  j["layer"] = to_string(summary.layer);
  j["pairs"] = nlohmann::ordered_json::array();
  for (const AgreementReport& r : summary.pairs) {
    j["pairs"].push_back({{"annotator_a", r.annotator_a},
                          {"annotator_b", r.annotator_b},
                          {"items", r.items},
                          {"observed_agreement", r.observed},
                          {"kappa", r.kappa}});
  }
  j["mean_observed_agreement"] = summary.mean_observed;
  j["mean_kappa"] = summary.mean_kappa;
  return j;
}

nlohmann::ordered_json to_json(const DisagreementRecord& record) {
  nlohmann::ordered_json j;
  j["dialogue_id"] = record.item.dialogue_id;
  j["turn_index"] = record.item.turn_index;
  j["span_start"] = record.item.span.start;
  j["span_end"] = record.item.span.end;
  j["layer"] = to_string(record.layer);
  j["tags"] = record.tags;
  j["category"] = to_string(record.category);
  return j;
}

}  // namespace qap
