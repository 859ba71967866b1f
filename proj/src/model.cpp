#include "qap/model.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "qap/text.hpp"

namespace qap {

const Utterance* Dialogue::find(std::size_t turn_index) const {
  auto it = std::lower_bound(utterances.begin(), utterances.end(), turn_index,
                             [](const Utterance& u, std::size_t t) { return u.turn_index < t; });
  if (it == utterances.end() || it->turn_index != turn_index) return nullptr;
  return &*it;
}

std::string to_string(const ItemKey& key) {
  return key.dialogue_id + ":" + std::to_string(key.turn_index) + ":" + std::to_string(key.span.start) + "-" +
         std::to_string(key.span.end);
}

std::vector<AnswerType> allowed_answer_types(QuestionType q) {
  std::vector<AnswerType> out;
  for (AnswerType a : kAnswerTypes) {
    if (answer_allowed(q, a)) out.push_back(a);
  }
  return out;
}

bool answer_allowed(QuestionType q, AnswerType a) {
  switch (a) {
    case AnswerType::PA:
    case AnswerType::NA:
      return q == QuestionType::YN || q == QuestionType::CS;
    case AnswerType::FA:
      return q == QuestionType::DQ || q == QuestionType::WH;
    case AnswerType::PHA:
    case AnswerType::UA:
    case AnswerType::UT:
    case AnswerType::DA:
      return true;
  }
  return false;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::IllegalAnswerForQuestion: return "IllegalAnswerForQuestion";
    case ViolationKind::FeatureNotApplicable: return "FeatureNotApplicable";
    case ViolationKind::DanglingReference: return "DanglingReference";
    case ViolationKind::DuplicateAnswer: return "DuplicateAnswer";
    case ViolationKind::UnknownUtterance: return "UnknownUtterance";
    case ViolationKind::SpanOutOfBounds: return "SpanOutOfBounds";
  }
  return "?";
}

namespace {

using DialogueIndex = std::map<std::string, const Dialogue*, std::less<>>;

const Utterance* lookup(const DialogueIndex& index, const std::string& dialogue_id, std::size_t turn) {
  auto it = index.find(dialogue_id);
  return it == index.end() ? nullptr : it->second->find(turn);
}

void check_question(const QuestionAnnotation& q, const DialogueIndex& index, std::vector<Violation>& out) {
  if (q.feature && !feature_applicable(q.q_type)) {
    out.push_back({ViolationKind::FeatureNotApplicable, q.key(), q.annotator_id,
                   std::string(to_string(*q.feature)) + " on " + std::string(to_string(q.q_type))});
  }
  if (q.span.start > q.span.end) {
    out.push_back({ViolationKind::SpanOutOfBounds, q.key(), q.annotator_id, "span start after end"});
  }
  if (index.empty()) return;
  const Utterance* u = lookup(index, q.dialogue_id, q.turn_index);
  if (!u) {
    out.push_back({ViolationKind::UnknownUtterance, q.key(), q.annotator_id, "question"});
  } else if (q.span.end > codepoint_count(u->text)) {
    out.push_back({ViolationKind::SpanOutOfBounds, q.key(), q.annotator_id,
                   "span end " + std::to_string(q.span.end) + " beyond text length " +
                       std::to_string(codepoint_count(u->text))});
  }
}

void check_answer(const QAPair& pair, const DialogueIndex& index, std::vector<Violation>& out) {
  const QuestionAnnotation& q = pair.question;
  const AnswerAnnotation& a = *pair.answer;
  if (a.question_ref != q.key() || a.annotator_id != q.annotator_id) {
    out.push_back({ViolationKind::DanglingReference, q.key(), a.annotator_id,
                   "answer references " + to_string(a.question_ref)});
  }
  if (!answer_allowed(q.q_type, a.a_type)) {
    out.push_back({ViolationKind::IllegalAnswerForQuestion, q.key(), a.annotator_id,
                   std::string(to_string(a.a_type)) + " answering " + std::string(to_string(q.q_type))});
  }
  if (!index.empty() && !lookup(index, a.dialogue_id, a.turn_index)) {
    out.push_back({ViolationKind::UnknownUtterance, q.key(), a.annotator_id,
                   "answer turn " + a.dialogue_id + ":" + std::to_string(a.turn_index)});
  }
}

DialogueIndex make_index(std::span<const Dialogue> dialogues) {
  DialogueIndex index;
  for (const Dialogue& d : dialogues) index.emplace(d.dialogue_id, &d);
  return index;
}

}  // namespace

std::vector<Violation> validate_annotations(std::span<const QAPair> pairs, std::span<const Dialogue> dialogues) {
  const DialogueIndex index = make_index(dialogues);
  std::vector<Violation> out;
  for (const QAPair& pair : pairs) {
    check_question(pair.question, index, out);
    if (pair.answer) check_answer(pair, index, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Pairing pair_annotations(const AnnotationSet& set) {
  Pairing result;
  std::map<std::pair<std::string, ItemKey>, std::size_t> by_key;
  for (const QuestionAnnotation& q : set.questions) {
    by_key.emplace(std::pair{q.annotator_id, q.key()}, result.pairs.size());
    result.pairs.push_back({q, std::nullopt});
  }
  for (const AnswerAnnotation& a : set.answers) {
    auto it = by_key.find({a.annotator_id, a.question_ref});
    if (it == by_key.end()) {
      result.orphans.push_back(a);
    } else if (auto& slot = result.pairs[it->second].answer; slot) {
      result.duplicates.push_back(a);
    } else {
      slot = a;
    }
  }
  return result;
}

std::vector<Violation> validate_annotation_set(const AnnotationSet& set, std::span<const Dialogue> dialogues) {
  const Pairing pairing = pair_annotations(set);
  std::vector<Violation> out = validate_annotations(pairing.pairs, dialogues);
  for (const AnswerAnnotation& a : pairing.orphans) {
    out.push_back({ViolationKind::DanglingReference, a.question_ref, a.annotator_id,
                   "no question for answer at " + a.dialogue_id + ":" + std::to_string(a.turn_index)});
  }
  for (const AnswerAnnotation& a : pairing.duplicates) {
    out.push_back({ViolationKind::DuplicateAnswer, a.question_ref, a.annotator_id,
                   std::string(to_string(a.a_type)) + " at " + a.dialogue_id + ":" + std::to_string(a.turn_index)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qap
