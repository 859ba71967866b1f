#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qap/tags.hpp"

namespace qap {

struct Utterance {
  std::string dialogue_id;
  std::size_t turn_index = 0;
  std::string speaker;
  std::string text;
  bool interrupted = false;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

struct Dialogue {
  std::string dialogue_id;
  std::string language = "en";
  std::vector<Utterance> utterances;  // sorted by turn_index, contiguous

  const Utterance* find(std::size_t turn_index) const;

  friend bool operator==(const Dialogue&, const Dialogue&) = default;
};

// Half-open interval of Unicode code points within an utterance's text.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  friend auto operator<=>(const Span&, const Span&) = default;
};

// Identifies an annotated item independently of who annotated it.
struct ItemKey {
  std::string dialogue_id;
  std::size_t turn_index = 0;
  Span span;

  friend auto operator<=>(const ItemKey&, const ItemKey&) = default;
};

std::string to_string(const ItemKey& key);

struct QuestionAnnotation {
  std::string dialogue_id;
  std::size_t turn_index = 0;
  Span span;
  QuestionType q_type = QuestionType::YN;
  std::optional<Feature> feature;
  std::string annotator_id;

  ItemKey key() const { return {dialogue_id, turn_index, span}; }

  friend bool operator==(const QuestionAnnotation&, const QuestionAnnotation&) = default;
};

struct AnswerAnnotation {
  std::string dialogue_id;
  std::size_t turn_index = 0;
  AnswerType a_type = AnswerType::PA;
  ItemKey question_ref;
  std::string annotator_id;

  friend bool operator==(const AnswerAnnotation&, const AnswerAnnotation&) = default;
};

// A question left unanswered has no answer; that is distinct from an
// "unrelated topic" reply.
struct QAPair {
  QuestionAnnotation question;
  std::optional<AnswerAnnotation> answer;

  friend bool operator==(const QAPair&, const QAPair&) = default;
};

// Answer types permitted as replies to a question type.
std::vector<AnswerType> allowed_answer_types(QuestionType q);
bool answer_allowed(QuestionType q, AnswerType a);

// Only wh- and disjunctive questions carry a semantic-role feature.
constexpr bool feature_applicable(QuestionType q) { return q == QuestionType::WH || q == QuestionType::DQ; }

enum class ViolationKind {
  IllegalAnswerForQuestion,
  FeatureNotApplicable,
  DanglingReference,
  DuplicateAnswer,
  UnknownUtterance,
  SpanOutOfBounds,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  ItemKey item;
  std::string annotator_id;
  std::string detail;

  friend auto operator<=>(const Violation&, const Violation&) = default;
};

// Collects every broken invariant. The result is sorted, so it does not
// depend on the order of `pairs`. When `dialogues` is non-empty, utterance
// references and span bounds are checked against it as well.
std::vector<Violation> validate_annotations(std::span<const QAPair> pairs,
                                            std::span<const Dialogue> dialogues = {});

// Flat contents of an annotation file.
struct AnnotationSet {
  std::vector<QuestionAnnotation> questions;
  std::vector<AnswerAnnotation> answers;

  friend bool operator==(const AnnotationSet&, const AnnotationSet&) = default;
};

struct Pairing {
  std::vector<QAPair> pairs;
  std::vector<AnswerAnnotation> orphans;     // question_ref resolves to no question
  std::vector<AnswerAnnotation> duplicates;  // second and later answers to one question
};

// Links answers to the question of the same annotator named by question_ref.
Pairing pair_annotations(const AnnotationSet& set);

// validate_annotations over the pairing, plus DanglingReference for orphans
// and DuplicateAnswer for duplicates.
std::vector<Violation> validate_annotation_set(const AnnotationSet& set, std::span<const Dialogue> dialogues = {});

}  // namespace qap
