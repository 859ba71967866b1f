#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "qap/model.hpp"

using namespace qap;

namespace {

QuestionAnnotation question(QuestionType t, std::optional<Feature> f = std::nullopt, std::size_t turn = 0,
                            std::string annotator = "A") {
  return {"d1", turn, {0, 5}, t, f, std::move(annotator)};
}

QAPair answered(QuestionAnnotation q, AnswerType a) {
  AnswerAnnotation ans{q.dialogue_id, q.turn_index + 1, a, q.key(), q.annotator_id};
  return {std::move(q), ans};
}

}  // namespace

TEST_CASE("allowed answer types per question type") {
  using A = AnswerType;
  CHECK(allowed_answer_types(QuestionType::YN) == std::vector<A>{A::PA, A::NA, A::PHA, A::UA, A::UT, A::DA});
  CHECK(allowed_answer_types(QuestionType::WH) == std::vector<A>{A::FA, A::PHA, A::UA, A::UT, A::DA});
  CHECK(allowed_answer_types(QuestionType::PQ) == std::vector<A>{A::PHA, A::UA, A::UT, A::DA});
}

TEST_CASE("answer constraint table is total and covers every answer type") {
  std::set<AnswerType> all;
  for (QuestionType q : kQuestionTypes) {
    const auto allowed = allowed_answer_types(q);
    CHECK_FALSE(allowed.empty());
    all.insert(allowed.begin(), allowed.end());
    for (AnswerType universal : {AnswerType::PHA, AnswerType::UA, AnswerType::UT, AnswerType::DA}) {
      CHECK(std::find(allowed.begin(), allowed.end(), universal) != allowed.end());
    }
  }
  CHECK(all.size() == kAnswerTypes.size());
}

TEST_CASE("feature applicability") {
  CHECK(feature_applicable(QuestionType::WH));
  CHECK(feature_applicable(QuestionType::DQ));
  CHECK_FALSE(feature_applicable(QuestionType::PQ));
  CHECK_FALSE(feature_applicable(QuestionType::YN));
  CHECK_FALSE(feature_applicable(QuestionType::CS));
}

TEST_CASE("validate_annotations examples") {
  SUBCASE("feature answer to a yes/no question") {
    const std::vector<QAPair> pairs{answered(question(QuestionType::YN), AnswerType::FA)};
    const auto v = validate_annotations(pairs);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::IllegalAnswerForQuestion);
  }
  SUBCASE("legal wh pair") {
    const std::vector<QAPair> pairs{answered(question(QuestionType::WH, Feature::LOC), AnswerType::FA)};
    CHECK(validate_annotations(pairs).empty());
  }
  SUBCASE("feature on a phatic question") {
    const std::vector<QAPair> pairs{{question(QuestionType::PQ, Feature::TMP), std::nullopt}};
    const auto v = validate_annotations(pairs);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::FeatureNotApplicable);
  }
  SUBCASE("unanswered question is valid") {
    const std::vector<QAPair> pairs{{question(QuestionType::YN), std::nullopt}};
    CHECK(validate_annotations(pairs).empty());
  }
  SUBCASE("answer referencing another question") {
    QAPair p = answered(question(QuestionType::YN), AnswerType::PA);
    p.answer->question_ref.turn_index = 42;
    const std::vector<QAPair> pairs{p};
    const auto v = validate_annotations(pairs);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::DanglingReference);
  }
}

TEST_CASE("validation against dialogues checks utterances and span bounds") {
  Dialogue d{"d1", "en", {{"d1", 0, "A", "Where?", false}, {"d1", 1, "B", "Home", false}}};
  const std::vector<Dialogue> ds{d};
  std::vector<QAPair> pairs{{question(QuestionType::WH, Feature::LOC, 0), std::nullopt}};
  pairs[0].question.span = {0, 6};
  CHECK(validate_annotations(pairs, ds).empty());
  pairs[0].question.span = {0, 7};
  CHECK(validate_annotations(pairs, ds).at(0).kind == ViolationKind::SpanOutOfBounds);
  pairs[0].question.span = {0, 6};
  pairs[0].question.turn_index = 9;
  CHECK(validate_annotations(pairs, ds).at(0).kind == ViolationKind::UnknownUtterance);
}

TEST_CASE("validation is order independent and idempotent") {
  std::vector<QAPair> pairs;
  std::mt19937 rng(11);
  for (std::size_t i = 0; i < 60; ++i) {
    const auto q = kQuestionTypes[rng() % kQuestionTypes.size()];
    std::optional<Feature> f;
    if (rng() % 2) f = kFeatures[rng() % kFeatures.size()];
    QuestionAnnotation qa{"d" + std::to_string(i % 4), i, {0, 3}, q, f, "A"};
    if (rng() % 3) {
      pairs.push_back(answered(qa, kAnswerTypes[rng() % kAnswerTypes.size()]));
    } else {
      pairs.push_back({qa, std::nullopt});
    }
  }
  const auto expected = validate_annotations(pairs);
  CHECK(validate_annotations(pairs) == expected);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(pairs.begin(), pairs.end(), rng);
    CHECK(validate_annotations(pairs) == expected);
  }
  // Empty iff every pair satisfies the typed invariants.
  for (const QAPair& p : pairs) {
    const bool ok = (!p.question.feature || feature_applicable(p.question.q_type)) &&
                    (!p.answer || answer_allowed(p.question.q_type, p.answer->a_type));
    const std::vector<QAPair> one{p};
    CHECK(validate_annotations(one).empty() == ok);
  }
}

TEST_CASE("pairing reports orphans and duplicate answers") {
  AnnotationSet set;
  set.questions.push_back(question(QuestionType::YN));
  set.answers.push_back({"d1", 1, AnswerType::PA, set.questions[0].key(), "A"});
  set.answers.push_back({"d1", 2, AnswerType::NA, set.questions[0].key(), "A"});
  set.answers.push_back({"d1", 3, AnswerType::PA, {"d1", 7, {0, 1}}, "A"});
  set.answers.push_back({"d1", 1, AnswerType::PA, set.questions[0].key(), "B"});  // other annotator
  const Pairing p = pair_annotations(set);
  REQUIRE(p.pairs.size() == 1);
  CHECK(p.pairs[0].answer->a_type == AnswerType::PA);
  CHECK(p.duplicates.size() == 1);
  CHECK(p.orphans.size() == 2);

  const auto v = validate_annotation_set(set);
  CHECK(std::count_if(v.begin(), v.end(), [](const Violation& x) { return x.kind == ViolationKind::DanglingReference; }) == 2);
  CHECK(std::count_if(v.begin(), v.end(), [](const Violation& x) { return x.kind == ViolationKind::DuplicateAnswer; }) == 1);
}
