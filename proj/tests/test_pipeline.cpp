#include "doctest.h"

#include "qap/pipeline.hpp"

using namespace qap;

namespace {

std::vector<Dialogue> sample() {
  Dialogue d{"amy", "en", {}};
  auto add = [&](std::string speaker, std::string text, bool interrupted = false) {
    d.utterances.push_back({"amy", d.utterances.size(), std::move(speaker), std::move(text), interrupted});
  };
  add("A", "it includes heat and uhm, I think", true);
  add("B", "Water?");
  add("A", "Yeah. Where did you go?");
  add("B", "Do you want coffee or tea?");
  add("A", "Tea.");
  return {d};
}

}  // namespace

TEST_CASE("question detection") {
  CHECK(is_question({"d", 0, "A", "Water?  ", false}));
  CHECK_FALSE(is_question({"d", 0, "A", "Water.", false}));
  CHECK(full_span({"d", 0, "A", "mañana?", false}).end == 7);
}

TEST_CASE("rule classification of a dialogue") {
  const AnnotationSet out = classify_dialogues(sample(), Classifier{});
  REQUIRE(out.questions.size() == 3);
  CHECK(out.questions[0].q_type == QuestionType::CS);
  CHECK(out.questions[1].q_type == QuestionType::WH);
  CHECK(out.questions[1].feature == Feature::LOC);
  CHECK(out.questions[2].q_type == QuestionType::DQ);
  CHECK_FALSE(out.questions[2].feature.has_value());
  CHECK(out.answers.empty());
}

TEST_CASE("explicit targets replace question detection") {
  AnnotationSet targets;
  targets.questions.push_back({"amy", 2, {6, 23}, QuestionType::YN, std::nullopt, "gold"});
  targets.questions.push_back({"amy", 4, {0, 4}, QuestionType::YN, std::nullopt, "gold"});
  targets.questions.push_back({"nope", 0, {0, 1}, QuestionType::YN, std::nullopt, "gold"});
  Classifier c;
  c.annotator_id = "rule";
  const AnnotationSet out = classify_dialogues(sample(), c, &targets);
  REQUIRE(out.questions.size() == 2);
  CHECK(out.questions[0].span == Span{6, 23});
  CHECK(out.questions[0].q_type == QuestionType::WH);
  CHECK(out.questions[0].annotator_id == "rule");
}

TEST_CASE("training instances and tree mode") {
  const auto dialogues = sample();
  Classifier rule;
  rule.annotator_id = "gold";
  const AnnotationSet gold = classify_dialogues(dialogues, rule);
  std::size_t skipped = 99;
  const auto data = build_instances(dialogues, gold, rule.extractor, &skipped);
  CHECK(skipped == 0);
  REQUIRE(data.size() == 3);
  CHECK(data[0].fv.last_utt_incomplete);

  Classifier tree;
  tree.model = train_tree(data);
  const AnnotationSet out = classify_dialogues(dialogues, tree);
  for (std::size_t i = 0; i < out.questions.size(); ++i) CHECK(out.questions[i].q_type == gold.questions[i].q_type);
}
