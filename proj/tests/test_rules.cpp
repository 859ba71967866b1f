#include "doctest.h"

#include <random>
#include <sstream>

#include "qap/error.hpp"
#include "qap/rules.hpp"

using namespace qap;

namespace {

QuestionType classify(std::string_view text, const Utterance* prev = nullptr) {
  static const ExtractorConfig cfg = ExtractorConfig::english();
  return rule_classify(extract_features(tokenize(text), prev, cfg));
}

}  // namespace

TEST_CASE("rule classifier on guideline examples") {
  CHECK(classify("Which man is running?") == QuestionType::WH);
  CHECK(classify("Do you go on Monday or on Tuesday?") == QuestionType::DQ);
  CHECK(classify("Do you want coffee or tea?") == QuestionType::DQ);
  CHECK(classify("You saw him?") == QuestionType::YN);
  CHECK(classify("right?") == QuestionType::PQ);
  CHECK(classify("oh yeah?") == QuestionType::PQ);
  CHECK(classify("you know?") == QuestionType::PQ);
  const Utterance interrupted{"amy", 746, "A", "it includes heat and uhm, I think", true};
  CHECK(classify("Water?", &interrupted) == QuestionType::CS);
}

TEST_CASE("rule classifier on further shapes") {
  CHECK(classify("When will you guys get off?") == QuestionType::WH);
  CHECK(classify("It's cold, isn't it?") == QuestionType::YN);
  CHECK(classify("Is it really?") == QuestionType::YN);
  CHECK(classify("Really?") == QuestionType::PQ);
  // A wh-word inside a phatic phrase does not make a wh-question.
  CHECK(classify("what, you know?") == QuestionType::PQ);
  const Utterance interrupted{"d", 0, "A", "so we went to the", true};
  CHECK(classify("the beach, you know?", &interrupted) == QuestionType::CS);
  CHECK(classify("so we went to the beach and then we drove all the way back home?", &interrupted) ==
        QuestionType::YN);
}

TEST_CASE("precedence soundness over every feature vector") {
  for (unsigned bits = 0; bits < 128; ++bits) {
    for (std::size_t length : {0u, 1u, 5u, 6u, 20u}) {
      FeatureVector fv{bool(bits & 1),  bool(bits & 2),  bool(bits & 4), bool(bits & 8),
                       bool(bits & 16), bool(bits & 32), bool(bits & 64), length};
      const QuestionType t = rule_classify(fv);
      CHECK(t == rule_classify(fv));
      if (fv.has_wh && !fv.has_cliche) CHECK(t == QuestionType::WH);
      if (!fv.has_wh && fv.has_or) CHECK(t == QuestionType::DQ);
      if (t == QuestionType::CS) CHECK(fv.last_utt_incomplete);
    }
  }
}

TEST_CASE("wh feature mapping") {
  const WhFeatureMap map = WhFeatureMap::english();
  CHECK(map_wh_feature({"where", "did", "you", "go"}, map) == Feature::LOC);
  CHECK_FALSE(map_wh_feature({"you", "saw", "him"}, map).has_value());
  CHECK(map_wh_feature({"who", "called"}, map) == Feature::AG);
  CHECK(map_wh_feature({"so", "whose", "is", "it"}, map) == Feature::OW);
  CHECK(map.covers(ExtractorConfig::english().wh_lexicon));
}

TEST_CASE("wh feature map file") {
  std::istringstream in("# custom\nwhere LOC\nwhen\tTMP\n\n");
  const WhFeatureMap map = load_wh_feature_map(in);
  CHECK(map.entries().size() == 2);
  CHECK(map.lookup("when") == Feature::TMP);
  std::istringstream bad_tag("where PLACE\n");
  CHECK_THROWS_AS(load_wh_feature_map(bad_tag), UnknownTag);
  std::istringstream bad_cols("where\n");
  CHECK_THROWS_AS(load_wh_feature_map(bad_cols), MalformedLine);
}
