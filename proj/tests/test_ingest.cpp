#include "doctest.h"

#include <sstream>

#include "qap/error.hpp"
#include "qap/ingest.hpp"
#include "qap/lexicon.hpp"

using namespace qap;

TEST_CASE("dialogue jsonl: minimal input") {
  std::istringstream in(
      R"({"dialogue_id":"amy","turn_index":1,"speaker":"B","text":"Water?"})"
      "\n"
      R"({"dialogue_id":"amy","turn_index":0,"speaker":"A","text":"it includes heat and uhm, I think","interrupted":true})"
      "\n");
  const auto ds = parse_dialogue_jsonl(in);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].language == "en");
  REQUIRE(ds[0].utterances.size() == 2);
  CHECK(ds[0].utterances[0].interrupted);
  CHECK(ds[0].utterances[1].text == "Water?");
  CHECK_FALSE(ds[0].utterances[1].interrupted);
}

TEST_CASE("dialogue jsonl: errors") {
  SUBCASE("missing text") {
    std::istringstream in(R"({"dialogue_id":"a","turn_index":0,"speaker":"A"})");
    try {
      parse_dialogue_jsonl(in);
      FAIL("expected MalformedLine");
    } catch (const MalformedLine& e) {
      CHECK(e.line_no() == 1);
    }
  }
  SUBCASE("duplicate turn") {
    std::istringstream in(R"({"dialogue_id":"a","turn_index":0,"speaker":"A","text":"x"})"
                          "\n"
                          R"({"dialogue_id":"a","turn_index":0,"speaker":"B","text":"y"})");
    CHECK_THROWS_AS(parse_dialogue_jsonl(in), DuplicateTurn);
  }
  SUBCASE("gap in turns") {
    std::istringstream in(R"({"dialogue_id":"a","turn_index":0,"speaker":"A","text":"x"})"
                          "\n"
                          R"({"dialogue_id":"a","turn_index":2,"speaker":"B","text":"y"})");
    CHECK_THROWS_AS(parse_dialogue_jsonl(in), NonDenseTurns);
  }
  SUBCASE("blank text") {
    std::istringstream in(R"({"dialogue_id":"a","turn_index":0,"speaker":"A","text":"   "})");
    CHECK_THROWS_AS(parse_dialogue_jsonl(in), MalformedLine);
  }
  SUBCASE("not json, reported with its line") {
    std::istringstream in("\n\n{oops\n");
    try {
      parse_dialogue_jsonl(in);
      FAIL("expected MalformedLine");
    } catch (const MalformedLine& e) {
      CHECK(e.line_no() == 3);
    }
  }
  SUBCASE("conflicting language") {
    std::istringstream in(R"({"dialogue_id":"a","turn_index":0,"speaker":"A","text":"x","language":"es"})"
                          "\n"
                          R"({"dialogue_id":"a","turn_index":1,"speaker":"B","text":"y","language":"nl"})");
    CHECK_THROWS_AS(parse_dialogue_jsonl(in), MalformedLine);
  }
}

TEST_CASE("parsing does not depend on line order or chunking") {
  const std::string a = R"({"dialogue_id":"b","turn_index":0,"speaker":"A","text":"hi"})";
  const std::string b = R"({"dialogue_id":"a","turn_index":1,"speaker":"B","text":"yes?"})";
  const std::string c = R"({"dialogue_id":"a","turn_index":0,"speaker":"A","text":"so"})";
  std::istringstream in1(a + "\n" + b + "\n" + c + "\n"), in2(c + "\r\n" + a + "\n\n" + b);
  auto d1 = parse_dialogue_jsonl(in1);
  auto d2 = parse_dialogue_jsonl(in2);
  CHECK(d1 == d2);
  CHECK(d1.front().dialogue_id == "a");
}

TEST_CASE("tsv transcript") {
  std::istringstream in("746\tA\tit includes heat and uhm, I think --\n747\tB\tWater?\n");
  TranscriptOptions opt;
  opt.dialogue_id = "amy";
  const auto ds = parse_tsv_transcript(in, opt);
  REQUIRE(ds.size() == 1);
  const auto& u = ds[0].utterances;
  REQUIRE(u.size() == 2);
  CHECK(u[0].interrupted);
  CHECK(u[0].text == "it includes heat and uhm, I think");
  CHECK(u[0].turn_index == 0);
  CHECK_FALSE(u[1].interrupted);
  CHECK(u[1].text == "Water?");
  CHECK(u[1].speaker == "B");
}

TEST_CASE("tsv transcript errors") {
  TranscriptOptions opt;
  opt.dialogue_id = "x";
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_tsv_transcript(empty, opt), EmptyTranscript);
  std::istringstream two_cols("1\tA\n");
  CHECK_THROWS_AS(parse_tsv_transcript(two_cols, opt), MalformedLine);
  std::istringstream bad_number("x\tA\thello\n");
  CHECK_THROWS_AS(parse_tsv_transcript(bad_number, opt), MalformedLine);
  std::istringstream only_marker("1\tA\t--\n");
  CHECK_THROWS_AS(parse_tsv_transcript(only_marker, opt), MalformedLine);
  opt.interruption_marker = "...";
  std::istringstream custom("1\tA\tso I was...\n");
  CHECK(parse_tsv_transcript(custom, opt)[0].utterances[0].interrupted);
}

TEST_CASE("eaf adapter orders annotations by time across tiers") {
  std::istringstream in(R"(<?xml version="1.0" encoding="UTF-8"?>
<ANNOTATION_DOCUMENT>
  <TIME_ORDER>
    <TIME_SLOT TIME_SLOT_ID="ts1" TIME_VALUE="100"/>
    <TIME_SLOT TIME_SLOT_ID="ts2" TIME_VALUE="900"/>
    <TIME_SLOT TIME_SLOT_ID="ts3" TIME_VALUE="1000"/>
    <TIME_SLOT TIME_SLOT_ID="ts4" TIME_VALUE="1500"/>
  </TIME_ORDER>
  <TIER TIER_ID="B-words" PARTICIPANT="B">
    <ANNOTATION><ALIGNABLE_ANNOTATION ANNOTATION_ID="a2" TIME_SLOT_REF1="ts3" TIME_SLOT_REF2="ts4">
      <ANNOTATION_VALUE>Water?</ANNOTATION_VALUE></ALIGNABLE_ANNOTATION></ANNOTATION>
  </TIER>
  <TIER TIER_ID="A">
    <ANNOTATION><ALIGNABLE_ANNOTATION ANNOTATION_ID="a1" TIME_SLOT_REF1="ts1" TIME_SLOT_REF2="ts2">
      <ANNOTATION_VALUE>it includes heat and uhm, I think --</ANNOTATION_VALUE></ALIGNABLE_ANNOTATION></ANNOTATION>
  </TIER>
</ANNOTATION_DOCUMENT>)");
  TranscriptOptions opt;
  opt.dialogue_id = "amy";
  const auto ds = parse_eaf(in, opt);
  REQUIRE(ds[0].utterances.size() == 2);
  CHECK(ds[0].utterances[0].speaker == "A");
  CHECK(ds[0].utterances[0].interrupted);
  CHECK(ds[0].utterances[1].speaker == "B");
  CHECK(ds[0].utterances[1].turn_index == 1);

  std::istringstream broken("<ANNOTATION_DOCUMENT><TIER>");
  CHECK_THROWS_AS(parse_eaf(broken, opt), MalformedLine);
}

TEST_CASE("annotation jsonl") {
  SUBCASE("question with feature") {
    std::istringstream in(
        R"({"kind":"q","dialogue_id":"d","turn_index":3,"span_start":0,"span_end":10,"q_type":"WH","feature":"LOC","annotator_id":"ann1"})");
    const auto set = read_annotations(in);
    REQUIRE(set.questions.size() == 1);
    CHECK(set.questions[0].q_type == QuestionType::WH);
    CHECK(set.questions[0].feature == Feature::LOC);
  }
  SUBCASE("unknown tag") {
    std::istringstream in(
        R"({"kind":"q","dialogue_id":"d","turn_index":3,"span_start":0,"span_end":10,"q_type":"XX","feature":null,"annotator_id":"a"})");
    CHECK_THROWS_AS(read_annotations(in), UnknownTag);
  }
  SUBCASE("unknown kind") {
    std::istringstream in(R"({"kind":"z"})");
    CHECK_THROWS_AS(read_annotations(in), MalformedLine);
  }
  SUBCASE("answer without reference") {
    std::istringstream in(R"({"kind":"a","dialogue_id":"d","turn_index":4,"a_type":"PA","annotator_id":"a"})");
    CHECK_THROWS_AS(read_annotations(in), MalformedLine);
  }
  SUBCASE("write then read") {
    AnnotationSet set;
    set.questions.push_back({"d", 3, {0, 10}, QuestionType::WH, Feature::LOC, "a"});
    set.questions.push_back({"d", 5, {2, 4}, QuestionType::PQ, std::nullopt, "a"});
    set.answers.push_back({"d", 4, AnswerType::FA, set.questions[0].key(), "a"});
    std::ostringstream out;
    write_annotations(out, set);
    std::istringstream in(out.str());
    const auto back = read_annotations(in);
    CHECK(back == set);
    std::ostringstream again;
    write_annotations(again, back);
    CHECK(again.str() == out.str());
  }
}

TEST_CASE("lexicon loading") {
  std::istringstream two("you know?\nreally?\n");
  CHECK(load_lexicon(two, "cliche").size() == 2);
  std::istringstream dup("# phatic markers\nReally?\nreally?\n\n  really?  \n");
  const Lexicon lex = load_lexicon(dup, "c");
  CHECK(lex.size() == 1);
  CHECK(lex.entries().count("really?") == 1);
  std::istringstream empty("# nothing here\n\n");
  CHECK_THROWS_AS(load_lexicon(empty, "e"), EmptyLexicon);
}

TEST_CASE("lexicon matching is case-insensitive and token based") {
  const Lexicon lex("c", {"You know?", "oh yeah"});
  CHECK(lex.matches_anywhere(tokenize("well, YOU KNOW, it was fine")));
  CHECK(lex.matches_suffix(tokenize("it was fine, oh yeah?")));
  CHECK_FALSE(lex.matches_suffix(tokenize("oh yeah it was fine")));
  CHECK_FALSE(lex.matches_anywhere(tokenize("you knowing")));
}

TEST_CASE("dataset split by utterance count") {
  std::vector<Dialogue> ds;
  for (std::string id : {"b", "a"}) {
    Dialogue d{id, "en", {}};
    for (std::size_t t = 0; t < 4; ++t) d.utterances.push_back({id, t, "S", "u" + std::to_string(t), false});
    ds.push_back(d);
  }
  const auto split = split_by_utterance_count(ds, 6);
  REQUIRE(split.gold.size() == 2);
  CHECK(split.gold[0].dialogue_id == "a");
  CHECK(split.gold[1].utterances.size() == 2);
  REQUIRE(split.test.size() == 1);
  CHECK(split.test[0].utterances.front().turn_index == 2);

  const auto by_id = split_by_dialogue_ids(ds, {"b"});
  CHECK(by_id.gold.size() == 1);
  CHECK(by_id.test.front().dialogue_id == "a");
}
