#include "qap/tags.hpp"

#include "qap/error.hpp"

namespace qap {

namespace {

constexpr std::array<std::string_view, 5> kQuestionNames = {"YN", "WH", "DQ", "CS", "PQ"};
constexpr std::array<std::string_view, 7> kFeatureNames = {"TMP", "LOC", "AG", "CH", "OW", "RE", "TH"};
constexpr std::array<std::string_view, 7> kAnswerNames = {"PA", "NA", "FA", "PHA", "UA", "UT", "DA"};

template <class Tag, std::size_t N>
Tag parse_from(const std::array<std::string_view, N>& names, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<Tag>(i);
  }
  throw UnknownTag(std::string(s));
}

}  // namespace

std::string_view to_string(QuestionType q) { return kQuestionNames[index_of(q)]; }
std::string_view to_string(Feature f) { return kFeatureNames[index_of(f)]; }
std::string_view to_string(AnswerType a) { return kAnswerNames[index_of(a)]; }

QuestionType parse_question_type(std::string_view s) { return parse_from<QuestionType>(kQuestionNames, s); }
Feature parse_feature(std::string_view s) { return parse_from<Feature>(kFeatureNames, s); }
AnswerType parse_answer_type(std::string_view s) { return parse_from<AnswerType>(kAnswerNames, s); }

}  // namespace qap
