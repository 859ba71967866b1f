#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace qap {

// Enumerator order doubles as the fixed tie-break order for leaf labels and
// majority baselines.
enum class QuestionType { YN, WH, DQ, CS, PQ };

enum class Feature { TMP, LOC, AG, CH, OW, RE, TH };

enum class AnswerType { PA, NA, FA, PHA, UA, UT, DA };

inline constexpr std::array<QuestionType, 5> kQuestionTypes = {
    QuestionType::YN, QuestionType::WH, QuestionType::DQ, QuestionType::CS, QuestionType::PQ};

// Row/column order used by the published confusion matrix.
inline constexpr std::array<QuestionType, 5> kReportOrder = {
    QuestionType::YN, QuestionType::DQ, QuestionType::PQ, QuestionType::CS, QuestionType::WH};

inline constexpr std::array<Feature, 7> kFeatures = {Feature::TMP, Feature::LOC, Feature::AG, Feature::CH,
                                                     Feature::OW,  Feature::RE,  Feature::TH};

inline constexpr std::array<AnswerType, 7> kAnswerTypes = {AnswerType::PA,  AnswerType::NA, AnswerType::FA,
                                                           AnswerType::PHA, AnswerType::UA, AnswerType::UT,
                                                           AnswerType::DA};

constexpr std::size_t index_of(QuestionType q) { return static_cast<std::size_t>(q); }
constexpr std::size_t index_of(Feature f) { return static_cast<std::size_t>(f); }
constexpr std::size_t index_of(AnswerType a) { return static_cast<std::size_t>(a); }

std::string_view to_string(QuestionType q);
std::string_view to_string(Feature f);
std::string_view to_string(AnswerType a);

// Strict, case-sensitive parsing of the closed tagsets. Throws UnknownTag.
QuestionType parse_question_type(std::string_view s);
Feature parse_feature(std::string_view s);
AnswerType parse_answer_type(std::string_view s);

}  // namespace qap
