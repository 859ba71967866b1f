#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>

#include "qap/features.hpp"
#include "qap/tags.hpp"
#include "qap/text.hpp"

namespace qap {

// wh-token -> semantic role of the questioned constituent.
class WhFeatureMap {
 public:
  WhFeatureMap() = default;
  explicit WhFeatureMap(std::map<std::string, Feature, std::less<>> entries) : entries_(std::move(entries)) {}

  // who/whom -> AG, whose -> OW, where -> LOC, when -> TMP, why -> RE,
  // what -> TH, which/how -> CH.
  static WhFeatureMap english();

  std::optional<Feature> lookup(std::string_view token) const;
  const std::map<std::string, Feature, std::less<>>& entries() const { return entries_; }
  // Every single-token entry of `wh` has a mapping.
  bool covers(const Lexicon& wh) const;

 private:
  std::map<std::string, Feature, std::less<>> entries_;
};

// Two whitespace-separated columns per line: wh-token, feature tag. '#'
// comments and blank lines are skipped. Throws MalformedLine, UnknownTag.
WhFeatureMap load_wh_feature_map(std::istream& in);
WhFeatureMap load_wh_feature_map(const std::filesystem::path& path);

struct RuleConfig {
  // Questions up to this many words are "short": eligible for completion
  // suggestions, and phatic when they carry a cliche.
  std::size_t cliche_length_cap = 5;
};

// Precedence order, first match wins:
//   1. WH  has_wh and no cliche
//   2. DQ  has_or
//   3. YN  has_inversion, or (no cliche and (has_tag, or longer than the
//          cap, or not following an interrupted turn))
//   4. CS  follows an interrupted turn and is similar to it or short
//   5. PQ  otherwise
QuestionType rule_classify(const FeatureVector& fv, const RuleConfig& cfg = {});

// Feature of the first token present in `map`, if any.
std::optional<Feature> map_wh_feature(const Tokens& tokens, const WhFeatureMap& map);

}  // namespace qap
