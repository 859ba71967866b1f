#include "qap/rules.hpp"

#include <fstream>
#include <sstream>

#include "qap/error.hpp"

namespace qap {

WhFeatureMap WhFeatureMap::english() {
  return WhFeatureMap({
      {"who", Feature::AG},
      {"whom", Feature::AG},
      {"whose", Feature::OW},
      {"where", Feature::LOC},
      {"when", Feature::TMP},
      {"why", Feature::RE},
      {"what", Feature::TH},
      {"which", Feature::CH},
      {"how", Feature::CH},
  });
}

std::optional<Feature> WhFeatureMap::lookup(std::string_view token) const {
  auto it = entries_.find(token);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool WhFeatureMap::covers(const Lexicon& wh) const {
  for (const std::string& entry : wh.entries()) {
    const Tokens t = tokenize(entry);
    if (t.size() == 1 && !lookup(t.front())) return false;
  }
  return true;
}

WhFeatureMap load_wh_feature_map(std::istream& in) {
  std::map<std::string, Feature, std::less<>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream fields{std::string(t)};
    std::string word, tag, extra;
    if (!(fields >> word >> tag) || (fields >> extra)) {
      throw MalformedLine(line_no, "expected two columns: wh-token and feature tag");
    }
    const Tokens w = tokenize(word);
    if (w.size() != 1) throw MalformedLine(line_no, "wh-token must be a single word");
    entries[w.front()] = parse_feature(tag);
  }
  return WhFeatureMap(std::move(entries));
}

WhFeatureMap load_wh_feature_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open wh feature map " + path.string());
  return load_wh_feature_map(in);
}

QuestionType rule_classify(const FeatureVector& fv, const RuleConfig& cfg) {
  const bool is_short = fv.length <= cfg.cliche_length_cap;
  if (fv.has_wh && !fv.has_cliche) return QuestionType::WH;
  if (fv.has_or) return QuestionType::DQ;
  if (fv.has_inversion || (!fv.has_cliche && (fv.has_tag || !is_short || !fv.last_utt_incomplete))) {
    return QuestionType::YN;
  }
  if (fv.last_utt_incomplete && (fv.last_utt_similar || is_short)) return QuestionType::CS;
  return QuestionType::PQ;
}

std::optional<Feature> map_wh_feature(const Tokens& tokens, const WhFeatureMap& map) {
  for (const std::string& t : tokens) {
    if (auto f = map.lookup(t)) return f;
  }
  return std::nullopt;
}

}  // namespace qap
