#include "qap/features.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "json.hpp"
#include "qap/error.hpp"

namespace qap {

namespace {

constexpr std::array<std::string_view, 8> kFeatureIdNames = {
    "has_wh", "has_or", "has_inversion", "has_tag", "last_utt_similar", "last_utt_incomplete", "has_cliche", "length"};

Lexicon lexicon_field(const nlohmann::json& j, const char* field, const Lexicon& fallback,
                      const std::filesystem::path& base_dir) {
  auto it = j.find(field);
  if (it == j.end() || it->is_null()) return fallback;
  if (it->is_string()) {
    std::filesystem::path p = it->get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return load_lexicon(p);
  }
  if (it->is_array()) {
    std::vector<std::string> entries;
    for (const auto& e : *it) {
      if (!e.is_string()) throw Error(std::string("extractor config: '") + field + "' entries must be strings");
      entries.push_back(e.get<std::string>());
    }
    return Lexicon(field, entries);
  }
  throw Error(std::string("extractor config: '") + field + "' must be a path or an array");
}

}  // namespace

std::string_view to_string(FeatureId id) { return kFeatureIdNames[static_cast<std::size_t>(id)]; }

std::optional<FeatureId> parse_feature_id(std::string_view name) {
  for (std::size_t i = 0; i < kFeatureIdNames.size(); ++i) {
    if (kFeatureIdNames[i] == name) return static_cast<FeatureId>(i);
  }
  return std::nullopt;
}

bool boolean_value(const FeatureVector& fv, FeatureId id) {
  switch (id) {
    case FeatureId::HasWh: return fv.has_wh;
    case FeatureId::HasOr: return fv.has_or;
    case FeatureId::HasInversion: return fv.has_inversion;
    case FeatureId::HasTag: return fv.has_tag;
    case FeatureId::LastUttSimilar: return fv.last_utt_similar;
    case FeatureId::LastUttIncomplete: return fv.last_utt_incomplete;
    case FeatureId::HasCliche: return fv.has_cliche;
    case FeatureId::Length: break;
  }
  return fv.length > 0;
}

ExtractorConfig ExtractorConfig::english() {
  return ExtractorConfig{
      Lexicon("wh", {"who", "whom", "whose", "what", "which", "where", "when", "why", "how"}),
      Lexicon("aux", {"do", "does", "did", "is", "are", "was", "were", "am", "can", "could", "will", "would", "shall",
                      "should", "may", "might", "must", "have", "has", "had"}),
      Lexicon("tag", {"isn't it", "right"}),
      Lexicon("cliche", {"you know", "really", "oh yeah", "right", "okay", "huh"}),
      0.5,
      "en",
  };
}

ExtractorConfig load_extractor_config(std::istream& in, const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("extractor config: ") + e.what());
  }
  if (!j.is_object()) throw Error("extractor config: expected a JSON object");

  ExtractorConfig cfg = ExtractorConfig::english();
  cfg.wh_lexicon = lexicon_field(j, "wh_lexicon", cfg.wh_lexicon, base_dir);
  cfg.aux_lexicon = lexicon_field(j, "aux_lexicon", cfg.aux_lexicon, base_dir);
  cfg.tag_lexicon = lexicon_field(j, "tag_lexicon", cfg.tag_lexicon, base_dir);
  cfg.cliche_lexicon = lexicon_field(j, "cliche_lexicon", cfg.cliche_lexicon, base_dir);
  if (auto it = j.find("similarity_threshold"); it != j.end()) {
    if (!it->is_number()) throw Error("extractor config: similarity_threshold must be a number");
    cfg.similarity_threshold = it->get<double>();
  }
  if (auto it = j.find("language"); it != j.end()) {
    if (!it->is_string()) throw Error("extractor config: language must be a string");
    cfg.language = it->get<std::string>();
  }
  if (!(cfg.similarity_threshold >= 0.0 && cfg.similarity_threshold <= 1.0)) {
    throw Error("extractor config: similarity_threshold must lie in [0, 1]");
  }
  return cfg;
}

double overlap_ratio(const Tokens& a, const Tokens& b) {
  const std::set<std::string> sa(a.begin(), a.end());
  if (sa.empty()) return 0.0;
  const std::set<std::string> sb(b.begin(), b.end());
  const auto shared = std::count_if(sa.begin(), sa.end(), [&](const std::string& t) { return sb.count(t) > 0; });
  return static_cast<double>(shared) / static_cast<double>(sa.size());
}

bool detect_inversion(const Tokens& tokens, const ExtractorConfig& cfg) {
  return tokens.size() >= 2 && cfg.aux_lexicon.contains_token(tokens[0]) && !cfg.aux_lexicon.contains_token(tokens[1]);
}

FeatureVector extract_features(const Tokens& question, const Utterance* previous, const ExtractorConfig& cfg) {
  FeatureVector fv;
  fv.has_wh = cfg.wh_lexicon.matches_anywhere(question);
  fv.has_or = std::find(question.begin(), question.end(), "or") != question.end();
  fv.has_inversion = detect_inversion(question, cfg);
  fv.has_tag = cfg.tag_lexicon.matches_suffix(question);
  fv.has_cliche = cfg.cliche_lexicon.matches_anywhere(question);
  fv.length = question.size();
  if (previous) {
    fv.last_utt_similar = overlap_ratio(question, tokenize(previous->text)) >= cfg.similarity_threshold;
    fv.last_utt_incomplete = previous->interrupted;
  }
  return fv;
}

FeatureVector extract_features(const Utterance& question, Span span, const Utterance* previous,
                               const ExtractorConfig& cfg) {
  return extract_features(tokenize(slice_codepoints(question.text, span.start, span.end)), previous, cfg);
}

}  // namespace qap
