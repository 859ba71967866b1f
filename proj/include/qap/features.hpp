#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qap/lexicon.hpp"
#include "qap/model.hpp"
#include "qap/text.hpp"

namespace qap {

// The eight surface predictors of a question, in the fixed column order used
// for split tie-breaking.
struct FeatureVector {
  bool has_wh = false;
  bool has_or = false;
  bool has_inversion = false;
  bool has_tag = false;
  bool last_utt_similar = false;
  bool last_utt_incomplete = false;
  bool has_cliche = false;
  std::size_t length = 0;

  friend auto operator<=>(const FeatureVector&, const FeatureVector&) = default;
};

enum class FeatureId { HasWh, HasOr, HasInversion, HasTag, LastUttSimilar, LastUttIncomplete, HasCliche, Length };

inline constexpr std::array<FeatureId, 8> kFeatureIds = {
    FeatureId::HasWh,          FeatureId::HasOr,          FeatureId::HasInversion,      FeatureId::HasTag,
    FeatureId::LastUttSimilar, FeatureId::LastUttIncomplete, FeatureId::HasCliche, FeatureId::Length};

std::string_view to_string(FeatureId id);
std::optional<FeatureId> parse_feature_id(std::string_view name);
bool boolean_value(const FeatureVector& fv, FeatureId id);  // id != Length

struct ExtractorConfig {
  Lexicon wh_lexicon;
  Lexicon aux_lexicon;
  Lexicon tag_lexicon;
  Lexicon cliche_lexicon;
  double similarity_threshold = 0.5;
  std::string language = "en";

  // Shipped English word lists.
  static ExtractorConfig english();
};

// Reads the JSON form: each *_lexicon field is an inline array of entries or
// a path to a lexicon file (relative to `base_dir`); missing fields keep the
// English defaults. Throws Error on a threshold outside [0, 1].
ExtractorConfig load_extractor_config(std::istream& in, const std::filesystem::path& base_dir = {});

// |set(a) ∩ set(b)| / |set(a)|, or 0 when `a` is empty.
double overlap_ratio(const Tokens& a, const Tokens& b);

// Shallow stand-in for a parse: an auxiliary followed by a non-auxiliary.
bool detect_inversion(const Tokens& tokens, const ExtractorConfig& cfg);

FeatureVector extract_features(const Tokens& question, const Utterance* previous, const ExtractorConfig& cfg);

// Tokenizes the span of `question` and extracts from it.
FeatureVector extract_features(const Utterance& question, Span span, const Utterance* previous,
                               const ExtractorConfig& cfg);

}  // namespace qap
