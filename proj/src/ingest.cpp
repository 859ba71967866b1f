#include "qap/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include "json.hpp"

#include "qap/error.hpp"
#include "qap/text.hpp"

namespace qap {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

namespace {

json parse_object(const std::string& line, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw MalformedLine(line_no, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw MalformedLine(line_no, "expected a JSON object");
  return j;
}

std::string require_string(const json& j, const char* field, std::size_t line_no) {
  auto it = j.find(field);
  if (it == j.end()) throw MalformedLine(line_no, std::string("missing field '") + field + "'");
  if (!it->is_string()) throw MalformedLine(line_no, std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

std::size_t require_index(const json& j, const char* field, std::size_t line_no) {
  auto it = j.find(field);
  if (it == j.end()) throw MalformedLine(line_no, std::string("missing field '") + field + "'");
  if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0)) {
    throw MalformedLine(line_no, std::string("field '") + field + "' must be a non-negative integer");
  }
  return it->get<std::size_t>();
}

// Groups utterances into dialogues, sorting turns and checking uniqueness and
// contiguity.
std::vector<Dialogue> assemble(std::map<std::string, Dialogue>& by_id) {
  std::vector<Dialogue> out;
  out.reserve(by_id.size());
  for (auto& [id, d] : by_id) {
    std::sort(d.utterances.begin(), d.utterances.end(),
              [](const Utterance& a, const Utterance& b) { return a.turn_index < b.turn_index; });
    for (std::size_t i = 1; i < d.utterances.size(); ++i) {
      const std::size_t prev = d.utterances[i - 1].turn_index, cur = d.utterances[i].turn_index;
      if (cur == prev) throw DuplicateTurn(id, static_cast<long long>(cur));
      if (cur != prev + 1) throw NonDenseTurns(id);
    }
    out.push_back(std::move(d));
  }
  return out;
}

bool strip_marker(std::string& text, const std::string& marker) {
  if (marker.empty()) return false;
  const std::string_view t = trim(text);
  if (t.size() < marker.size() || t.substr(t.size() - marker.size()) != marker) return false;
  text = std::string(trim(t.substr(0, t.size() - marker.size())));
  return true;
}

}  // namespace

std::vector<Dialogue> parse_dialogue_jsonl(std::istream& in) {
  std::map<std::string, Dialogue> by_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const json j = parse_object(line, line_no);

    Utterance u;
    u.dialogue_id = require_string(j, "dialogue_id", line_no);
    if (u.dialogue_id.empty()) throw MalformedLine(line_no, "empty dialogue_id");
    u.turn_index = require_index(j, "turn_index", line_no);
    u.speaker = require_string(j, "speaker", line_no);
    u.text = require_string(j, "text", line_no);
    if (trim(u.text).empty()) throw MalformedLine(line_no, "empty text");
    if (auto it = j.find("interrupted"); it != j.end() && !it->is_null()) {
      if (!it->is_boolean()) throw MalformedLine(line_no, "field 'interrupted' must be a boolean");
      u.interrupted = it->get<bool>();
    }
    std::string language = "en";
    if (auto it = j.find("language"); it != j.end() && !it->is_null()) {
      if (!it->is_string() || it->get<std::string>().empty()) {
        throw MalformedLine(line_no, "field 'language' must be a non-empty string");
      }
      language = it->get<std::string>();
    }

    auto [pos, inserted] = by_id.try_emplace(u.dialogue_id);
    Dialogue& d = pos->second;
    if (inserted) {
      d.dialogue_id = u.dialogue_id;
      d.language = language;
    } else if (d.language != language) {
      throw MalformedLine(line_no, "language '" + language + "' conflicts with '" + d.language +
                                       "' earlier in dialogue '" + d.dialogue_id + "'");
    }
    d.utterances.push_back(std::move(u));
  }
  return assemble(by_id);
}

void write_dialogue_jsonl(std::ostream& out, const std::vector<Dialogue>& dialogues) {
  for (const Dialogue& d : dialogues) {
    for (const Utterance& u : d.utterances) {
      ordered_json j;
      j["dialogue_id"] = u.dialogue_id;
      j["turn_index"] = u.turn_index;
      j["speaker"] = u.speaker;
      j["text"] = u.text;
      j["interrupted"] = u.interrupted;
      j["language"] = d.language;
      out << j.dump() << '\n';
    }
  }
}

std::vector<Dialogue> parse_tsv_transcript(std::istream& in, const TranscriptOptions& options) {
  Dialogue d;
  d.dialogue_id = options.dialogue_id;
  d.language = options.language;

  std::string line;
  std::size_t line_no = 0;
  long long last_number = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) throw MalformedLine(line_no, "expected 3 tab-separated columns");

    const std::string_view number_field = trim(std::string_view(line).substr(0, tab1));
    long long number = 0;
    auto [ptr, ec] = std::from_chars(number_field.data(), number_field.data() + number_field.size(), number);
    if (ec != std::errc() || ptr != number_field.data() + number_field.size() || number < 0) {
      throw MalformedLine(line_no, "line number column is not a non-negative integer");
    }
    if (number <= last_number) throw MalformedLine(line_no, "line numbers must increase");
    last_number = number;

    Utterance u;
    u.dialogue_id = d.dialogue_id;
    u.turn_index = d.utterances.size();
    u.speaker = std::string(trim(std::string_view(line).substr(tab1 + 1, tab2 - tab1 - 1)));
    u.text = std::string(trim(std::string_view(line).substr(tab2 + 1)));
    u.interrupted = strip_marker(u.text, options.interruption_marker);
    if (u.text.empty()) throw MalformedLine(line_no, "empty text");
    d.utterances.push_back(std::move(u));
  }
  if (d.utterances.empty()) throw EmptyTranscript();
  return {std::move(d)};
}

std::vector<Dialogue> parse_eaf(std::istream& in, const TranscriptOptions& options) {
  namespace pt = boost::property_tree;
  pt::ptree doc;
  try {
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw MalformedLine(e.line(), e.message());
  }
  const auto root = doc.get_child_optional("ANNOTATION_DOCUMENT");
  if (!root) throw MalformedLine(0, "missing ANNOTATION_DOCUMENT element");

  std::map<std::string, long long> slots;
  if (auto order = root->get_child_optional("TIME_ORDER")) {
    for (const auto& [tag, slot] : *order) {
      if (tag != "TIME_SLOT") continue;
      slots[slot.get<std::string>("<xmlattr>.TIME_SLOT_ID", "")] = slot.get<long long>("<xmlattr>.TIME_VALUE", -1);
    }
  }

  struct Timed {
    long long start;
    std::size_t tier;
    std::size_t seq;
    std::string speaker;
    std::string text;
  };
  std::vector<Timed> items;
  std::size_t tier_no = 0;
  for (const auto& [tag, tier] : *root) {
    if (tag != "TIER") continue;
    const std::string speaker =
        tier.get<std::string>("<xmlattr>.PARTICIPANT", tier.get<std::string>("<xmlattr>.TIER_ID", ""));
    for (const auto& [atag, ann] : tier) {
      if (atag != "ANNOTATION") continue;
      const auto aligned = ann.get_child_optional("ALIGNABLE_ANNOTATION");
      if (!aligned) continue;
      std::string text(trim(aligned->get<std::string>("ANNOTATION_VALUE", "")));
      if (text.empty()) continue;
      const auto slot = slots.find(aligned->get<std::string>("<xmlattr>.TIME_SLOT_REF1", ""));
      const long long start = slot == slots.end() ? -1 : slot->second;
      items.push_back({start, tier_no, items.size(), speaker, std::move(text)});
    }
    ++tier_no;
  }
  if (items.empty()) throw EmptyTranscript();
  std::stable_sort(items.begin(), items.end(), [](const Timed& a, const Timed& b) {
    return std::tie(a.start, a.tier, a.seq) < std::tie(b.start, b.tier, b.seq);
  });

  Dialogue d;
  d.dialogue_id = options.dialogue_id;
  d.language = options.language;
  for (Timed& t : items) {
    Utterance u;
    u.dialogue_id = d.dialogue_id;
    u.turn_index = d.utterances.size();
    u.speaker = std::move(t.speaker);
    u.text = std::move(t.text);
    u.interrupted = strip_marker(u.text, options.interruption_marker);
    if (u.text.empty()) continue;
    u.turn_index = d.utterances.size();
    d.utterances.push_back(std::move(u));
  }
  if (d.utterances.empty()) throw EmptyTranscript();
  return {std::move(d)};
}

namespace {

ItemKey read_ref(const json& j, std::size_t line_no) {
  if (!j.is_object()) throw MalformedLine(line_no, "question_ref must be an object");
  ItemKey key;
  key.dialogue_id = require_string(j, "dialogue_id", line_no);
  key.turn_index = require_index(j, "turn_index", line_no);
  key.span.start = require_index(j, "span_start", line_no);
  key.span.end = require_index(j, "span_end", line_no);
  return key;
}

template <class F>
auto tag_field(const json& j, const char* field, std::size_t line_no, F parse) {
  const std::string value = require_string(j, field, line_no);
  return parse(value);
}

}  // namespace

AnnotationSet read_annotations(std::istream& in) {
  AnnotationSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const json j = parse_object(line, line_no);
    const std::string kind = require_string(j, "kind", line_no);
    if (kind == "q") {
      QuestionAnnotation q;
      q.dialogue_id = require_string(j, "dialogue_id", line_no);
      q.turn_index = require_index(j, "turn_index", line_no);
      q.span.start = require_index(j, "span_start", line_no);
      q.span.end = require_index(j, "span_end", line_no);
      q.q_type = tag_field(j, "q_type", line_no, parse_question_type);
      if (auto it = j.find("feature"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw MalformedLine(line_no, "field 'feature' must be a string or null");
        q.feature = parse_feature(it->get<std::string>());
      }
      q.annotator_id = require_string(j, "annotator_id", line_no);
      set.questions.push_back(std::move(q));
    } else if (kind == "a") {
      AnswerAnnotation a;
      a.dialogue_id = require_string(j, "dialogue_id", line_no);
      a.turn_index = require_index(j, "turn_index", line_no);
      a.a_type = tag_field(j, "a_type", line_no, parse_answer_type);
      auto ref = j.find("question_ref");
      if (ref == j.end()) throw MalformedLine(line_no, "missing field 'question_ref'");
      a.question_ref = read_ref(*ref, line_no);
      a.annotator_id = require_string(j, "annotator_id", line_no);
      set.answers.push_back(std::move(a));
    } else {
      throw MalformedLine(line_no, "unknown kind '" + kind + "'");
    }
  }
  return set;
}

void write_annotations(std::ostream& out, const AnnotationSet& set) {
  for (const QuestionAnnotation& q : set.questions) {
    ordered_json j;
    j["kind"] = "q";
    j["dialogue_id"] = q.dialogue_id;
    j["turn_index"] = q.turn_index;
    j["span_start"] = q.span.start;
    j["span_end"] = q.span.end;
    j["q_type"] = to_string(q.q_type);
    j["feature"] = q.feature ? ordered_json(to_string(*q.feature)) : ordered_json(nullptr);
    j["annotator_id"] = q.annotator_id;
    out << j.dump() << '\n';
  }
  for (const AnswerAnnotation& a : set.answers) {
    ordered_json j;
    j["kind"] = "a";
    j["dialogue_id"] = a.dialogue_id;
    j["turn_index"] = a.turn_index;
    j["a_type"] = to_string(a.a_type);
    j["question_ref"] = {{"dialogue_id", a.question_ref.dialogue_id},
                         {"turn_index", a.question_ref.turn_index},
                         {"span_start", a.question_ref.span.start},
                         {"span_end", a.question_ref.span.end}};
    j["annotator_id"] = a.annotator_id;
    out << j.dump() << '\n';
  }
}

DatasetSplit split_by_utterance_count(const std::vector<Dialogue>& dialogues, std::size_t gold_utterances) {
  std::vector<const Dialogue*> ordered;
  for (const Dialogue& d : dialogues) ordered.push_back(&d);
  std::sort(ordered.begin(), ordered.end(),
            [](const Dialogue* a, const Dialogue* b) { return a->dialogue_id < b->dialogue_id; });

  DatasetSplit split;
  std::size_t remaining = gold_utterances;
  for (const Dialogue* d : ordered) {
    const std::size_t take = std::min(remaining, d->utterances.size());
    remaining -= take;
    Dialogue head{d->dialogue_id, d->language, {}}, tail{d->dialogue_id, d->language, {}};
    head.utterances.assign(d->utterances.begin(), d->utterances.begin() + static_cast<std::ptrdiff_t>(take));
    tail.utterances.assign(d->utterances.begin() + static_cast<std::ptrdiff_t>(take), d->utterances.end());
    if (!head.utterances.empty()) split.gold.push_back(std::move(head));
    if (!tail.utterances.empty()) split.test.push_back(std::move(tail));
  }
  return split;
}

DatasetSplit split_by_dialogue_ids(const std::vector<Dialogue>& dialogues, const std::set<std::string>& gold_ids) {
  DatasetSplit split;
  for (const Dialogue& d : dialogues) {
    (gold_ids.count(d.dialogue_id) ? split.gold : split.test).push_back(d);
  }
  return split;
}

}  // namespace qap
