#include "qap/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "qap/error.hpp"

namespace qap {

namespace {

std::string normalize_entry(std::string_view raw) {
  std::string s(trim(raw));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
  });
  return s;
}

bool run_matches(const Tokens& tokens, std::size_t at, const Tokens& seq) {
  if (at + seq.size() > tokens.size()) return false;
  return std::equal(seq.begin(), seq.end(), tokens.begin() + static_cast<std::ptrdiff_t>(at));
}

}  // namespace

Lexicon::Lexicon(std::string name, const std::vector<std::string>& entries) : name_(std::move(name)) {
  for (const std::string& raw : entries) {
    std::string entry = normalize_entry(raw);
    if (entry.empty() || tokenize(entry).empty()) continue;
    entries_.insert(std::move(entry));
  }
  if (entries_.empty()) throw EmptyLexicon(name_);
  for (const std::string& e : entries_) sequences_.push_back(tokenize(e));
}

Lexicon::Lexicon(std::string name, std::initializer_list<std::string_view> entries)
    : Lexicon(std::move(name), std::vector<std::string>(entries.begin(), entries.end())) {}

bool Lexicon::contains_token(std::string_view token) const {
  return std::any_of(sequences_.begin(), sequences_.end(),
                     [&](const Tokens& seq) { return seq.size() == 1 && seq.front() == token; });
}

bool Lexicon::matches_anywhere(const Tokens& tokens) const {
  for (const Tokens& seq : sequences_) {
    for (std::size_t i = 0; i + seq.size() <= tokens.size(); ++i) {
      if (run_matches(tokens, i, seq)) return true;
    }
  }
  return false;
}

bool Lexicon::matches_suffix(const Tokens& tokens) const {
  return std::any_of(sequences_.begin(), sequences_.end(), [&](const Tokens& seq) {
    return seq.size() <= tokens.size() && run_matches(tokens, tokens.size() - seq.size(), seq);
  });
}

Lexicon load_lexicon(std::istream& in, std::string name) {
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    entries.emplace_back(t);
  }
  return Lexicon(std::move(name), entries);
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file " + path.string());
  return load_lexicon(in, path.stem().string());
}

}  // namespace qap
