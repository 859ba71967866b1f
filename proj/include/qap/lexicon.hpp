#pragma once

#include <filesystem>
#include <initializer_list>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qap/text.hpp"

namespace qap {

// A named set of lowercase word sequences. Entries are stored as written
// (lowercased, trimmed) and matched as token sequences, so "you know?" and
// "You know" match the same text.
class Lexicon {
 public:
  // Throws EmptyLexicon when no entry survives normalization.
  Lexicon(std::string name, const std::vector<std::string>& entries);
  Lexicon(std::string name, std::initializer_list<std::string_view> entries);

  const std::string& name() const { return name_; }
  const std::set<std::string>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  bool contains_token(std::string_view token) const;
  // Some entry occurs as a contiguous run anywhere in `tokens`.
  bool matches_anywhere(const Tokens& tokens) const;
  // Some entry occurs as the final run of `tokens`.
  bool matches_suffix(const Tokens& tokens) const;

  friend bool operator==(const Lexicon& a, const Lexicon& b) { return a.name_ == b.name_ && a.entries_ == b.entries_; }

 private:
  std::string name_;
  std::set<std::string> entries_;
  std::vector<Tokens> sequences_;
};

// One entry per line; blank lines and lines starting with '#' are skipped.
Lexicon load_lexicon(std::istream& in, std::string name);
Lexicon load_lexicon(const std::filesystem::path& path);

}  // namespace qap
