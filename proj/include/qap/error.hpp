#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qap {

// Base of every error raised by the library. Violations found by validation
// are returned as data, never thrown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what), line_no_(line_no) {}
  std::size_t line_no() const { return line_no_; }

 private:
  std::size_t line_no_;
};

class DuplicateTurn : public Error {
 public:
  DuplicateTurn(const std::string& dialogue_id, long long turn_index)
      : Error("duplicate turn " + std::to_string(turn_index) + " in dialogue '" + dialogue_id + "'"),
        dialogue_id_(dialogue_id),
        turn_index_(turn_index) {}
  const std::string& dialogue_id() const { return dialogue_id_; }
  long long turn_index() const { return turn_index_; }

 private:
  std::string dialogue_id_;
  long long turn_index_;
};

class NonDenseTurns : public Error {
 public:
  explicit NonDenseTurns(const std::string& dialogue_id)
      : Error("turn indices of dialogue '" + dialogue_id + "' are not contiguous") {}
};

class EmptyTranscript : public Error {
 public:
  EmptyTranscript() : Error("transcript contains no utterances") {}
};

class UnknownTag : public Error {
 public:
  explicit UnknownTag(const std::string& value) : Error("unknown tag '" + value + "'"), value_(value) {}
  const std::string& value() const { return value_; }

 private:
  std::string value_;
};

class EmptyLexicon : public Error {
 public:
  explicit EmptyLexicon(const std::string& name) : Error("lexicon '" + name + "' has no entries") {}
};

class EmptyTrainingSet : public Error {
 public:
  EmptyTrainingSet() : Error("training set is empty") {}
};

class UnsupportedVersion : public Error {
 public:
  explicit UnsupportedVersion(int version)
      : Error("unsupported model version " + std::to_string(version)) {}
};

class MalformedModel : public Error {
 public:
  explicit MalformedModel(const std::string& what) : Error("malformed model: " + what) {}
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t a, std::size_t b)
      : Error("label sequences differ in length (" + std::to_string(a) + " vs " + std::to_string(b) + ")") {}
};

class EmptyInput : public Error {
 public:
  EmptyInput() : Error("label sequences are empty") {}
};

class NoAlignedItems : public Error {
 public:
  explicit NoAlignedItems(const std::string& what) : Error("no aligned items: " + what) {}
};

}  // namespace qap
