#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qap/error.hpp"
#include "qap/tags.hpp"

namespace qap {

// Rows are gold labels, columns predicted labels.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> counts;

  std::size_t size() const { return labels.size(); }
  std::size_t support(std::size_t row) const;
  std::size_t predicted(std::size_t col) const;
  std::size_t total() const;
  std::size_t trace() const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

// Square matrix over `label_order` followed by any other observed labels in
// sorted order. Throws LengthMismatch, EmptyInput.
ConfusionMatrix confusion(std::span<const std::string> gold, std::span<const std::string> pred,
                          std::vector<std::string> label_order = {});
// Question types in report order (YN, DQ, PQ, CS, WH).
ConfusionMatrix confusion(std::span<const QuestionType> gold, std::span<const QuestionType> pred);

// Builds a matrix from an explicit grid, e.g. a published table.
ConfusionMatrix make_matrix(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> counts);

struct ClassScore {
  std::string label;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
  // Zero denominators are scored 0 and flagged here.
  bool precision_undefined = false;
  bool recall_undefined = false;
};

struct EvalReport {
  double accuracy = 0.0;
  std::vector<ClassScore> per_class;
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  bool has_undefined = false;
  ConfusionMatrix matrix;
};

// Throws EmptyInput when the matrix total is zero.
EvalReport score(const ConfusionMatrix& matrix);

nlohmann::ordered_json to_json(const EvalReport& report);

// Aligned plain-text table: one row per gold label, then a Support column.
std::string format_table(const ConfusionMatrix& matrix);

template <class Label>
void check_aligned(std::span<const Label> a, std::span<const Label> b) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  if (a.empty()) throw EmptyInput();
}

template <class Label>
double observed_agreement(std::span<const Label> a, std::span<const Label> b) {
  check_aligned(a, b);
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i] ? 1 : 0;
  return static_cast<double>(same) / static_cast<double>(a.size());
}

// Chance agreement from the two annotators' marginal label distributions.
template <class Label>
double expected_agreement(std::span<const Label> a, std::span<const Label> b) {
  check_aligned(a, b);
  std::map<Label, std::size_t> ma, mb;
  for (const Label& x : a) ++ma[x];
  for (const Label& x : b) ++mb[x];
  const double n = static_cast<double>(a.size());
  double pe = 0.0;
  for (const auto& [label, count] : ma) {
    auto it = mb.find(label);
    if (it != mb.end()) pe += (static_cast<double>(count) / n) * (static_cast<double>(it->second) / n);
  }
  return pe;
}

// Cohen's kappa, (A_o - A_e) / (1 - A_e). Two identical constant sequences
// (A_o = A_e = 1) score 1.
template <class Label>
double cohen_kappa(std::span<const Label> a, std::span<const Label> b) {
  const double ao = observed_agreement(a, b);
  const double ae = expected_agreement(a, b);
  if (ae >= 1.0) return ao >= 1.0 ? 1.0 : 0.0;
  return (ao - ae) / (1.0 - ae);
}

template <class Label>
double observed_agreement(const std::vector<Label>& a, const std::vector<Label>& b) {
  return observed_agreement(std::span<const Label>(a), std::span<const Label>(b));
}

template <class Label>
double cohen_kappa(const std::vector<Label>& a, const std::vector<Label>& b) {
  return cohen_kappa(std::span<const Label>(a), std::span<const Label>(b));
}

}  // namespace qap
