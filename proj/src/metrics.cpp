#include "qap/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

namespace qap {

std::size_t ConfusionMatrix::support(std::size_t row) const {
  std::size_t s = 0;
  for (std::size_t v : counts[row]) s += v;
  return s;
}

std::size_t ConfusionMatrix::predicted(std::size_t col) const {
  std::size_t s = 0;
  for (const auto& row : counts) s += row[col];
  return s;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < size(); ++i) s += support(i);
  return s;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < size(); ++i) s += counts[i][i];
  return s;
}

ConfusionMatrix confusion(std::span<const std::string> gold, std::span<const std::string> pred,
                          std::vector<std::string> label_order) {
  check_aligned(gold, pred);
  std::set<std::string> extra(gold.begin(), gold.end());
  extra.insert(pred.begin(), pred.end());
  for (const std::string& l : label_order) extra.erase(l);
  label_order.insert(label_order.end(), extra.begin(), extra.end());

  ConfusionMatrix m;
  m.labels = std::move(label_order);
  m.counts.assign(m.labels.size(), std::vector<std::size_t>(m.labels.size(), 0));
  auto index = [&](const std::string& l) {
    return static_cast<std::size_t>(std::find(m.labels.begin(), m.labels.end(), l) - m.labels.begin());
  };
  for (std::size_t i = 0; i < gold.size(); ++i) ++m.counts[index(gold[i])][index(pred[i])];
  return m;
}

ConfusionMatrix confusion(std::span<const QuestionType> gold, std::span<const QuestionType> pred) {
  auto names = [](std::span<const QuestionType> xs) {
    std::vector<std::string> out;
    for (QuestionType q : xs) out.emplace_back(to_string(q));
    return out;
  };
  std::vector<std::string> order;
  for (QuestionType q : kReportOrder) order.emplace_back(to_string(q));
  const auto g = names(gold), p = names(pred);
  return confusion(g, p, order);
}

ConfusionMatrix make_matrix(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> counts) {
  if (counts.size() != labels.size()) throw Error("confusion matrix needs one row per label");
  for (const auto& row : counts) {
    if (row.size() != labels.size()) throw Error("confusion matrix must be square");
  }
  return ConfusionMatrix{std::move(labels), std::move(counts)};
}

EvalReport score(const ConfusionMatrix& matrix) {
  const std::size_t n = matrix.total();
  if (n == 0) throw EmptyInput();

  EvalReport r;
  r.matrix = matrix;
  r.accuracy = static_cast<double>(matrix.trace()) / static_cast<double>(n);
  double f1_sum = 0.0, weighted_sum = 0.0;
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    ClassScore c;
    c.label = matrix.labels[i];
    c.support = matrix.support(i);
    const auto tp = static_cast<double>(matrix.counts[i][i]);
    const std::size_t predicted = matrix.predicted(i);
    c.precision_undefined = predicted == 0;
    c.recall_undefined = c.support == 0;
    c.precision = c.precision_undefined ? 0.0 : tp / static_cast<double>(predicted);
    c.recall = c.recall_undefined ? 0.0 : tp / static_cast<double>(c.support);
    c.f1 = c.precision + c.recall > 0.0 ? 2.0 * c.precision * c.recall / (c.precision + c.recall) : 0.0;
    r.has_undefined = r.has_undefined || c.precision_undefined || c.recall_undefined;
    f1_sum += c.f1;
    weighted_sum += c.f1 * static_cast<double>(c.support);
    r.per_class.push_back(std::move(c));
  }
  r.macro_f1 = matrix.size() ? f1_sum / static_cast<double>(matrix.size()) : 0.0;
  r.weighted_f1 = weighted_sum / static_cast<double>(n);
  return r;
}

nlohmann::ordered_json to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["accuracy"] = report.accuracy;
  j["macro_f1"] = report.macro_f1;
  j["weighted_f1"] = report.weighted_f1;
  j["has_undefined"] = report.has_undefined;
  j["per_class"] = nlohmann::ordered_json::array();
  for (const ClassScore& c : report.per_class) {
    j["per_class"].push_back({{"label", c.label},
                              {"precision", c.precision},
                              {"recall", c.recall},
                              {"f1", c.f1},
                              {"support", c.support},
                              {"precision_undefined", c.precision_undefined},
                              {"recall_undefined", c.recall_undefined}});
  }
  j["matrix"] = {{"labels", report.matrix.labels}, {"counts", report.matrix.counts}};
  return j;
}

std::string format_table(const ConfusionMatrix& matrix) {
  std::size_t width = 7;  // "Support"
  for (const std::string& l : matrix.labels) width = std::max(width, l.size());
  for (std::size_t i = 0; i < matrix.size(); ++i) width = std::max(width, std::to_string(matrix.support(i)).size());

  std::ostringstream out;
  out << std::setw(static_cast<int>(width)) << "";
  for (const std::string& l : matrix.labels) out << ' ' << std::setw(static_cast<int>(width)) << l;
  out << ' ' << std::setw(static_cast<int>(width)) << "Support" << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(width)) << matrix.labels[i] << std::right;
    for (std::size_t v : matrix.counts[i]) out << ' ' << std::setw(static_cast<int>(width)) << v;
    out << ' ' << std::setw(static_cast<int>(width)) << matrix.support(i) << '\n';
  }
  return out.str();
}

}  // namespace qap
