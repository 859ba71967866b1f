#include "doctest.h"

#include <random>

#include "qap/metrics.hpp"

using namespace qap;
using Q = QuestionType;

namespace {

ConfusionMatrix published_matrix() {
  return make_matrix({"YN", "DQ", "PQ", "CS", "WH"}, {{74, 1, 8, 3, 2},
                                                      {0, 3, 0, 0, 0},
                                                      {7, 0, 15, 0, 8},
                                                      {1, 0, 0, 0, 0},
                                                      {10, 0, 9, 0, 43}});
}

}  // namespace

TEST_CASE("confusion") {
  const std::vector<Q> g{Q::YN, Q::WH};
  const ConfusionMatrix m = confusion(g, g);
  CHECK(m.labels == std::vector<std::string>{"YN", "DQ", "PQ", "CS", "WH"});
  CHECK(m.counts[0][0] == 1);
  CHECK(m.counts[4][4] == 1);
  CHECK(m.trace() == 2);
  CHECK(m.total() == 2);

  const std::vector<Q> one{Q::YN}, two{Q::WH, Q::WH}, none;
  CHECK_THROWS_AS(confusion(one, two), LengthMismatch);
  CHECK_THROWS_AS(confusion(none, none), EmptyInput);

  const std::vector<std::string> gs{"b", "a", "c"}, ps{"a", "a", "z"};
  const ConfusionMatrix extra = confusion(gs, ps, {"c"});
  CHECK(extra.labels == std::vector<std::string>{"c", "a", "b", "z"});
}

TEST_CASE("confusion rebuilt from per-item lists of the published table") {
  const ConfusionMatrix table = published_matrix();
  std::vector<Q> gold, pred;
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      for (std::size_t k = 0; k < table.counts[i][j]; ++k) {
        gold.push_back(kReportOrder[i]);
        pred.push_back(kReportOrder[j]);
      }
    }
  }
  const ConfusionMatrix m = confusion(gold, pred);
  CHECK(m == table);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < 5; ++i) support.push_back(m.support(i));
  CHECK(support == std::vector<std::size_t>{88, 3, 30, 1, 62});
}

TEST_CASE("score on the published table") {
  const EvalReport r = score(published_matrix());
  CHECK(r.accuracy == doctest::Approx(135.0 / 184.0));
  CHECK(r.macro_f1 == doctest::Approx(0.582).epsilon(0.001 / 0.582));
  std::vector<double> f1;
  for (const ClassScore& c : r.per_class) f1.push_back(c.f1);
  CHECK(f1[0] == doctest::Approx(0.822).epsilon(1e-3));
  CHECK(f1[1] == doctest::Approx(0.857).epsilon(1e-3));
  CHECK(f1[2] == doctest::Approx(0.484).epsilon(1e-3));
  CHECK(f1[3] == 0.0);
  CHECK(f1[4] == doctest::Approx(0.748).epsilon(1e-3));
  CHECK(r.per_class[3].label == "CS");
  CHECK_FALSE(r.per_class[3].precision_undefined);  // CS was predicted 3 times, never correctly
}

TEST_CASE("score flags undefined precision and recall") {
  // YN-constant predictions on the published support column.
  const ConfusionMatrix m =
      make_matrix({"YN", "DQ", "PQ", "CS", "WH"},
                  {{88, 0, 0, 0, 0}, {3, 0, 0, 0, 0}, {30, 0, 0, 0, 0}, {1, 0, 0, 0, 0}, {62, 0, 0, 0, 0}});
  const EvalReport r = score(m);
  CHECK(r.has_undefined);
  CHECK(r.per_class[1].precision_undefined);
  CHECK(r.accuracy == doctest::Approx(88.0 / 184.0));
  CHECK(r.macro_f1 == doctest::Approx(0.1294).epsilon(1e-3));
  CHECK(r.weighted_f1 == doctest::Approx(0.309).epsilon(0.005 / 0.309));
}

TEST_CASE("score edge cases") {
  const ConfusionMatrix perfect = make_matrix({"a", "b"}, {{3, 0}, {0, 4}});
  const EvalReport r = score(perfect);
  CHECK(r.accuracy == 1.0);
  CHECK(r.macro_f1 == 1.0);
  CHECK(r.weighted_f1 == 1.0);
  CHECK_THROWS_AS(score(make_matrix({"a"}, {{0}})), EmptyInput);
  CHECK_THROWS_AS(make_matrix({"a", "b"}, {{1, 2}}), Error);
}

TEST_CASE("score is invariant under relabeling") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> g, p;
    for (int i = 0; i < 30; ++i) {
      g.push_back(std::string(1, static_cast<char>('a' + rng() % 4)));
      p.push_back(std::string(1, static_cast<char>('a' + rng() % 4)));
    }
    auto rename = [](std::vector<std::string> xs) {
      for (auto& x : xs) x = x == "a" ? "d" : x == "d" ? "a" : x == "b" ? "c" : "b";
      return xs;
    };
    const std::vector<std::string> order{"a", "b", "c", "d"};
    const EvalReport r1 = score(confusion(g, p, order));
    const EvalReport r2 = score(confusion(rename(g), rename(p), order));
    CHECK(r1.accuracy == doctest::Approx(r2.accuracy));
    CHECK(r1.macro_f1 == doctest::Approx(r2.macro_f1));
    CHECK(r1.weighted_f1 == doctest::Approx(r2.weighted_f1));
  }
}

TEST_CASE("observed agreement and kappa") {
  const std::vector<Q> a{Q::YN, Q::YN, Q::WH, Q::PQ}, b{Q::YN, Q::WH, Q::WH, Q::PQ};
  CHECK(observed_agreement(a, a) == 1.0);
  CHECK(observed_agreement(a, b) == doctest::Approx(0.75));
  CHECK(cohen_kappa(a, a) == doctest::Approx(1.0));
  CHECK(cohen_kappa(a, b) == doctest::Approx(0.6364).epsilon(1e-4));
  const std::vector<Q> x{Q::YN, Q::YN}, y{Q::WH, Q::WH};
  CHECK(observed_agreement(x, y) == 0.0);
  CHECK(cohen_kappa(x, x) == 1.0);
  const std::vector<Q> shorter{Q::YN}, empty;
  CHECK_THROWS_AS(cohen_kappa(a, shorter), LengthMismatch);
  CHECK_THROWS_AS(observed_agreement(empty, empty), EmptyInput);
}

TEST_CASE("kappa properties") {
  std::mt19937 rng(4);
  double kappa_sum = 0.0;
  const int trials = 400;
  for (int t = 0; t < trials; ++t) {
    std::vector<int> a, b;
    for (int i = 0; i < 200; ++i) {
      a.push_back(static_cast<int>(rng() % 3));
      b.push_back(static_cast<int>(rng() % 3));
    }
    const double k = cohen_kappa(a, b), ao = observed_agreement(a, b), ae = expected_agreement<int>(a, b);
    CHECK(k >= -1.0);
    CHECK(k <= 1.0);
    if (ae >= 0.0) CHECK(k <= ao + 1e-12);
    kappa_sum += k;
  }
  // Independent annotators agree at chance level on average.
  CHECK(std::abs(kappa_sum / trials) < 0.01);
}

TEST_CASE("report rendering") {
  const std::string table = format_table(published_matrix());
  CHECK(table.find("Support") != std::string::npos);
  CHECK(table.find("YN") < table.find("DQ"));
  const auto j = to_json(score(published_matrix()));
  CHECK(j["per_class"].size() == 5);
  CHECK(j["matrix"]["labels"][4] == "WH");
}
