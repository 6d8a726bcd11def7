#include <cmath>

#include "doctest.h"
#include "stocksent/error.h"
#include "stocksent/eval.h"
#include "stocksent/random.h"
#include "../support/oracles.h"

using namespace stocksent;

TEST_CASE("confusion_matrix") {
  ConfusionMatrix identity({1, 0, 2}, {1, 0, 2}, {1, 0, 2});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(identity.count(i, j) == (i == j ? 1 : 0));
  }
  ConfusionMatrix off({1, 1}, {0, 0}, {1, 0, 2});
  CHECK(off.count(0, 1) == 2);  // true 1, predicted 0
  CHECK(off.total() == 2);
  CHECK_THROWS_AS(ConfusionMatrix({1}, {7}, {1, 0, 2}), ArgumentError);
  CHECK_THROWS_AS(ConfusionMatrix({1, 0}, {1}, {1, 0, 2}), ArgumentError);
}

TEST_CASE("classification_report") {
  SUBCASE("perfect predictions") {
    auto r = Classify(ConfusionMatrix({1, 0, 2, 2}, {1, 0, 2, 2}, {1, 0, 2}));
    CHECK(r.accuracy == 1.0);
    CHECK(r.precision == 1.0);
    CHECK(r.recall == 1.0);
    CHECK(r.f_measure == 1.0);
  }
  SUBCASE("two-class golden values") {
    auto r = Classify(ConfusionMatrix({0, 1}, {{8, 2}, {3, 7}}));
    // Hand-derived: precision (8/11 + 7/9)/2 = 149/198, recall (8/10 + 7/10)/2,
    // F (16/21 + 14/19)/2 = 299/399.
    CHECK(r.accuracy == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(r.precision == doctest::Approx(149.0 / 198.0).epsilon(1e-12));
    CHECK(r.recall == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(r.f_measure == doctest::Approx(299.0 / 399.0).epsilon(1e-12));
    CHECK(r.per_class[0].f_measure == doctest::Approx(16.0 / 21.0).epsilon(1e-12));
  }
  SUBCASE("never-predicted class contributes zero precision") {
    auto r = Classify(ConfusionMatrix({1, 0, 2}, {1, 1, 1}, {1, 0, 2}));
    CHECK(r.per_class[1].precision == 0.0);
    CHECK(r.per_class[1].f_measure == 0.0);
    CHECK(std::isfinite(r.precision));
  }
  SUBCASE("empty matrix") {
    CHECK_THROWS_AS(Classify(ConfusionMatrix({}, {}, {1, 0})), ArgumentError);
  }
}

TEST_CASE("report metrics stay in range; accuracy is weighted recall") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Label> truth, pred;
    for (std::uint64_t i = 0, n = 1 + rng.Below(40); i < n; ++i) {
      truth.push_back(static_cast<Label>(rng.Below(3)));
      pred.push_back(static_cast<Label>(rng.Below(3)));
    }
    auto r = Classify(ConfusionMatrix(truth, pred, {1, 0, 2}));
    for (double m : {r.accuracy, r.precision, r.recall, r.f_measure}) {
      CHECK(m >= 0.0);
      CHECK(m <= 1.0 + 1e-12);
    }
    CHECK(r.accuracy == doctest::Approx(r.recall).epsilon(1e-12));
  }
}

TEST_CASE("roc_points") {
  using P = RocPoint;
  CHECK(RocPoints({0.9, 0.1}, {true, false}) == std::vector<P>{{0, 0}, {0, 1}, {1, 1}});
  CHECK(RocPoints({0.3, 0.3, 0.3}, {true, false, true}) == std::vector<P>{{0, 0}, {1, 1}});
  auto points = RocPoints({0.8, 0.4, 0.6, 0.2}, {true, true, false, false});
  CHECK(points == std::vector<P>{{0, 0}, {0, 0.5}, {0.5, 0.5}, {0.5, 1}, {1, 1}});
  CHECK_THROWS_AS(RocPoints({0.1, 0.2}, {true, true}), ArgumentError);
  CHECK_THROWS_AS(RocPoints({0.1, 0.2}, {false, false}), ArgumentError);
  CHECK_THROWS_AS(RocPoints({0.1}, {true, false}), ArgumentError);
}

TEST_CASE("auc_score") {
  CHECK(AucScore({0.9, 0.1}, {true, false}) == 1.0);
  CHECK(AucScore({0.5, 0.5, 0.5, 0.5}, {true, false, false, true}) == 0.5);
  const std::vector<double> s = {0.8, 0.4, 0.6, 0.2};
  const std::vector<bool> y = {true, true, false, false};
  CHECK(testing::MannWhitneyAuc(s, y) == 0.75);
  CHECK(AucScore(s, y) == 0.75);
}

TEST_CASE("auc properties on random score sets") {
  Rng rng(2718);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.Below(199);
    std::vector<double> scores(n), negated(n);
    std::vector<bool> labels(n);
    const bool coarse = rng.Below(2) == 0;
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = coarse ? static_cast<double>(rng.Below(7)) : rng.Uniform();
      labels[i] = rng.Below(2) == 1;
    }
    labels[0] = true;
    labels[1] = false;
    for (std::size_t i = 0; i < n; ++i) negated[i] = -scores[i];
    const double auc = AucScore(scores, labels);
    CHECK(std::abs(auc - testing::MannWhitneyAuc(scores, labels)) <= 1e-9);
    if (!coarse) CHECK(std::abs(auc + AucScore(negated, labels) - 1.0) <= 1e-9);

    auto points = RocPoints(scores, labels);
    CHECK(points.front() == RocPoint{0, 0});
    CHECK(points.back() == RocPoint{1, 1});
    for (std::size_t i = 1; i < points.size(); ++i) {
      CHECK(points[i].fpr >= points[i - 1].fpr);
      CHECK(points[i].tpr >= points[i - 1].tpr);
      CHECK(points[i].fpr <= 1.0);
      CHECK(points[i].tpr <= 1.0);
    }
  }
}

TEST_CASE("report formats") {
  ConfusionMatrix cm({0, 1}, {{8, 2}, {3, 7}});
  auto r = Classify(cm);
  auto text = FormatReport(r, cm);
  CHECK(text.find("Accuracy        75.00%") != std::string::npos);
  CHECK(text.find("F-Measure") != std::string::npos);
  auto kv = FormatReportKeyValues(r);
  CHECK(kv.find("accuracy=0.75\n") != std::string::npos);
  CHECK(kv.find("class.0.support=10\n") != std::string::npos);
  CHECK(FormatRocPoints({{0, 0}, {0.5, 1}}) == "0\t0\n0.5\t1\n");

  auto table = FormatResultsTable({{"Random Forest", "Word2vec", r}});
  CHECK(table.rfind("Algorithm", 0) == 0);
  for (const char* col : {"Representation", "Accuracy", "Precision", "Recall", "F-Measure"}) {
    CHECK(table.find(col) != std::string::npos);
  }
  CHECK(table.find("75.00%") != std::string::npos);
  CHECK(table.find("0.753") != std::string::npos);
}
