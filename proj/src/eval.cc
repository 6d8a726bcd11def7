#include "stocksent/eval.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "numbers.h"
#include "stocksent/error.h"

namespace stocksent {
namespace {

double Ratio(long num, long den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void CheckRocInput(const std::vector<double>& scores, const std::vector<bool>& is_positive) {
  if (scores.size() != is_positive.size()) {
    throw ArgumentError("scores and labels differ in length");
  }
  for (double s : scores) {
    if (std::isnan(s)) throw ArgumentError("NaN score");
  }
  const auto positives = std::count(is_positive.begin(), is_positive.end(), true);
  if (positives == 0 || positives == static_cast<long>(is_positive.size())) {
    throw ArgumentError("ROC needs at least one positive and one negative instance");
  }
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(const std::vector<Label>& truth,
                                 const std::vector<Label>& predicted, std::vector<Label> classes)
    : classes_(std::move(classes)),
      counts_(classes_.size(), std::vector<long>(classes_.size(), 0)) {
  if (truth.size() != predicted.size()) {
    throw ArgumentError("truth and prediction lists differ in length");
  }
  auto index_of = [&](Label label) {
    auto it = std::find(classes_.begin(), classes_.end(), label);
    if (it == classes_.end()) {
      throw ArgumentError("label " + std::to_string(label) + " is not in the class set");
    }
    return static_cast<std::size_t>(it - classes_.begin());
  };
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++counts_[index_of(truth[i])][index_of(predicted[i])];
  }
}

ConfusionMatrix::ConfusionMatrix(std::vector<Label> classes, std::vector<std::vector<long>> counts)
    : classes_(std::move(classes)), counts_(std::move(counts)) {
  if (counts_.size() != classes_.size()) throw ArgumentError("confusion matrix shape mismatch");
  for (const auto& row : counts_) {
    if (row.size() != classes_.size()) throw ArgumentError("confusion matrix shape mismatch");
    for (long c : row) {
      if (c < 0) throw ArgumentError("negative confusion count");
    }
  }
}

long ConfusionMatrix::total() const {
  long sum = 0;
  for (const auto& row : counts_) sum = std::accumulate(row.begin(), row.end(), sum);
  return sum;
}

long ConfusionMatrix::row_total(std::size_t i) const {
  return std::accumulate(counts_[i].begin(), counts_[i].end(), 0L);
}

long ConfusionMatrix::column_total(std::size_t j) const {
  long sum = 0;
  for (const auto& row : counts_) sum += row[j];
  return sum;
}

ClassificationReport Classify(const ConfusionMatrix& cm) {
  const long total = cm.total();
  if (total <= 0) throw ArgumentError("cannot report on an empty confusion matrix");
  ClassificationReport report;
  report.total = total;
  long correct = 0;
  for (std::size_t i = 0; i < cm.classes().size(); ++i) {
    const long tp = cm.count(i, i);
    correct += tp;
    ClassMetrics m;
    m.label = cm.classes()[i];
    m.support = cm.row_total(i);
    m.precision = Ratio(tp, cm.column_total(i));
    m.recall = Ratio(tp, m.support);
    const double pr = m.precision + m.recall;
    m.f_measure = pr == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / pr;

    const double weight = Ratio(m.support, total);
    report.precision += weight * m.precision;
    report.recall += weight * m.recall;
    report.f_measure += weight * m.f_measure;
    report.per_class.push_back(m);
  }
  report.accuracy = Ratio(correct, total);
  return report;
}

std::vector<RocPoint> RocPoints(const std::vector<double>& scores,
                                const std::vector<bool>& is_positive) {
  CheckRocInput(scores, is_positive);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  const long positives = std::count(is_positive.begin(), is_positive.end(), true);
  const long negatives = static_cast<long>(scores.size()) - positives;

  std::vector<RocPoint> points{{0.0, 0.0}};
  long tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    while (i < order.size() && scores[order[i]] == threshold) {
      (is_positive[order[i]] ? tp : fp) += 1;
      ++i;
    }
    points.push_back({Ratio(fp, negatives), Ratio(tp, positives)});
  }
  if (!(points.back() == RocPoint{1.0, 1.0})) points.push_back({1.0, 1.0});
  return points;
}

double TrapezoidArea(const std::vector<RocPoint>& points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) / 2.0;
  }
  return area;
}

double AucScore(const std::vector<double>& scores, const std::vector<bool>& is_positive) {
  return TrapezoidArea(RocPoints(scores, is_positive));
}

std::string FormatReport(const ClassificationReport& report, const ConfusionMatrix& cm) {
  std::string out;
  out += fmt::format("{:<12}{:>10}\n", "Instances", report.total);
  out += fmt::format("{:<12}{:>9.2f}%\n", "Accuracy", 100.0 * report.accuracy);
  out += fmt::format("{:<12}{:>10.3f}\n", "Precision", report.precision);
  out += fmt::format("{:<12}{:>10.3f}\n", "Recall", report.recall);
  out += fmt::format("{:<12}{:>10.3f}\n", "F-Measure", report.f_measure);
  out += '\n';
  out += fmt::format("{:>6}{:>9}{:>11}{:>9}{:>11}\n", "Class", "Support", "Precision", "Recall",
                     "F-Measure");
  for (const auto& m : report.per_class) {
    out += fmt::format("{:>6}{:>9}{:>11.3f}{:>9.3f}{:>11.3f}\n", m.label, m.support, m.precision,
                       m.recall, m.f_measure);
  }
  out += "\nConfusion matrix (rows = true class, columns = predicted)\n";
  out += fmt::format("{:>6}", "");
  for (Label c : cm.classes()) out += fmt::format("{:>8}", c);
  out += '\n';
  for (std::size_t i = 0; i < cm.classes().size(); ++i) {
    out += fmt::format("{:>6}", cm.classes()[i]);
    for (std::size_t j = 0; j < cm.classes().size(); ++j) out += fmt::format("{:>8}", cm.count(i, j));
    out += '\n';
  }
  return out;
}

std::string FormatReportKeyValues(const ClassificationReport& report) {
  std::string out;
  out += fmt::format("instances={}\n", report.total);
  out += "accuracy=" + detail::FormatDouble(report.accuracy) + '\n';
  out += "precision=" + detail::FormatDouble(report.precision) + '\n';
  out += "recall=" + detail::FormatDouble(report.recall) + '\n';
  out += "f_measure=" + detail::FormatDouble(report.f_measure) + '\n';
  for (const auto& m : report.per_class) {
    out += fmt::format("class.{}.support={}\n", m.label, m.support);
    out += fmt::format("class.{}.precision={}\n", m.label, detail::FormatDouble(m.precision));
    out += fmt::format("class.{}.recall={}\n", m.label, detail::FormatDouble(m.recall));
    out += fmt::format("class.{}.f_measure={}\n", m.label, detail::FormatDouble(m.f_measure));
  }
  return out;
}

std::string FormatRocPoints(const std::vector<RocPoint>& points) {
  std::string out;
  for (const auto& p : points) {
    out += detail::FormatDouble(p.fpr) + '\t' + detail::FormatDouble(p.tpr) + '\n';
  }
  return out;
}

std::string FormatResultsTable(const std::vector<ResultRow>& rows) {
  std::size_t algo_width = 9, repr_width = 14;
  for (const auto& r : rows) {
    algo_width = std::max(algo_width, r.algorithm.size());
    repr_width = std::max(repr_width, r.representation.size());
  }
  std::string out = fmt::format("{:<{}}  {:<{}}  {:>8}  {:>9}  {:>6}  {:>9}\n", "Algorithm",
                                algo_width, "Representation", repr_width, "Accuracy",
                                "Precision", "Recall", "F-Measure");
  for (const auto& r : rows) {
    out += fmt::format("{:<{}}  {:<{}}  {:>7.2f}%  {:>9.3f}  {:>6.3f}  {:>9.3f}\n", r.algorithm,
                       algo_width, r.representation, repr_width, 100.0 * r.report.accuracy,
                       r.report.precision, r.report.recall, r.report.f_measure);
  }
  return out;
}

}  // namespace stocksent
