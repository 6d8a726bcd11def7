#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stocksent/features.h"

namespace stocksent {

class ConfusionMatrix {
 public:
  // Throws ArgumentError on a length mismatch or a label outside `classes`.
  ConfusionMatrix(const std::vector<Label>& truth, const std::vector<Label>& predicted,
                  std::vector<Label> classes);
  // Direct construction from counts (rows = true class).
  ConfusionMatrix(std::vector<Label> classes, std::vector<std::vector<long>> counts);

  const std::vector<Label>& classes() const { return classes_; }
  long count(std::size_t truth, std::size_t predicted) const {
    return counts_[truth][predicted];
  }
  long total() const;
  long row_total(std::size_t i) const;
  long column_total(std::size_t j) const;

 private:
  std::vector<Label> classes_;
  std::vector<std::vector<long>> counts_;
};

struct ClassMetrics {
  Label label = 0;
  long support = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

struct ClassificationReport {
  double accuracy = 0.0;
  // Support-weighted averages over classes.
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  long total = 0;
  std::vector<ClassMetrics> per_class;
};

// 0/0 precision or recall counts as 0. Throws ArgumentError if empty.
ClassificationReport Classify(const ConfusionMatrix& cm);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

// Threshold sweep over distinct scores, highest first; tied scores enter
// together. Starts at (0,0), ends at (1,1). Throws ArgumentError without at
// least one positive and one negative, or on a length mismatch.
std::vector<RocPoint> RocPoints(const std::vector<double>& scores,
                                const std::vector<bool>& is_positive);

// Trapezoidal area under RocPoints.
double AucScore(const std::vector<double>& scores, const std::vector<bool>& is_positive);
double TrapezoidArea(const std::vector<RocPoint>& points);

// Aligned plain-text rendering: summary lines, per-class table and matrix.
std::string FormatReport(const ClassificationReport& report, const ConfusionMatrix& cm);
// `key=value` lines.
std::string FormatReportKeyValues(const ClassificationReport& report);
// `fpr<TAB>tpr` lines.
std::string FormatRocPoints(const std::vector<RocPoint>& points);

// One row of the algorithm x representation results table.
struct ResultRow {
  std::string algorithm;
  std::string representation;
  ClassificationReport report;
};

// Columns: Algorithm, Representation, Accuracy, Precision, Recall, F-Measure.
// Accuracy as a percentage with two decimals, the rest with three.
std::string FormatResultsTable(const std::vector<ResultRow>& rows);

}  // namespace stocksent
