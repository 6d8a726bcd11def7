#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stocksent/date.h"
#include "stocksent/eval.h"
#include "stocksent/ingest.h"
#include "stocksent/ml.h"

namespace stocksent {

enum class PriceField { kOpen, kClose };
PriceField ParsePriceField(std::string_view text);

struct DayLabel {
  Date date;
  int movement = 1;  // 0 when the previous day's price was higher, else 1
  friend bool operator==(const DayLabel&, const DayLabel&) = default;
};

struct DatedSentiment {
  Date date;
  Label sentiment = kNeutral;
};

struct WindowInstance {
  Date target;
  long positive = 0;
  long negative = 0;
  long neutral = 0;
  int movement = 1;
  friend bool operator==(const WindowInstance&, const WindowInstance&) = default;
};

// One label per day after the first. Throws ArgumentError for fewer than two
// days and DataError when the series has calendar gaps.
std::vector<DayLabel> LabelTradingDays(const StockSeries& series, PriceField field);

// For each labelled day d whose window [d - window, d - 1] lies inside the
// tweets' date span, counts the tweets of each sentiment in the window.
// Windows without tweets are kept (zero counts) unless drop_empty is set.
std::vector<WindowInstance> BuildWindowInstances(const std::vector<DatedSentiment>& tweets,
                                                 const std::vector<DayLabel>& days,
                                                 int window = 3, bool drop_empty = false);

// Dense (positive, negative, neutral) vector labelled with the movement.
FeatureVector ToFeatureVector(const WindowInstance& instance);
Dataset ToDataset(const std::vector<WindowInstance>& instances);

struct CorrelationOptions {
  Algorithm algorithm = Algorithm::kLogisticRegression;
  double train_fraction = 0.8;
  SplitMode mode = SplitMode::kOrdered;
  std::uint64_t seed = 1;
  LogisticOptions logistic;
  SmoOptions smo;
};

struct ManifestEntry {
  Date date;
  bool train = true;
};

struct CorrelationResult {
  ClassificationReport report;
  ConfusionMatrix confusion;
  std::vector<ManifestEntry> manifest;  // input order
};

// Trains on the front (or a shuffled) part of the instances and evaluates on
// the rest. Throws ArgumentError unless both parts hold at least 2 instances.
CorrelationResult RunCorrelationExperiment(const std::vector<WindowInstance>& instances,
                                           const CorrelationOptions& options);

std::string FormatDayLabels(const std::vector<DayLabel>& labels);
std::vector<DayLabel> ParseDayLabels(std::string_view text);

// `date,pos,neg,neu,movement`.
std::string FormatWindowInstances(const std::vector<WindowInstance>& instances);
std::vector<WindowInstance> ParseWindowInstances(std::string_view text);

std::string FormatManifest(const std::vector<ManifestEntry>& manifest);

}  // namespace stocksent
