#include "stocksent/correlate.h"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "numbers.h"
#include "stocksent/csv.h"
#include "stocksent/error.h"

namespace stocksent {
namespace {

long ParseCount(const csv::Table& table, const csv::Record& row, std::size_t col,
                const char* what) {
  auto value = detail::ParseLong(detail::Trim(table.Field(row, col)));
  if (!value || *value < 0) {
    throw FormatError("line " + std::to_string(row.line) + ": invalid " + what);
  }
  return *value;
}

int ParseMovement(const csv::Table& table, const csv::Record& row, std::size_t col) {
  const auto text = detail::Trim(table.Field(row, col));
  if (text != "0" && text != "1") {
    throw FormatError("line " + std::to_string(row.line) + ": movement must be 0 or 1");
  }
  return text == "1" ? 1 : 0;
}

Date ParseRowDate(const csv::Table& table, const csv::Record& row, std::size_t col) {
  try {
    return Date::Parse(detail::Trim(table.Field(row, col)));
  } catch (const FormatError& e) {
    throw FormatError("line " + std::to_string(row.line) + ": " + e.what());
  }
}

}  // namespace

PriceField ParsePriceField(std::string_view text) {
  if (text == "open") return PriceField::kOpen;
  if (text == "close") return PriceField::kClose;
  throw ArgumentError("unknown price field '" + std::string(text) + "'");
}

std::vector<DayLabel> LabelTradingDays(const StockSeries& series, PriceField field) {
  if (series.size() < 2) throw ArgumentError("labelling needs at least two days");
  if (!IsContiguous(series)) {
    throw DataError("price series has calendar gaps; fill them first");
  }
  auto price = [field](const StockDay& d) { return field == PriceField::kOpen ? d.open : d.close; };
  std::vector<DayLabel> labels;
  labels.reserve(series.size() - 1);
  for (std::size_t i = 1; i < series.size(); ++i) {
    labels.push_back({series[i].date, price(series[i - 1]) > price(series[i]) ? 0 : 1});
  }
  return labels;
}

std::vector<WindowInstance> BuildWindowInstances(const std::vector<DatedSentiment>& tweets,
                                                 const std::vector<DayLabel>& days, int window,
                                                 bool drop_empty) {
  if (window < 1) throw ArgumentError("window size must be at least 1");
  if (tweets.empty()) return {};

  std::map<Date, std::array<long, 3>> per_day;  // indexed by sentiment label
  for (const auto& t : tweets) {
    if (t.sentiment != kPositive && t.sentiment != kNeutral && t.sentiment != kNegative) {
      throw ArgumentError("sentiment must be 0, 1 or 2, got " + std::to_string(t.sentiment));
    }
    ++per_day[t.date][static_cast<std::size_t>(t.sentiment)];
  }
  const Date first = per_day.begin()->first;
  const Date last = per_day.rbegin()->first;

  std::vector<DayLabel> sorted = days;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const DayLabel& a, const DayLabel& b) { return a.date < b.date; });

  std::vector<WindowInstance> instances;
  for (const auto& day : sorted) {
    const Date start = day.date - window;
    const Date end = day.date - 1;
    if (start < first || end > last) continue;
    WindowInstance inst;
    inst.target = day.date;
    inst.movement = day.movement;
    for (auto it = per_day.lower_bound(start); it != per_day.end() && it->first <= end; ++it) {
      inst.positive += it->second[kPositive];
      inst.negative += it->second[kNegative];
      inst.neutral += it->second[kNeutral];
    }
    if (drop_empty && inst.positive + inst.negative + inst.neutral == 0) continue;
    instances.push_back(inst);
  }
  return instances;
}

FeatureVector ToFeatureVector(const WindowInstance& instance) {
  auto v = FeatureVector::Dense({static_cast<double>(instance.positive),
                                 static_cast<double>(instance.negative),
                                 static_cast<double>(instance.neutral)});
  v.label = instance.movement;
  return v;
}

Dataset ToDataset(const std::vector<WindowInstance>& instances) {
  Dataset data{FeatureKind::kEmbeddingSum, 3, {0, 1}, {}};
  data.instances.reserve(instances.size());
  for (const auto& inst : instances) data.instances.push_back(ToFeatureVector(inst));
  return data;
}

CorrelationResult RunCorrelationExperiment(const std::vector<WindowInstance>& instances,
                                           const CorrelationOptions& options) {
  if (options.algorithm == Algorithm::kRandomForest) {
    throw ArgumentError("the correlation classifier is logistic or smo");
  }
  if (instances.size() < 4) {
    throw ArgumentError("need at least 2 instances on each side of the split, got " +
                        std::to_string(instances.size()) + " instances");
  }
  const Dataset data = ToDataset(instances);
  Split split = SplitDataset(data, options.train_fraction, options.mode, options.seed);
  if (split.train.size() < 2 || split.test.size() < 2) {
    throw ArgumentError("split leaves fewer than 2 instances on one side");
  }

  SmoOptions smo = options.smo;
  smo.seed = options.seed;
  const SentimentModel model = options.algorithm == Algorithm::kLogisticRegression
                                   ? TrainLogisticRegression(split.train, options.logistic)
                                   : TrainSvmSmo(split.train, smo);

  std::vector<Label> truth, predicted;
  for (const auto& x : split.test.instances) {
    truth.push_back(*x.label);
    predicted.push_back(model.PredictLabel(x));
  }
  ConfusionMatrix cm(truth, predicted, data.classes);
  CorrelationResult result{Classify(cm), cm, {}};
  result.manifest.resize(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) result.manifest[i].date = instances[i].target;
  for (auto i : split.test_rows) result.manifest[i].train = false;
  return result;
}

std::string FormatDayLabels(const std::vector<DayLabel>& labels) {
  std::string out = "date,movement\n";
  for (const auto& l : labels) out += l.date.ToString() + ',' + std::to_string(l.movement) + '\n';
  return out;
}

std::vector<DayLabel> ParseDayLabels(std::string_view text) {
  auto table = csv::Table::FromText(text);
  const auto date_col = table.Column("date");
  const auto move_col = table.Column("movement");
  std::vector<DayLabel> labels;
  for (const auto& row : table.rows()) {
    labels.push_back({ParseRowDate(table, row, date_col), ParseMovement(table, row, move_col)});
  }
  return labels;
}

std::string FormatWindowInstances(const std::vector<WindowInstance>& instances) {
  std::ostringstream out;
  out << "date,pos,neg,neu,movement\n";
  for (const auto& i : instances) {
    out << i.target.ToString() << ',' << i.positive << ',' << i.negative << ',' << i.neutral
        << ',' << i.movement << '\n';
  }
  return out.str();
}

std::vector<WindowInstance> ParseWindowInstances(std::string_view text) {
  auto table = csv::Table::FromText(text);
  const auto date_col = table.Column("date");
  const auto pos_col = table.Column("pos");
  const auto neg_col = table.Column("neg");
  const auto neu_col = table.Column("neu");
  const auto move_col = table.Column("movement");
  std::vector<WindowInstance> instances;
  for (const auto& row : table.rows()) {
    WindowInstance inst;
    inst.target = ParseRowDate(table, row, date_col);
    inst.positive = ParseCount(table, row, pos_col, "pos count");
    inst.negative = ParseCount(table, row, neg_col, "neg count");
    inst.neutral = ParseCount(table, row, neu_col, "neu count");
    inst.movement = ParseMovement(table, row, move_col);
    instances.push_back(inst);
  }
  return instances;
}

std::string FormatManifest(const std::vector<ManifestEntry>& manifest) {
  std::string out = "date,part\n";
  for (const auto& m : manifest) out += m.date.ToString() + (m.train ? ",train\n" : ",test\n");
  return out;
}

}  // namespace stocksent
