#include "stocksent/ingest.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "numbers.h"
#include "stocksent/csv.h"
#include "stocksent/error.h"

namespace stocksent {
namespace {

std::string AtLine(std::size_t line) { return "line " + std::to_string(line) + ": "; }

double ParsePrice(std::string_view text, std::size_t line, std::string_view column) {
  auto value = detail::ParseDouble(detail::Trim(text));
  if (!value) {
    throw FormatError(AtLine(line) + "invalid " + std::string(column) + " price '" +
                      std::string(text) + "'");
  }
  if (!std::isfinite(*value) || *value < 0.0) {
    throw ValueError(AtLine(line) + std::string(column) + " price must be a finite value >= 0, got " +
                     std::string(text));
  }
  return *value;
}

std::vector<Tweet> TweetsFromTable(const csv::Table& table) {
  const auto id_col = table.Column("id");
  const auto ts_col = table.Column("timestamp");
  const auto text_col = table.Column("text");

  std::vector<Tweet> tweets;
  tweets.reserve(table.rows().size());
  std::unordered_set<std::string> seen;
  for (const auto& row : table.rows()) {
    Tweet tweet;
    tweet.id = table.Field(row, id_col);
    if (tweet.id.empty()) throw FormatError(AtLine(row.line) + "empty tweet id");
    try {
      tweet.timestamp = ParseTimestamp(table.Field(row, ts_col));
    } catch (const FormatError& e) {
      throw FormatError(AtLine(row.line) + e.what());
    }
    tweet.text = table.Field(row, text_col);
    if (!seen.insert(tweet.id).second) {
      throw DataError(AtLine(row.line) + "duplicate tweet id '" + tweet.id + "'");
    }
    tweets.push_back(std::move(tweet));
  }
  return tweets;
}

StockSeries SeriesFromTable(const csv::Table& table) {
  const auto date_col = table.Column("date");
  const auto open_col = table.Column("open");
  const auto close_col = table.Column("close");
  const auto filled_col = table.FindColumn("filled");

  StockSeries series;
  series.reserve(table.rows().size());
  for (const auto& row : table.rows()) {
    StockDay day;
    try {
      day.date = Date::Parse(detail::Trim(table.Field(row, date_col)));
    } catch (const FormatError& e) {
      throw FormatError(AtLine(row.line) + e.what());
    }
    day.open = ParsePrice(table.Field(row, open_col), row.line, "open");
    day.close = ParsePrice(table.Field(row, close_col), row.line, "close");
    if (filled_col != std::string::npos) {
      const auto flag = detail::Trim(table.Field(row, filled_col));
      if (flag != "0" && flag != "1") {
        throw FormatError(AtLine(row.line) + "filled must be 0 or 1");
      }
      day.filled = flag == "1";
    }
    series.push_back(day);
  }
  std::stable_sort(series.begin(), series.end(),
                   [](const StockDay& a, const StockDay& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i].date == series[i - 1].date) {
      throw DataError("duplicate date " + series[i].date.ToString());
    }
  }
  return series;
}

}  // namespace

std::vector<Tweet> ParseTweetCorpus(std::string_view text) {
  return TweetsFromTable(csv::Table::FromText(text));
}

std::vector<Tweet> ReadTweetCorpus(const std::string& path) {
  auto table = csv::Table::FromFile(path);
  try {
    return TweetsFromTable(table);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void WriteTweetCorpus(const std::string& path, const std::vector<Tweet>& tweets) {
  std::ostringstream out;
  csv::WriteRow(out, {"id", "timestamp", "text"});
  for (const auto& t : tweets) csv::WriteRow(out, {t.id, FormatTimestamp(t.timestamp), t.text});
  csv::WriteFile(path, out.str());
}

StockSeries ParseStockSeries(std::string_view text) {
  return SeriesFromTable(csv::Table::FromText(text));
}

StockSeries ReadStockSeries(const std::string& path) {
  auto table = csv::Table::FromFile(path);
  try {
    return SeriesFromTable(table);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string FormatStockSeries(const StockSeries& series) {
  std::ostringstream out;
  out << "date,open,close,filled\n";
  for (const auto& day : series) {
    out << day.date.ToString() << ',' << detail::FormatDouble(day.open) << ','
        << detail::FormatDouble(day.close) << ',' << (day.filled ? '1' : '0') << '\n';
  }
  return out.str();
}

void WriteStockSeries(const std::string& path, const StockSeries& series) {
  csv::WriteFile(path, FormatStockSeries(series));
}

bool IsContiguous(const StockSeries& series) {
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i].date - series[i - 1].date != 1) return false;
  }
  return true;
}

StockSeries FillGaps(const StockSeries& series) {
  if (series.empty()) throw ArgumentError("cannot fill gaps of an empty series");
  StockSeries out;
  out.reserve(static_cast<std::size_t>(series.back().date - series.front().date) + 1);
  out.push_back(series.front());
  for (std::size_t i = 1; i < series.size(); ++i) {
    const StockDay& before = series[i - 1];
    const StockDay& after = series[i];
    if (!(before.date < after.date)) {
      throw ArgumentError("series must be sorted by date with no duplicates");
    }
    double open = before.open;
    double close = before.close;
    for (Date d = before.date + 1; d < after.date; d = d + 1) {
      open = (open + after.open) / 2.0;
      close = (close + after.close) / 2.0;
      out.push_back(StockDay{d, open, close, true});
    }
    out.push_back(after);
  }
  return out;
}

}  // namespace stocksent
