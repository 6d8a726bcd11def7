#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stocksent/date.h"

namespace stocksent {

struct Tweet {
  std::string id;
  Timestamp timestamp;
  std::string text;
};

struct StockDay {
  Date date;
  double open = 0.0;
  double close = 0.0;
  // Set on days inserted by FillGaps. Input rows always carry both prices,
  // so one flag covers both fields.
  bool filled = false;

  friend bool operator==(const StockDay&, const StockDay&) = default;
};

// Date-ordered; no duplicate dates.
using StockSeries = std::vector<StockDay>;

// Reads `id,timestamp,text` (extra columns ignored, any column order).
// Throws FormatError for a missing column or a bad timestamp (with its
// line number), DataError for a duplicate id.
std::vector<Tweet> ReadTweetCorpus(const std::string& path);
std::vector<Tweet> ParseTweetCorpus(std::string_view text);

void WriteTweetCorpus(const std::string& path, const std::vector<Tweet>& tweets);

// Reads `date,open,close` and sorts by date. An optional `filled` column
// (`0`/`1`) is honored so FillGaps output reads back unchanged. Throws
// ValueError for a negative price, DataError for a duplicate date.
StockSeries ReadStockSeries(const std::string& path);
StockSeries ParseStockSeries(std::string_view text);

// `date,open,close,filled`; prices in shortest round-trip decimal form.
std::string FormatStockSeries(const StockSeries& series);
void WriteStockSeries(const std::string& path, const StockSeries& series);

// Inserts every missing calendar day. Between known values x (before) and
// y (after) the missing days take m1 = (x+y)/2, m2 = (m1+y)/2, ... left to
// right, separately for open and close. Throws ArgumentError when empty.
StockSeries FillGaps(const StockSeries& series);

bool IsContiguous(const StockSeries& series);

}  // namespace stocksent
