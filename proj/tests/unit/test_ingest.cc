#include <algorithm>

#include "doctest.h"
#include "stocksent/csv.h"
#include "stocksent/error.h"
#include "stocksent/ingest.h"
#include "stocksent/random.h"
#include "../support/fixtures.h"

using namespace stocksent;

namespace {

StockDay Day(const char* date, double open, double close) {
  return StockDay{Date::Parse(date), open, close, false};
}

}  // namespace

TEST_CASE("csv parser handles quoting and line endings") {
  auto rows = csv::Parse("a,b\r\n\"x, y\",\"say \"\"hi\"\"\"\n\n1,\"multi\nline\"\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].fields == std::vector<std::string>{"x, y", "say \"hi\""});
  CHECK(rows[2].fields[1] == "multi\nline");
  CHECK(rows[2].line == 4);
  CHECK_THROWS_AS(csv::Parse("a,\"open\n"), FormatError);
}

TEST_CASE("read_tweet_corpus") {
  SUBCASE("quoted text keeps the delimiter") {
    auto tweets = ParseTweetCorpus("id,timestamp,text\nt1,2015-08-31T10:00:00Z,\"hello, world\"\n");
    REQUIRE(tweets.size() == 1);
    CHECK(tweets[0].id == "t1");
    CHECK(tweets[0].text == "hello, world");
    CHECK(FormatTimestamp(tweets[0].timestamp) == "2015-08-31T10:00:00Z");
  }
  SUBCASE("header only gives an empty corpus") {
    CHECK(ParseTweetCorpus("id,timestamp,text\n").empty());
  }
  SUBCASE("duplicate id") {
    CHECK_THROWS_AS(ParseTweetCorpus("id,timestamp,text\nt1,2015-08-31T10:00:00Z,a\n"
                                     "t1,2015-08-31T11:00:00Z,b\n"),
                    DataError);
  }
  SUBCASE("missing column is named") {
    try {
      ParseTweetCorpus("id,text\nt1,a\n");
      FAIL("expected a format error");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).find("timestamp") != std::string::npos);
    }
  }
  SUBCASE("bad timestamp reports its line") {
    try {
      ParseTweetCorpus("id,timestamp,text\nt1,2015-08-31T10:00:00Z,a\nt2,yesterday,b\n");
      FAIL("expected a format error");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("text is byte-exact, columns in any order") {
    auto tweets = ParseTweetCorpus(
        "text,id,timestamp\r\n\"  caf\xC3\xA9 \xF0\x9F\x98\x80 \"\"q\"\" \",x,2016-02-29 23:59:59+05:30\r\n");
    REQUIRE(tweets.size() == 1);
    CHECK(tweets[0].text == "  caf\xC3\xA9 \xF0\x9F\x98\x80 \"q\" ");
    CHECK(FormatTimestamp(tweets[0].timestamp) == "2016-02-29T18:29:59Z");
  }
}

TEST_CASE("timestamps") {
  CHECK(DateOf(ParseTimestamp("2015-08-31T23:30:00-02:00")) == Date(2015, 9, 1));
  CHECK(FormatTimestamp(ParseTimestamp("2015-08-31T10:00")) == "2015-08-31T10:00:00Z");
  CHECK(FormatTimestamp(ParseTimestamp("2015-08-31T10:00:05.250Z")) == "2015-08-31T10:00:05Z");
  CHECK_THROWS_AS(ParseTimestamp("2015-02-30T10:00:00Z"), FormatError);
  CHECK_THROWS_AS(ParseTimestamp("2015-08-31T10:00:00Q"), FormatError);
  CHECK_THROWS_AS(Date::Parse("2015-8-31"), FormatError);
}

TEST_CASE("read_stock_series") {
  SUBCASE("two rows, unfilled") {
    auto s = ParseStockSeries("date,open,close\n2015-08-31,43.5,43.52\n2015-09-01,42.17,41.82\n");
    REQUIRE(s.size() == 2);
    CHECK(s[0] == Day("2015-08-31", 43.5, 43.52));
    CHECK(s[1] == Day("2015-09-01", 42.17, 41.82));
  }
  SUBCASE("out of order rows are sorted") {
    auto a = ParseStockSeries("date,open,close\n2015-08-31,1,2\n2015-09-01,3,4\n");
    auto b = ParseStockSeries("date,open,close\n2015-09-01,3,4\n2015-08-31,1,2\n");
    CHECK(a == b);
  }
  SUBCASE("negative price") {
    CHECK_THROWS_AS(ParseStockSeries("date,open,close\n2015-08-31,1,-1\n"), ValueError);
  }
  SUBCASE("duplicate date") {
    CHECK_THROWS_AS(ParseStockSeries("date,open,close\n2015-08-31,1,1\n2015-08-31,2,2\n"),
                    DataError);
  }
  SUBCASE("unparseable price") {
    CHECK_THROWS_AS(ParseStockSeries("date,open,close\n2015-08-31,1,abc\n"), FormatError);
  }
}

TEST_CASE("fill_gaps examples") {
  SUBCASE("single gap takes the midpoint") {
    auto filled = FillGaps({Day("2015-09-04", 10, 10), Day("2015-09-06", 12, 12)});
    REQUIRE(filled.size() == 3);
    CHECK(filled[1].date == Date(2015, 9, 5));
    CHECK(filled[1].close == 11.0);
    CHECK(filled[1].filled);
    CHECK_FALSE(filled[0].filled);
    CHECK_FALSE(filled[2].filled);
  }
  SUBCASE("two missing days recurse toward the next value") {
    auto filled = FillGaps({Day("2015-09-04", 8, 8), Day("2015-09-07", 12, 12)});
    REQUIRE(filled.size() == 4);
    CHECK(filled[1].close == 10.0);
    CHECK(filled[2].close == 11.0);
  }
  SUBCASE("open and close are filled independently") {
    auto filled = FillGaps({Day("2015-09-04", 8, 20), Day("2015-09-06", 12, 10)});
    CHECK(filled[1].open == 10.0);
    CHECK(filled[1].close == 15.0);
  }
  SUBCASE("contiguous series is unchanged") {
    StockSeries s{Day("2015-09-04", 1, 2), Day("2015-09-05", 3, 4)};
    CHECK(FillGaps(s) == s);
  }
  SUBCASE("empty series") { CHECK_THROWS_AS(FillGaps({}), ArgumentError); }
}

TEST_CASE("fill_gaps properties on random series") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    StockSeries s;
    Date d(2015, 8, 31);
    const int n = 1 + static_cast<int>(rng.Below(15));
    for (int i = 0; i < n; ++i) {
      s.push_back({d, std::round(rng.Uniform() * 10000) / 100, std::round(rng.Uniform() * 10000) / 100, false});
      d = d + 1 + static_cast<int>(rng.Below(5));
    }
    auto filled = FillGaps(s);
    CHECK(filled.size() == static_cast<std::size_t>(s.back().date - s.front().date + 1));
    CHECK(IsContiguous(filled));
    CHECK(FillGaps(filled) == filled);

    // Filled values stay strictly between their bounding known values.
    std::size_t k = 0;
    for (std::size_t i = 0; i < filled.size(); ++i) {
      if (!filled[i].filled) {
        CHECK(filled[i] == s[k]);
        ++k;
        continue;
      }
      const auto& x = s[k - 1];
      const auto& y = s[k];
      for (auto [fx, fy, fv] : {std::tuple{x.open, y.open, filled[i].open},
                                std::tuple{x.close, y.close, filled[i].close}}) {
        if (fx == fy) {
          CHECK(fv == fx);
        } else {
          CHECK(fv > std::min(fx, fy));
          CHECK(fv < std::max(fx, fy));
        }
      }
    }
    CHECK(k == s.size());

    // Write/read round trip is the identity.
    CHECK(ParseStockSeries(FormatStockSeries(filled)) == filled);
  }
}

TEST_CASE("price file round trip through disk") {
  testing::TempDir dir("ingest");
  StockSeries s{Day("2015-09-04", 0.1, 1.0 / 3.0), Day("2015-09-08", 47.25, 1e-7)};
  WriteStockSeries(dir.File("p.csv"), FillGaps(s));
  CHECK(ReadStockSeries(dir.File("p.csv")) == FillGaps(s));
}
