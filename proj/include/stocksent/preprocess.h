#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "stocksent/date.h"
#include "stocksent/ingest.h"

namespace stocksent {

struct CleanTweet {
  std::string id;
  Timestamp timestamp;
  std::vector<std::string> tokens;
  std::string source_text;
};

class Stopwords {
 public:
  // The built-in 127-word English list.
  static const Stopwords& Default();
  // One word per line, UTF-8; blank lines and surrounding whitespace ignored.
  static Stopwords FromFile(const std::string& path);
  static Stopwords FromText(std::string_view text);

  bool Contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Applied in order: URLs -> `URL`, @handles -> `USER`, `#tag` -> `tag`,
// runs of 3+ identical letters -> 2, then ASCII lowercase.
std::string NormalizeText(std::string_view text);

// Splits on whitespace, trims leading/trailing punctuation and symbols from
// each piece and drops pieces left without a letter or digit.
std::vector<std::string> Tokenize(std::string_view text);

std::vector<std::string> RemoveStopwords(std::vector<std::string> tokens,
                                         const Stopwords& stopwords = Stopwords::Default());

CleanTweet Preprocess(const Tweet& tweet,
                      const Stopwords& stopwords = Stopwords::Default());

// `id,timestamp,tokens` with tokens space-joined.
void WriteCleanTweets(const std::string& path, const std::vector<CleanTweet>& tweets);
std::vector<CleanTweet> ReadCleanTweets(const std::string& path);
std::vector<CleanTweet> ParseCleanTweets(std::string_view text);

}  // namespace stocksent
