#include "stocksent/preprocess.h"

#include <sstream>
#include <unordered_set>

#include "numbers.h"
#include "stocksent/csv.h"
#include "stocksent/error.h"

namespace stocksent {
namespace {

// Same list as data/stopwords/english.txt.
constexpr std::string_view kDefaultStopwords =
    "i me my myself we our ours ourselves you your yours yourself yourselves "
    "he him his himself she her hers herself it its itself they them their "
    "theirs themselves what which who whom this that these those am is are "
    "was were be been being have has had having do does did doing a an the "
    "and but if or because as until while of at by for with about against "
    "between into through during before after above below to from up down in "
    "out on off over under again further then once here there when where why "
    "how all any both each few more most other some such no nor not only own "
    "same so than too very s t can will just don should now";

bool IsAsciiAlpha(unsigned char c) { return (c | 0x20) >= 'a' && (c | 0x20) <= 'z'; }
bool IsAsciiDigit(unsigned char c) { return c >= '0' && c <= '9'; }
bool IsAsciiAlnum(unsigned char c) { return IsAsciiAlpha(c) || IsAsciiDigit(c); }
bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
bool IsHandleChar(unsigned char c) { return IsAsciiAlnum(c) || c == '_'; }
// Bytes of multi-byte UTF-8 sequences count as word characters here.
bool IsWordByte(unsigned char c) { return IsHandleChar(c) || c >= 0x80; }
char Lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool StartsWithNoCase(std::string_view text, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > text.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (Lower(text[pos + i]) != prefix[i]) return false;
  }
  return true;
}

std::string ReplaceUrls(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    bool at_boundary = i == 0 || !IsAsciiAlnum(static_cast<unsigned char>(text[i - 1]));
    if (StartsWithNoCase(text, i, "http://") || StartsWithNoCase(text, i, "https://") ||
        (at_boundary && StartsWithNoCase(text, i, "www."))) {
      out += "URL";
      while (i < text.size() && !IsSpace(static_cast<unsigned char>(text[i]))) ++i;
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

std::string ReplaceHandles(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '@' && i + 1 < text.size() &&
        IsHandleChar(static_cast<unsigned char>(text[i + 1]))) {
      out += "USER";
      ++i;
      while (i < text.size() && IsHandleChar(static_cast<unsigned char>(text[i]))) ++i;
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

// Drops a run of '#' that opens a word: preceded by a non-word character (or
// the start) and followed by a word character.
std::string StripHashes(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '#') {
      out.push_back(text[i++]);
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && text[end] == '#') ++end;
    bool opens = (i == 0 || !IsWordByte(static_cast<unsigned char>(text[i - 1]))) &&
                 end < text.size() && IsWordByte(static_cast<unsigned char>(text[end]));
    if (!opens) out.append(text.substr(i, end - i));
    i = end;
  }
  return out;
}

std::string CompressElongations(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    std::size_t end = i + 1;
    if (IsAsciiAlpha(c)) {
      while (end < text.size() && Lower(text[end]) == Lower(text[i])) ++end;
    }
    out.append(text.substr(i, std::min<std::size_t>(end - i, 2)));
    i = end;
  }
  return out;
}

// Decodes one UTF-8 code point at text[i]; malformed bytes decode as
// themselves with length 1.
char32_t DecodeAt(std::string_view text, std::size_t i, std::size_t& length) {
  auto b0 = static_cast<unsigned char>(text[i]);
  int extra = -1;
  if (b0 < 0x80) {
    extra = 0;
  } else if ((b0 >> 5) == 0x6) {
    extra = 1;
  } else if ((b0 >> 4) == 0xE) {
    extra = 2;
  } else if ((b0 >> 3) == 0x1E) {
    extra = 3;
  }
  if (extra <= 0 || i + extra >= text.size()) {
    length = 1;
    return b0;
  }
  char32_t cp = b0 & (0x3F >> extra);
  for (int k = 1; k <= extra; ++k) {
    auto b = static_cast<unsigned char>(text[i + k]);
    if ((b & 0xC0) != 0x80) {
      length = 1;
      return b0;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  length = static_cast<std::size_t>(extra) + 1;
  return cp;
}

// Letters and digits; everything in the punctuation, symbol and emoji blocks
// is not.
bool IsWordCodePoint(char32_t cp) {
  if (cp < 0x80) return IsAsciiAlnum(static_cast<unsigned char>(cp));
  if (cp <= 0xBF || cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x2E00 && cp <= 0x2E7F) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xFE00 && cp <= 0xFE0F) return false;
  if (cp >= 0xFF01 && cp <= 0xFF0F) return false;
  if (cp >= 0x1F000 && cp <= 0x1FAFF) return false;
  if (cp >= 0xE0000 && cp <= 0xE007F) return false;
  return true;
}

std::string JoinTokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace

const Stopwords& Stopwords::Default() {
  static const Stopwords instance = FromText(
      [] {
        std::string text(kDefaultStopwords);
        for (char& c : text) {
          if (c == ' ') c = '\n';
        }
        return text;
      }());
  return instance;
}

Stopwords Stopwords::FromText(std::string_view text) {
  Stopwords result;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto word = detail::Trim(text.substr(start, end - start));
    if (!word.empty()) result.words_.emplace(word);
    start = end + 1;
  }
  return result;
}

Stopwords Stopwords::FromFile(const std::string& path) {
  return FromText(csv::ReadFile(path));
}

bool Stopwords::Contains(std::string_view word) const {
  return words_.count(std::string(word)) > 0;
}

std::string NormalizeText(std::string_view text) {
  // Each rule can expose a match for an earlier one (e.g. "htttp://" only
  // becomes a URL after compression), so the rules repeat until stable.
  // Every pass that changes the text removes an '@' or shortens it.
  std::string current(text);
  while (true) {
    std::string next =
        CompressElongations(StripHashes(ReplaceHandles(ReplaceUrls(current))));
    if (next == current) break;
    current = std::move(next);
  }
  for (char& c : current) c = Lower(c);
  return current;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !IsSpace(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) break;
    std::string_view piece = text.substr(start, i - start);

    // Byte offsets of the first and one-past-last word code points.
    std::size_t first = std::string_view::npos;
    std::size_t last = 0;
    for (std::size_t p = 0; p < piece.size();) {
      std::size_t len = 1;
      char32_t cp = DecodeAt(piece, p, len);
      if (IsWordCodePoint(cp)) {
        if (first == std::string_view::npos) first = p;
        last = p + len;
      }
      p += len;
    }
    if (first == std::string_view::npos) continue;
    tokens.emplace_back(piece.substr(first, last - first));
  }
  return tokens;
}

std::vector<std::string> RemoveStopwords(std::vector<std::string> tokens,
                                         const Stopwords& stopwords) {
  std::erase_if(tokens, [&](const std::string& t) { return stopwords.Contains(t); });
  return tokens;
}

CleanTweet Preprocess(const Tweet& tweet, const Stopwords& stopwords) {
  CleanTweet clean;
  clean.id = tweet.id;
  clean.timestamp = tweet.timestamp;
  clean.source_text = tweet.text;
  clean.tokens = RemoveStopwords(Tokenize(NormalizeText(tweet.text)), stopwords);
  return clean;
}

void WriteCleanTweets(const std::string& path, const std::vector<CleanTweet>& tweets) {
  std::ostringstream out;
  csv::WriteRow(out, {"id", "timestamp", "tokens"});
  for (const auto& t : tweets) {
    csv::WriteRow(out, {t.id, FormatTimestamp(t.timestamp), JoinTokens(t.tokens)});
  }
  csv::WriteFile(path, out.str());
}

std::vector<CleanTweet> ParseCleanTweets(std::string_view text) {
  auto table = csv::Table::FromText(text);
  const auto id_col = table.Column("id");
  const auto ts_col = table.Column("timestamp");
  const auto tokens_col = table.Column("tokens");
  std::vector<CleanTweet> tweets;
  tweets.reserve(table.rows().size());
  for (const auto& row : table.rows()) {
    CleanTweet t;
    t.id = table.Field(row, id_col);
    try {
      t.timestamp = ParseTimestamp(table.Field(row, ts_col));
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(row.line) + ": " + e.what());
    }
    const std::string& joined = table.Field(row, tokens_col);
    std::size_t start = 0;
    while (start < joined.size()) {
      auto end = joined.find(' ', start);
      if (end == std::string::npos) end = joined.size();
      if (end > start) t.tokens.push_back(joined.substr(start, end - start));
      start = end + 1;
    }
    t.source_text = joined;
    tweets.push_back(std::move(t));
  }
  return tweets;
}

std::vector<CleanTweet> ReadCleanTweets(const std::string& path) {
  try {
    return ParseCleanTweets(csv::ReadFile(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace stocksent
