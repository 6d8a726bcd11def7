#include "stocksent/features.h"

#include <algorithm>
#include <sstream>

#include "numbers.h"
#include "stocksent/csv.h"
#include "stocksent/error.h"

namespace stocksent {

std::string_view ToString(FeatureKind kind) {
  return kind == FeatureKind::kNgramBinary ? "ngram" : "word2vec";
}

FeatureKind ParseFeatureKind(std::string_view text) {
  if (text == "ngram") return FeatureKind::kNgramBinary;
  if (text == "word2vec") return FeatureKind::kEmbeddingSum;
  throw ArgumentError("unknown feature kind '" + std::string(text) + "'");
}

FeatureVector FeatureVector::Sparse(std::size_t dimension, std::vector<std::uint32_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!indices.empty() && indices.back() >= dimension) {
    throw ArgumentError("feature index out of range");
  }
  FeatureVector v;
  v.kind = FeatureKind::kNgramBinary;
  v.dimension = dimension;
  v.indices = std::move(indices);
  return v;
}

FeatureVector FeatureVector::Dense(std::vector<double> values) {
  FeatureVector v;
  v.kind = FeatureKind::kEmbeddingSum;
  v.dimension = values.size();
  v.values = std::move(values);
  return v;
}

double FeatureVector::At(std::size_t j) const {
  if (kind == FeatureKind::kEmbeddingSum) return values[j];
  return std::binary_search(indices.begin(), indices.end(), static_cast<std::uint32_t>(j))
             ? 1.0
             : 0.0;
}

double Dot(const FeatureVector& a, const FeatureVector& b) {
  if (a.kind == FeatureKind::kEmbeddingSum && b.kind == FeatureKind::kEmbeddingSum) {
    double sum = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j) sum += a.values[j] * b.values[j];
    return sum;
  }
  if (a.kind == FeatureKind::kNgramBinary && b.kind == FeatureKind::kNgramBinary) {
    // Size of the intersection of two sorted index sets.
    double count = 0.0;
    auto i = a.indices.begin();
    auto j = b.indices.begin();
    while (i != a.indices.end() && j != b.indices.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        count += 1.0;
        ++i;
        ++j;
      }
    }
    return count;
  }
  const FeatureVector& sparse = a.kind == FeatureKind::kNgramBinary ? a : b;
  const FeatureVector& dense = a.kind == FeatureKind::kNgramBinary ? b : a;
  return Dot(dense.values, sparse);
}

double Dot(std::span<const double> w, const FeatureVector& x) {
  double sum = 0.0;
  x.ForEachNonZero([&](std::size_t j, double v) { sum += w[j] * v; });
  return sum;
}

std::vector<std::string> ExtractNgrams(const std::vector<std::string>& tokens, int n_max) {
  std::vector<std::string> out;
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    std::string gram;
    for (int n = 1; n <= n_max && start + n <= tokens.size(); ++n) {
      if (n > 1) gram.push_back(' ');
      gram += tokens[start + n - 1];
      out.push_back(gram);
    }
  }
  return out;
}

void NgramVocabulary::Add(std::string ngram) {
  auto [it, inserted] = index_.emplace(ngram, ngrams_.size());
  if (inserted) ngrams_.push_back(std::move(ngram));
}

NgramVocabulary NgramVocabulary::Build(const std::vector<CleanTweet>& corpus, int n_max) {
  if (n_max < 1) throw ArgumentError("n-gram length must be at least 1");
  NgramVocabulary vocab;
  vocab.n_max_ = n_max;
  for (const auto& tweet : corpus) {
    for (auto& gram : ExtractNgrams(tweet.tokens, n_max)) vocab.Add(std::move(gram));
  }
  return vocab;
}

NgramVocabulary NgramVocabulary::Parse(std::string_view text, int n_max) {
  if (n_max < 1) throw ArgumentError("n-gram length must be at least 1");
  NgramVocabulary vocab;
  vocab.n_max_ = n_max;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto tab = line.find('\t');
    auto index = tab == std::string_view::npos ? std::nullopt
                                               : detail::ParseLong(line.substr(0, tab));
    if (!index || *index != static_cast<long>(vocab.size())) {
      throw FormatError("vocabulary line " + std::to_string(line_no) +
                        ": expected index " + std::to_string(vocab.size()));
    }
    std::string gram(line.substr(tab + 1));
    if (vocab.index_.count(gram)) {
      throw FormatError("vocabulary line " + std::to_string(line_no) + ": duplicate n-gram");
    }
    vocab.Add(std::move(gram));
  }
  return vocab;
}

std::optional<std::size_t> NgramVocabulary::Find(std::string_view ngram) const {
  auto it = index_.find(std::string(ngram));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FeatureVector NgramVocabulary::Vectorize(const CleanTweet& tweet) const {
  std::vector<std::uint32_t> active;
  for (const auto& gram : ExtractNgrams(tweet.tokens, n_max_)) {
    auto it = index_.find(gram);
    if (it != index_.end()) active.push_back(static_cast<std::uint32_t>(it->second));
  }
  return FeatureVector::Sparse(size(), std::move(active));
}

std::string NgramVocabulary::Format() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < ngrams_.size(); ++i) out << i << '\t' << ngrams_[i] << '\n';
  return out.str();
}

namespace {

std::vector<std::string_view> SplitSpaces(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) parts.push_back(line.substr(start, i - start));
  }
  return parts;
}

}  // namespace

EmbeddingTable EmbeddingTable::Parse(std::string_view text) {
  EmbeddingTable table;
  bool dimension_known = false;
  std::optional<long> expected_count;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto parts = SplitSpaces(line);
    if (parts.empty()) continue;
    auto where = [&] { return "embedding line " + std::to_string(line_no) + ": "; };

    if (line_no == 1 && parts.size() == 2) {
      auto count = detail::ParseLong(parts[0]);
      auto dim = detail::ParseLong(parts[1]);
      if (count && dim && *count >= 0 && *dim > 0) {
        expected_count = *count;
        table.dimension_ = static_cast<std::size_t>(*dim);
        dimension_known = true;
        continue;
      }
    }
    if (!dimension_known) {
      if (parts.size() < 2) throw FormatError(where() + "word without a vector");
      table.dimension_ = parts.size() - 1;
      dimension_known = true;
    }
    if (parts.size() != table.dimension_ + 1) {
      throw FormatError(where() + "expected " + std::to_string(table.dimension_) +
                        " values, found " + std::to_string(parts.size() - 1));
    }
    std::vector<double> vec(table.dimension_);
    for (std::size_t j = 0; j < table.dimension_; ++j) {
      auto value = detail::ParseDouble(parts[j + 1]);
      if (!value) {
        throw FormatError(where() + "invalid number '" + std::string(parts[j + 1]) + "'");
      }
      vec[j] = *value;
    }
    // First occurrence of a repeated word wins.
    table.vectors_.emplace(std::string(parts[0]), std::move(vec));
  }
  if (expected_count && static_cast<std::size_t>(*expected_count) != table.vectors_.size()) {
    throw FormatError("embedding header announces " + std::to_string(*expected_count) +
                      " words, found " + std::to_string(table.vectors_.size()));
  }
  return table;
}

EmbeddingTable EmbeddingTable::Load(const std::string& path) {
  try {
    return Parse(csv::ReadFile(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void EmbeddingTable::Set(std::string word, std::vector<double> vector) {
  if (vector.size() != dimension_) throw ArgumentError("embedding dimension mismatch");
  vectors_[std::move(word)] = std::move(vector);
}

const std::vector<double>* EmbeddingTable::Find(std::string_view word) const {
  auto it = vectors_.find(std::string(word));
  return it == vectors_.end() ? nullptr : &it->second;
}

FeatureVector EmbeddingTable::Embed(const std::vector<std::string>& tokens) const {
  std::vector<double> sum(dimension_, 0.0);
  for (const auto& token : tokens) {
    if (const auto* vec = Find(token)) {
      for (std::size_t j = 0; j < dimension_; ++j) sum[j] += (*vec)[j];
    }
  }
  return FeatureVector::Dense(std::move(sum));
}

FeatureVector EmbeddingTable::Embed(const CleanTweet& tweet) const {
  return Embed(tweet.tokens);
}

}  // namespace stocksent
