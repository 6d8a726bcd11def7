#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stocksent/preprocess.h"

namespace stocksent {

using Label = int;

// Sentiment annotation scheme.
inline constexpr Label kPositive = 1;
inline constexpr Label kNeutral = 0;
inline constexpr Label kNegative = 2;

enum class FeatureKind { kNgramBinary, kEmbeddingSum };

std::string_view ToString(FeatureKind kind);
FeatureKind ParseFeatureKind(std::string_view text);

// Either a sorted set of active column indices (binary n-gram presence) or a
// dense real vector (summed embeddings).
struct FeatureVector {
  FeatureKind kind = FeatureKind::kEmbeddingSum;
  std::size_t dimension = 0;
  std::vector<std::uint32_t> indices;
  std::vector<double> values;
  std::optional<Label> label;

  static FeatureVector Sparse(std::size_t dimension, std::vector<std::uint32_t> indices);
  static FeatureVector Dense(std::vector<double> values);

  // Value of column `j` (0/1 for the binary kind).
  double At(std::size_t j) const;

  template <typename Fn>
  void ForEachNonZero(Fn&& fn) const {
    if (kind == FeatureKind::kNgramBinary) {
      for (auto j : indices) fn(static_cast<std::size_t>(j), 1.0);
    } else {
      for (std::size_t j = 0; j < values.size(); ++j) {
        if (values[j] != 0.0) fn(j, values[j]);
      }
    }
  }
};

double Dot(const FeatureVector& a, const FeatureVector& b);
double Dot(std::span<const double> w, const FeatureVector& x);

class NgramVocabulary {
 public:
  // Every contiguous token run of length 1..n_max, indexed by first
  // appearance scanning tweets in order, and within a tweet by start
  // position then length. Throws ArgumentError if n_max < 1.
  static NgramVocabulary Build(const std::vector<CleanTweet>& corpus, int n_max);

  // Inverse of Format(): `index<TAB>ngram` lines.
  static NgramVocabulary Parse(std::string_view text, int n_max);

  std::size_t size() const { return ngrams_.size(); }
  int n_max() const { return n_max_; }
  const std::string& ngram(std::size_t index) const { return ngrams_[index]; }
  std::optional<std::size_t> Find(std::string_view ngram) const;

  FeatureVector Vectorize(const CleanTweet& tweet) const;
  std::string Format() const;

 private:
  void Add(std::string ngram);

  int n_max_ = 1;
  std::vector<std::string> ngrams_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Space-joined n-grams of one token list, lengths 1..n_max, in start/length
// order. Duplicates kept.
std::vector<std::string> ExtractNgrams(const std::vector<std::string>& tokens, int n_max);

class EmbeddingTable {
 public:
  // Word-vector text format: optional `<count> <dim>` header, then
  // `word v1 ... vdim` per line. Throws FormatError (with line number) on a
  // row whose length disagrees with the table dimension.
  static EmbeddingTable Load(const std::string& path);
  static EmbeddingTable Parse(std::string_view text);

  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dimension) : dimension_(dimension) {}

  // Replaces an existing entry. Throws ArgumentError on a length mismatch.
  void Set(std::string word, std::vector<double> vector);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<double>* Find(std::string_view word) const;

  // Elementwise sum of the vectors of all tokens found in the table.
  FeatureVector Embed(const CleanTweet& tweet) const;
  FeatureVector Embed(const std::vector<std::string>& tokens) const;

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

}  // namespace stocksent
