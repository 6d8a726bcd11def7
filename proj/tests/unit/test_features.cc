#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "stocksent/error.h"
#include "stocksent/features.h"
#include "stocksent/random.h"

using namespace stocksent;
using Tokens = std::vector<std::string>;

namespace {

CleanTweet Clean(Tokens tokens) {
  CleanTweet t;
  t.id = "t";
  t.tokens = std::move(tokens);
  return t;
}

// Brute-force n-gram set of a token list.
std::set<std::string> NgramSet(const Tokens& tokens, int n_max) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    for (std::size_t j = i; j < tokens.size() && j - i < static_cast<std::size_t>(n_max); ++j) {
      std::string gram;
      for (std::size_t k = i; k <= j; ++k) gram += (k > i ? " " : "") + tokens[k];
      out.insert(gram);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("n-gram vocabulary from the worked example sentence") {
  const Tokens sentence = {"microsoft", "is", "launching", "a", "new", "product"};
  auto vocab = NgramVocabulary::Build({Clean(sentence)}, 3);
  std::vector<std::string> trigrams;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const auto& g = vocab.ngram(i);
    if (std::count(g.begin(), g.end(), ' ') == 2) trigrams.push_back(g);
  }
  CHECK(trigrams == std::vector<std::string>{"microsoft is launching", "is launching a",
                                             "launching a new", "a new product"});
  CHECK(vocab.size() == 6 + 5 + 4);
  // First-appearance order: by start position, then length.
  CHECK(vocab.ngram(0) == "microsoft");
  CHECK(vocab.ngram(1) == "microsoft is");
  CHECK(vocab.ngram(2) == "microsoft is launching");
  CHECK(vocab.ngram(3) == "is");
}

TEST_CASE("n-gram vocabulary edge cases") {
  CHECK(NgramVocabulary::Build({Clean({"cool"})}, 2).size() == 1);
  auto once = NgramVocabulary::Build({Clean({"a", "b", "a"})}, 2);
  auto twice = NgramVocabulary::Build({Clean({"a", "b", "a"}), Clean({"a", "b", "a"})}, 2);
  CHECK(once.Format() == twice.Format());
  CHECK(once.Format() == "0\ta\n1\ta b\n2\tb\n3\tb a\n");
  CHECK_THROWS_AS(NgramVocabulary::Build({}, 0), ArgumentError);
  CHECK(NgramVocabulary::Build({}, 1).size() == 0);
}

TEST_CASE("vocabulary format round trip") {
  auto vocab = NgramVocabulary::Build({Clean({"x", "y", "z"}), Clean({"y", "w"})}, 3);
  auto back = NgramVocabulary::Parse(vocab.Format(), 3);
  CHECK(back.Format() == vocab.Format());
  CHECK_THROWS_AS(NgramVocabulary::Parse("0\ta\n2\tb\n", 1), FormatError);
}

TEST_CASE("vectorize_ngrams") {
  const Tokens first = {"surface", "pro", "power", "plug"};
  auto vocab = NgramVocabulary::Build({Clean(first), Clean({"windows", "update"})}, 2);
  SUBCASE("source tweet sets all of its own n-grams") {
    auto v = vocab.Vectorize(Clean(first));
    CHECK(v.indices.size() == NgramSet(first, 2).size());
    for (const auto& g : NgramSet(first, 2)) {
      CHECK(std::binary_search(v.indices.begin(), v.indices.end(), *vocab.Find(g)));
    }
  }
  CHECK(vocab.Vectorize(Clean({})).indices.empty());
  CHECK(vocab.Vectorize(Clean({"unseen", "words"})).indices.empty());
  CHECK(vocab.Vectorize(Clean({})).dimension == vocab.size());
  // Only the tweet's n-gram set matters.
  CHECK(vocab.Vectorize(Clean({"windows", "update", "windows", "update"})).indices ==
        vocab.Vectorize(Clean({"windows", "update"})).indices);
}

TEST_CASE("vocabulary properties on random corpora") {
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<CleanTweet> corpus;
    const auto n = 1 + rng.Below(8);
    for (std::uint64_t i = 0; i < n; ++i) {
      Tokens tokens;
      const auto len = rng.Below(7);
      for (std::uint64_t j = 0; j < len; ++j) tokens.push_back(std::string(1, static_cast<char>('a' + rng.Below(4))));
      corpus.push_back(Clean(tokens));
    }
    const int n_max = 1 + static_cast<int>(rng.Below(4));
    auto vocab = NgramVocabulary::Build(corpus, n_max);
    CHECK(NgramVocabulary::Build(corpus, n_max).Format() == vocab.Format());

    std::set<std::string> expected;
    for (const auto& t : corpus) {
      auto s = NgramSet(t.tokens, n_max);
      expected.insert(s.begin(), s.end());
    }
    CHECK(vocab.size() == expected.size());
    for (const auto& t : corpus) {
      auto v = vocab.Vectorize(t);
      CHECK(v.indices.size() == NgramSet(t.tokens, n_max).size());
      if (!t.tokens.empty()) CHECK_FALSE(v.indices.empty());
    }
  }
}

TEST_CASE("load_embeddings") {
  auto plain = EmbeddingTable::Parse("king 1 0 0\nqueen 0 1 0\n");
  CHECK(plain.size() == 2);
  CHECK(plain.dimension() == 3);
  auto with_header = EmbeddingTable::Parse("2 3\nking 1 0 0\r\nqueen 0 1 0\n");
  CHECK(with_header.size() == 2);
  CHECK(with_header.dimension() == 3);
  CHECK(*with_header.Find("queen") == *plain.Find("queen"));
  CHECK(*plain.Find("king") == std::vector<double>{1, 0, 0});
  CHECK(plain.Find("King") == nullptr);

  try {
    EmbeddingTable::Parse("king 1 0 0\nqueen 0 1\n");
    FAIL("expected a format error");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(EmbeddingTable::Parse("2 3\nking 1 0\n"), FormatError);
  CHECK_THROWS_AS(EmbeddingTable::Parse("3 3\nking 1 0 0\n"), FormatError);
  CHECK_THROWS_AS(EmbeddingTable::Parse("king 1 x 0\n"), FormatError);
}

TEST_CASE("embed_tweet") {
  auto table = EmbeddingTable::Parse("king 1 0 0\nqueen 0 1 0\n");
  CHECK(table.Embed(Clean({"king"})).values == std::vector<double>{1, 0, 0});
  CHECK(table.Embed(Clean({"king", "queen"})).values == std::vector<double>{1, 1, 0});
  CHECK(table.Embed(Clean({"pawn", "rook"})).values == std::vector<double>{0, 0, 0});
  CHECK(table.Embed(Clean({})).values == std::vector<double>{0, 0, 0});
  CHECK(table.Embed(Clean({"king"})).kind == FeatureKind::kEmbeddingSum);
}

TEST_CASE("embedding sum is permutation invariant and additive") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 5 + rng.Below(296);
    EmbeddingTable table(dim);
    for (int w = 0; w < 20; ++w) {
      std::vector<double> v(dim);
      for (auto& x : v) x = rng.Normal();
      table.Set("w" + std::to_string(w), std::move(v));
    }
    Tokens a, b;
    for (std::uint64_t i = 0, n = rng.Below(12); i < n; ++i) a.push_back("w" + std::to_string(rng.Below(25)));
    for (std::uint64_t i = 0, n = rng.Below(12); i < n; ++i) b.push_back("w" + std::to_string(rng.Below(25)));
    Tokens ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    Tokens shuffled = ab;
    rng.Shuffle(shuffled);

    auto sum_a = table.Embed(a).values;
    auto sum_b = table.Embed(b).values;
    auto sum_ab = table.Embed(ab).values;
    auto sum_shuffled = table.Embed(shuffled).values;
    REQUIRE(sum_ab.size() == dim);
    for (std::size_t j = 0; j < dim; ++j) {
      CHECK(std::abs(sum_ab[j] - (sum_a[j] + sum_b[j])) <= 1e-9);
      CHECK(std::abs(sum_ab[j] - sum_shuffled[j]) <= 1e-9);
    }
  }
}

TEST_CASE("dot products across representations") {
  auto s1 = FeatureVector::Sparse(6, {5, 1, 3, 3});
  auto s2 = FeatureVector::Sparse(6, {3, 4, 5});
  CHECK(s1.indices == std::vector<std::uint32_t>{1, 3, 5});
  CHECK(Dot(s1, s2) == 2.0);
  auto d = FeatureVector::Dense({1, 2, 3, 4, 5, 6});
  CHECK(Dot(s1, d) == 2 + 4 + 6);
  CHECK(Dot(d, d) == 91);
  CHECK(s1.At(3) == 1.0);
  CHECK(s1.At(4) == 0.0);
  CHECK_THROWS_AS(FeatureVector::Sparse(3, {3}), ArgumentError);
}
