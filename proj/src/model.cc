#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "numbers.h"
#include "stocksent/error.h"
#include "stocksent/ml.h"

namespace stocksent {
namespace {

constexpr std::string_view kMagic = "stocksent-model 1";

void WriteNumbers(std::ostream& out, const double* values, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out << ' ';
    out << detail::FormatDouble(values[i]);
  }
  out << '\n';
}

// Line-oriented reader for the model format; errors carry the line number.
class LineReader {
 public:
  LineReader(std::istream& in, std::size_t lines_consumed)
      : in_(in), line_no_(lines_consumed) {}

  std::istringstream Next(std::string_view expected_key) {
    std::string line;
    do {
      if (!std::getline(in_, line)) Fail("unexpected end of model file");
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
    } while (line.empty());
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    if (!expected_key.empty() && key != expected_key) {
      Fail("expected '" + std::string(expected_key) + "', found '" + key + "'");
    }
    return fields;
  }

  std::vector<double> Numbers(std::size_t count) {
    std::string line;
    if (!std::getline(in_, line)) Fail("unexpected end of model file");
    ++line_no_;
    std::vector<double> values;
    values.reserve(count);
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\r')) ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\r') ++i;
      if (i == start) break;
      auto v = detail::ParseDouble(std::string_view(line).substr(start, i - start));
      if (!v) Fail("invalid number");
      values.push_back(*v);
    }
    if (values.size() != count) {
      Fail("expected " + std::to_string(count) + " numbers, found " +
           std::to_string(values.size()));
    }
    return values;
  }

  template <typename T>
  T Read(std::istringstream& fields, const char* what) {
    T value{};
    if (!(fields >> value)) Fail(std::string("missing or invalid ") + what);
    return value;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw FormatError("model line " + std::to_string(line_no_) + ": " + message);
  }

 private:
  std::istream& in_;
  std::size_t line_no_;
};

}  // namespace

std::string_view ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kRandomForest:
      return "random-forest";
    case Algorithm::kLogisticRegression:
      return "logistic";
    case Algorithm::kSvmSmo:
      return "smo";
  }
  return "?";
}

Algorithm ParseAlgorithm(std::string_view text) {
  if (text == "random-forest") return Algorithm::kRandomForest;
  if (text == "logistic") return Algorithm::kLogisticRegression;
  if (text == "smo") return Algorithm::kSvmSmo;
  throw ArgumentError("unknown algorithm '" + std::string(text) + "'");
}

std::size_t ArgMax(const std::vector<double>& scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

SentimentModel::SentimentModel(Algorithm algorithm, FeatureKind kind, std::size_t dimension,
                               std::vector<Label> classes, std::uint64_t seed, Params params)
    : algorithm_(algorithm),
      kind_(kind),
      dimension_(dimension),
      classes_(std::move(classes)),
      seed_(seed),
      params_(std::move(params)) {
  if (classes_.empty()) throw ArgumentError("a model needs at least one class");
}

void SentimentModel::CheckInput(const FeatureVector& x) const {
  if (x.kind != kind_) {
    throw ArgumentError("model expects " + std::string(ToString(kind_)) + " features, got " +
                        std::string(ToString(x.kind)));
  }
  if (x.dimension != dimension_ ||
      (x.kind == FeatureKind::kEmbeddingSum && x.values.size() != dimension_)) {
    throw ArgumentError("model expects dimension " + std::to_string(dimension_) + ", got " +
                        std::to_string(x.dimension));
  }
}

std::vector<double> SentimentModel::PredictScores(const FeatureVector& x) const {
  CheckInput(x);
  const std::size_t k = classes_.size();
  std::vector<double> scores(k, 0.0);
  switch (algorithm_) {
    case Algorithm::kRandomForest: {
      const auto& forest = std::get<ForestParams>(params_);
      for (const auto& tree : forest.trees) scores[tree.PredictClassIndex(x)] += 1.0;
      for (double& s : scores) s /= static_cast<double>(forest.trees.size());
      break;
    }
    case Algorithm::kLogisticRegression: {
      const auto& lr = std::get<LogisticParams>(params_);
      for (std::size_t c = 0; c < k; ++c) {
        scores[c] = lr.bias[c] +
                    Dot(std::span<const double>(lr.weights).subspan(c * dimension_, dimension_), x);
      }
      const double peak = *std::max_element(scores.begin(), scores.end());
      double norm = 0.0;
      for (double& s : scores) {
        s = std::exp(s - peak);
        norm += s;
      }
      for (double& s : scores) s /= norm;
      break;
    }
    case Algorithm::kSvmSmo: {
      const auto& svm = std::get<SvmParams>(params_);
      for (const auto& pair : svm.pairs) {
        scores[pair.Decision(x) >= 0.0 ? pair.positive : pair.negative] += 1.0;
      }
      if (!svm.pairs.empty()) {
        for (double& s : scores) s /= static_cast<double>(svm.pairs.size());
      }
      break;
    }
  }
  return scores;
}

Label SentimentModel::PredictLabel(const FeatureVector& x) const {
  return classes_[ArgMax(PredictScores(x))];
}

void SentimentModel::Save(std::ostream& out) const {
  out << kMagic << '\n';
  out << "algorithm " << ToString(algorithm_) << '\n';
  out << "features " << ToString(kind_) << '\n';
  out << "dimension " << dimension_ << '\n';
  out << "classes " << classes_.size();
  for (Label c : classes_) out << ' ' << c;
  out << '\n';
  out << "seed " << seed_ << '\n';
  const std::size_t k = classes_.size();
  switch (algorithm_) {
    case Algorithm::kRandomForest: {
      const auto& forest = std::get<ForestParams>(params_);
      out << "trees " << forest.trees.size() << '\n';
      for (const auto& tree : forest.trees) {
        out << "tree " << tree.nodes.size() << '\n';
        for (const auto& node : tree.nodes) {
          out << node.feature << ' ' << detail::FormatDouble(node.threshold) << ' ' << node.left
              << ' ' << node.right << ' ' << node.leaf_class << '\n';
        }
      }
      break;
    }
    case Algorithm::kLogisticRegression: {
      const auto& lr = std::get<LogisticParams>(params_);
      out << "bias\n";
      WriteNumbers(out, lr.bias.data(), k);
      out << "weights\n";
      for (std::size_t c = 0; c < k; ++c) {
        WriteNumbers(out, lr.weights.data() + c * dimension_, dimension_);
      }
      break;
    }
    case Algorithm::kSvmSmo: {
      const auto& svm = std::get<SvmParams>(params_);
      out << "pairs " << svm.pairs.size() << '\n';
      for (const auto& pair : svm.pairs) {
        out << "pair " << pair.positive << ' ' << pair.negative << ' '
            << detail::FormatDouble(pair.bias) << '\n';
        WriteNumbers(out, pair.weights.data(), dimension_);
      }
      break;
    }
  }
  out << "end\n";
}

SentimentModel SentimentModel::Load(std::istream& in) {
  {
    std::string line;
    if (!std::getline(in, line) || (line != kMagic && line != std::string(kMagic) + "\r")) {
      throw FormatError("not a stocksent model file");
    }
  }
  LineReader reader(in, 1);
  Algorithm algorithm;
  FeatureKind kind;
  try {
    auto f = reader.Next("algorithm");
    algorithm = ParseAlgorithm(reader.Read<std::string>(f, "algorithm"));
    f = reader.Next("features");
    kind = ParseFeatureKind(reader.Read<std::string>(f, "feature kind"));
  } catch (const ArgumentError& e) {
    reader.Fail(e.what());
  }
  auto f = reader.Next("dimension");
  const auto dimension = reader.Read<std::size_t>(f, "dimension");
  f = reader.Next("classes");
  const auto k = reader.Read<std::size_t>(f, "class count");
  if (k == 0) reader.Fail("class count must be positive");
  std::vector<Label> classes(k);
  for (auto& c : classes) c = reader.Read<Label>(f, "class label");
  f = reader.Next("seed");
  const auto seed = reader.Read<std::uint64_t>(f, "seed");

  Params params;
  switch (algorithm) {
    case Algorithm::kRandomForest: {
      ForestParams forest;
      f = reader.Next("trees");
      const auto num_trees = reader.Read<std::size_t>(f, "tree count");
      for (std::size_t t = 0; t < num_trees; ++t) {
        f = reader.Next("tree");
        const auto num_nodes = reader.Read<std::size_t>(f, "node count");
        if (num_nodes == 0) reader.Fail("empty tree");
        DecisionTree tree;
        tree.nodes.resize(num_nodes);
        for (std::size_t index = 0; index < num_nodes; ++index) {
          TreeNode& node = tree.nodes[index];
          auto v = reader.Numbers(5);
          node.feature = static_cast<int>(v[0]);
          node.threshold = v[1];
          node.left = static_cast<int>(v[2]);
          node.right = static_cast<int>(v[3]);
          node.leaf_class = static_cast<int>(v[4]);
          const auto n = static_cast<int>(num_nodes);
          if (node.feature >= static_cast<int>(dimension) ||
              (node.feature >= 0 &&
               (node.left <= static_cast<int>(index) || node.left >= n ||
                node.right <= static_cast<int>(index) || node.right >= n)) ||
              node.leaf_class < 0 || node.leaf_class >= static_cast<int>(k)) {
            reader.Fail("malformed tree node");
          }
        }
        forest.trees.push_back(std::move(tree));
      }
      if (forest.trees.empty()) reader.Fail("forest without trees");
      params = std::move(forest);
      break;
    }
    case Algorithm::kLogisticRegression: {
      LogisticParams lr;
      reader.Next("bias");
      lr.bias = reader.Numbers(k);
      reader.Next("weights");
      lr.weights.reserve(k * dimension);
      for (std::size_t c = 0; c < k; ++c) {
        auto row = reader.Numbers(dimension);
        lr.weights.insert(lr.weights.end(), row.begin(), row.end());
      }
      params = std::move(lr);
      break;
    }
    case Algorithm::kSvmSmo: {
      SvmParams svm;
      f = reader.Next("pairs");
      const auto num_pairs = reader.Read<std::size_t>(f, "pair count");
      for (std::size_t p = 0; p < num_pairs; ++p) {
        f = reader.Next("pair");
        PairwiseSvm pair;
        pair.positive = reader.Read<std::size_t>(f, "positive class");
        pair.negative = reader.Read<std::size_t>(f, "negative class");
        auto bias = detail::ParseDouble(reader.Read<std::string>(f, "bias"));
        if (!bias || pair.positive >= k || pair.negative >= k) reader.Fail("malformed pair");
        pair.bias = *bias;
        pair.weights = reader.Numbers(dimension);
        svm.pairs.push_back(std::move(pair));
      }
      params = std::move(svm);
      break;
    }
  }
  reader.Next("end");
  return SentimentModel(algorithm, kind, dimension, std::move(classes), seed, std::move(params));
}

}  // namespace stocksent
