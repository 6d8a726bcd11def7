#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "stocksent/features.h"

namespace stocksent {

// The sentiment class order used throughout: positive, neutral, negative.
inline const std::vector<Label> kSentimentClasses = {kPositive, kNeutral, kNegative};

struct Dataset {
  FeatureKind kind = FeatureKind::kEmbeddingSum;
  std::size_t dimension = 0;
  std::vector<Label> classes;
  std::vector<FeatureVector> instances;  // every instance carries a label

  std::size_t size() const { return instances.size(); }
  Label label(std::size_t i) const { return *instances[i].label; }
  // Position of `label` in `classes`; ArgumentError if absent.
  std::size_t ClassIndex(Label label) const;
  // Throws ArgumentError unless kinds, dimensions and labels are consistent.
  void Validate() const;
};

enum class SplitMode { kOrdered, kShuffled };
std::string_view ToString(SplitMode mode);
SplitMode ParseSplitMode(std::string_view text);

struct Split {
  Dataset train;
  Dataset test;
  // Original positions of the train/test instances.
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
};

// train gets floor(n * train_fraction) instances. Shuffled mode permutes
// with the seeded generator first. Throws ArgumentError if either side
// would be empty.
Split SplitDataset(const Dataset& data, double train_fraction, SplitMode mode,
                   std::uint64_t seed);
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> SplitIndices(
    std::size_t n, double train_fraction, SplitMode mode, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Random forest

struct TreeNode {
  // Internal node: go left when x[feature] <= threshold. Leaf: feature < 0.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  // Index into the model's class list (leaves only).
  int leaf_class = 0;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  // Training rows the tree was grown on, with bootstrap repeats. Not
  // serialized and not part of equality.
  std::vector<std::size_t> sample;

  std::size_t PredictClassIndex(const FeatureVector& x) const;
  std::size_t Depth() const;
  std::size_t LeafCount() const;
  friend bool operator==(const DecisionTree& a, const DecisionTree& b) {
    return a.nodes == b.nodes;
  }
};

struct ForestOptions {
  int num_trees = 100;
  // 0 selects floor(sqrt(dimension)), floored at 1.
  int features_per_split = 0;
  // Off grows every tree on the full training set in input order.
  bool bootstrap = true;
  std::uint64_t seed = 1;
  // Trees are seeded independently, so the result does not depend on this.
  int threads = 1;
};

struct ForestParams {
  std::vector<DecisionTree> trees;
};

// ---------------------------------------------------------------------------
// Multinomial logistic regression

struct LogisticOptions {
  double l2 = 1e-8;
  double learning_rate = 0.01;
  int epochs = 500;
  // Called after every epoch with the loss evaluated before that epoch's step.
  std::function<void(int epoch, double loss)> on_epoch;
};

struct LogisticParams {
  // Row-major classes x dimension.
  std::vector<double> weights;
  std::vector<double> bias;
};

// Mean cross-entropy plus (l2 / 2) * ||W||^2; bias not penalized.
// `gradient`, when non-null, is resized and filled with d/dW then d/db
// (same layout as weights followed by bias).
double LogisticLoss(const Dataset& data, const LogisticParams& params, double l2,
                    std::vector<double>* gradient = nullptr);

// ---------------------------------------------------------------------------
// Linear SVM, one-vs-one, simplified SMO

struct SmoOptions {
  double c = 1.0;
  double tolerance = 1e-3;
  int max_passes = 10;
  std::uint64_t seed = 1;
  // Hard stop on full sweeps per subproblem.
  int max_sweeps = 10000;
};

struct PairwiseSvm {
  std::size_t positive = 0;  // class index voted for when w.x + b >= 0
  std::size_t negative = 0;
  std::vector<double> weights;
  double bias = 0.0;
  // Training-time state; not serialized.
  std::vector<double> alphas;
  std::vector<int> targets;  // +1 / -1 per subproblem instance
  int sweeps = 0;

  double Decision(const FeatureVector& x) const;
};

struct SvmParams {
  std::vector<PairwiseSvm> pairs;
};

// ---------------------------------------------------------------------------

enum class Algorithm { kRandomForest, kLogisticRegression, kSvmSmo };
std::string_view ToString(Algorithm algorithm);
Algorithm ParseAlgorithm(std::string_view text);

class SentimentModel {
 public:
  using Params = std::variant<ForestParams, LogisticParams, SvmParams>;

  SentimentModel(Algorithm algorithm, FeatureKind kind, std::size_t dimension,
                 std::vector<Label> classes, std::uint64_t seed, Params params);

  Algorithm algorithm() const { return algorithm_; }
  FeatureKind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }
  const std::vector<Label>& classes() const { return classes_; }
  std::uint64_t seed() const { return seed_; }
  const Params& params() const { return params_; }

  // One finite score per class, in `classes()` order. Throws ArgumentError
  // when x does not match the model's feature kind or dimension.
  std::vector<double> PredictScores(const FeatureVector& x) const;
  Label PredictLabel(const FeatureVector& x) const;

  void Save(std::ostream& out) const;
  static SentimentModel Load(std::istream& in);

 private:
  void CheckInput(const FeatureVector& x) const;

  Algorithm algorithm_;
  FeatureKind kind_;
  std::size_t dimension_;
  std::vector<Label> classes_;
  std::uint64_t seed_;
  Params params_;
};

// First maximum wins.
std::size_t ArgMax(const std::vector<double>& scores);

SentimentModel TrainRandomForest(const Dataset& train, const ForestOptions& options = {});
SentimentModel TrainLogisticRegression(const Dataset& train,
                                       const LogisticOptions& options = {});
SentimentModel TrainSvmSmo(const Dataset& train, const SmoOptions& options = {});

// Grows one tree over `rows` of `data`. Exposed so a forest's behaviour can
// be checked against a stand-alone tree.
DecisionTree GrowTree(const Dataset& data, const std::vector<std::size_t>& rows,
                      int features_per_split, std::uint64_t seed);

}  // namespace stocksent
