#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "stocksent/error.h"
#include "stocksent/ml.h"
#include "stocksent/random.h"

namespace stocksent {
namespace {

// Candidate splits are ranked by sum over children of sum_k count_k^2 / n_child,
// which orders them exactly as weighted Gini impurity does (higher is better).
constexpr double kTieEpsilon = 1e-9;

double SplitScore(const std::vector<long>& left, long n_left, const std::vector<long>& right,
                  long n_right) {
  double score = 0.0;
  if (n_left > 0) {
    double s = 0.0;
    for (long c : left) s += static_cast<double>(c) * static_cast<double>(c);
    score += s / static_cast<double>(n_left);
  }
  if (n_right > 0) {
    double s = 0.0;
    for (long c : right) s += static_cast<double>(c) * static_cast<double>(c);
    score += s / static_cast<double>(n_right);
  }
  return score;
}

struct Candidate {
  bool valid = false;
  double score = 0.0;
  std::size_t feature = 0;
  double threshold = 0.0;

  bool Beats(const Candidate& other) const {
    if (!other.valid) return valid;
    if (score > other.score + kTieEpsilon) return true;
    if (score < other.score - kTieEpsilon) return false;
    if (feature != other.feature) return feature < other.feature;
    return threshold < other.threshold;
  }
};

// Draws distinct features in random order without materialising a
// permutation of the full feature range.
class FeatureSampler {
 public:
  FeatureSampler(std::size_t dimension, Rng& rng) : dimension_(dimension), rng_(rng) {}

  bool Exhausted() const { return drawn_ >= dimension_; }

  std::size_t Next() {
    std::size_t j = drawn_ + rng_.Below(dimension_ - drawn_);
    std::size_t picked = Get(j);
    swapped_[j] = Get(drawn_);
    ++drawn_;
    return picked;
  }

 private:
  std::size_t Get(std::size_t i) const {
    auto it = swapped_.find(i);
    return it == swapped_.end() ? i : it->second;
  }

  std::size_t dimension_;
  Rng& rng_;
  std::size_t drawn_ = 0;
  std::unordered_map<std::size_t, std::size_t> swapped_;
};

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, int features_per_split, std::uint64_t seed)
      : data_(data),
        num_classes_(data.classes.size()),
        features_per_split_(static_cast<std::size_t>(std::max(1, features_per_split))),
        rng_(seed) {
    class_of_.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      class_of_.push_back(data.ClassIndex(data.label(i)));
    }
  }

  DecisionTree Build(std::vector<std::size_t> rows) {
    DecisionTree tree;
    struct Pending {
      int node;
      std::vector<std::size_t> rows;
    };
    std::vector<Pending> stack;
    tree.nodes.emplace_back();
    stack.push_back({0, std::move(rows)});
    while (!stack.empty()) {
      Pending item = std::move(stack.back());
      stack.pop_back();

      std::vector<long> counts(num_classes_, 0);
      for (auto r : item.rows) ++counts[class_of_[r]];
      const std::size_t majority = static_cast<std::size_t>(
          std::max_element(counts.begin(), counts.end()) - counts.begin());
      tree.nodes[item.node].leaf_class = static_cast<int>(majority);

      const bool pure = counts[majority] == static_cast<long>(item.rows.size());
      if (pure || item.rows.size() < 2) continue;

      Candidate best = FindSplit(item.rows, counts);
      if (!best.valid) continue;

      std::vector<std::size_t> left_rows, right_rows;
      for (auto r : item.rows) {
        (data_.instances[r].At(best.feature) <= best.threshold ? left_rows : right_rows)
            .push_back(r);
      }
      const int left = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      TreeNode& node = tree.nodes[item.node];
      node.feature = static_cast<int>(best.feature);
      node.threshold = best.threshold;
      node.left = left;
      node.right = left + 1;
      // Right pushed first so the left subtree is expanded first.
      stack.push_back({left + 1, std::move(right_rows)});
      stack.push_back({left, std::move(left_rows)});
    }
    return tree;
  }

 private:
  // Evaluates features in random order until at least features_per_split
  // have been tried and one of them separates the rows.
  Candidate FindSplit(const std::vector<std::size_t>& rows, const std::vector<long>& counts) {
    if (data_.kind == FeatureKind::kNgramBinary) PrepareSparse(rows);
    FeatureSampler sampler(data_.dimension, rng_);
    Candidate best;
    std::size_t tried = 0;
    while (!sampler.Exhausted() && (tried < features_per_split_ || !best.valid)) {
      std::size_t feature = sampler.Next();
      ++tried;
      Candidate c = data_.kind == FeatureKind::kNgramBinary
                        ? EvaluateSparse(feature, rows.size(), counts)
                        : EvaluateDense(feature, rows, counts);
      if (c.Beats(best)) best = c;
    }
    return best;
  }

  // Per-class counts of rows carrying each active feature.
  void PrepareSparse(const std::vector<std::size_t>& rows) {
    present_.clear();
    present_counts_.clear();
    for (auto r : rows) {
      for (auto j : data_.instances[r].indices) {
        auto [it, inserted] = present_.emplace(j, present_counts_.size());
        if (inserted) present_counts_.resize(present_counts_.size() + num_classes_, 0);
        ++present_counts_[it->second + class_of_[r]];
      }
    }
  }

  Candidate EvaluateSparse(std::size_t feature, std::size_t n, const std::vector<long>& counts) {
    auto it = present_.find(static_cast<std::uint32_t>(feature));
    if (it == present_.end()) return {};
    std::vector<long> right(present_counts_.begin() + static_cast<long>(it->second),
                            present_counts_.begin() + static_cast<long>(it->second + num_classes_));
    long n_right = 0;
    for (long c : right) n_right += c;
    if (n_right == static_cast<long>(n)) return {};
    std::vector<long> left(num_classes_);
    for (std::size_t k = 0; k < num_classes_; ++k) left[k] = counts[k] - right[k];
    return {true, SplitScore(left, static_cast<long>(n) - n_right, right, n_right), feature, 0.5};
  }

  Candidate EvaluateDense(std::size_t feature, const std::vector<std::size_t>& rows,
                          const std::vector<long>& counts) {
    scratch_.clear();
    for (auto r : rows) scratch_.emplace_back(data_.instances[r].values[feature], class_of_[r]);
    std::sort(scratch_.begin(), scratch_.end());
    if (scratch_.front().first == scratch_.back().first) return {};

    std::vector<long> left(num_classes_, 0);
    std::vector<long> right = counts;
    const long n = static_cast<long>(rows.size());
    Candidate best;
    for (std::size_t i = 0; i + 1 < scratch_.size(); ++i) {
      ++left[scratch_[i].second];
      --right[scratch_[i].second];
      if (scratch_[i].first == scratch_[i + 1].first) continue;
      const long n_left = static_cast<long>(i) + 1;
      const double lo = scratch_[i].first;
      const double hi = scratch_[i + 1].first;
      double threshold = lo + (hi - lo) / 2.0;
      if (threshold >= hi) threshold = lo;  // adjacent doubles
      Candidate c{true, SplitScore(left, n_left, right, n - n_left), feature, threshold};
      if (c.Beats(best)) best = c;
    }
    return best;
  }

  const Dataset& data_;
  std::size_t num_classes_;
  std::size_t features_per_split_;
  Rng rng_;
  std::vector<std::size_t> class_of_;
  std::unordered_map<std::uint32_t, std::size_t> present_;
  std::vector<long> present_counts_;
  std::vector<std::pair<double, std::size_t>> scratch_;
};

}  // namespace

std::size_t DecisionTree::PredictClassIndex(const FeatureVector& x) const {
  int i = 0;
  while (nodes[i].feature >= 0) {
    i = x.At(static_cast<std::size_t>(nodes[i].feature)) <= nodes[i].threshold ? nodes[i].left
                                                                               : nodes[i].right;
  }
  return static_cast<std::size_t>(nodes[i].leaf_class);
}

std::size_t DecisionTree::Depth() const {
  std::vector<std::size_t> depth(nodes.size(), 0);
  std::size_t max_depth = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    max_depth = std::max(max_depth, depth[i]);
    if (nodes[i].feature >= 0) {
      depth[nodes[i].left] = depth[i] + 1;
      depth[nodes[i].right] = depth[i] + 1;
    }
  }
  return max_depth;
}

std::size_t DecisionTree::LeafCount() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.feature < 0; }));
}

DecisionTree GrowTree(const Dataset& data, const std::vector<std::size_t>& rows,
                      int features_per_split, std::uint64_t seed) {
  if (rows.empty()) throw ArgumentError("cannot grow a tree on zero rows");
  TreeBuilder builder(data, features_per_split, seed);
  DecisionTree tree = builder.Build(rows);
  tree.sample = rows;
  return tree;
}

SentimentModel TrainRandomForest(const Dataset& train, const ForestOptions& options) {
  train.Validate();
  if (train.size() == 0) throw ArgumentError("empty training set");
  if (options.num_trees < 1) throw ArgumentError("a forest needs at least one tree");
  if (train.dimension == 0) throw ArgumentError("training data has no features");

  int per_split = options.features_per_split;
  if (per_split <= 0) {
    per_split = std::max(
        1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(train.dimension)))));
  }
  per_split = std::min<int>(per_split, static_cast<int>(train.dimension));

  ForestParams params;
  params.trees.resize(static_cast<std::size_t>(options.num_trees));
  auto grow = [&](std::size_t t) {
    const std::uint64_t tree_seed = Rng::Derive(options.seed, t);
    std::vector<std::size_t> rows(train.size());
    if (options.bootstrap) {
      Rng sampler(Rng::Derive(tree_seed, 0));
      for (auto& r : rows) r = sampler.Below(train.size());
    } else {
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    }
    params.trees[t] = GrowTree(train, rows, per_split, Rng::Derive(tree_seed, 1));
  };

  const std::size_t threads =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(1, options.threads)), 1,
                              params.trees.size());
  if (threads == 1) {
    for (std::size_t t = 0; t < params.trees.size(); ++t) grow(t);
  } else {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t t = w; t < params.trees.size(); t += threads) grow(t);
      });
    }
  }
  return SentimentModel(Algorithm::kRandomForest, train.kind, train.dimension, train.classes,
                        options.seed, std::move(params));
}

}  // namespace stocksent
