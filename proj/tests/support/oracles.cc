#include "oracles.h"

#include <algorithm>
#include <set>

namespace stocksent::testing {
namespace {

double Gini(const std::vector<Label>& labels) {
  if (labels.empty()) return 0.0;
  std::vector<Label> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double p = static_cast<double>(j - i) / static_cast<double>(sorted.size());
    sum_sq += p * p;
    i = j;
  }
  return 1.0 - sum_sq;
}

}  // namespace

OracleGiniTree::OracleGiniTree(const Dataset& data, const std::vector<std::size_t>& rows)
    : data_(data) {
  Grow(rows, 0);
}

std::size_t OracleGiniTree::Grow(const std::vector<std::size_t>& rows, std::size_t depth) {
  const std::size_t id = nodes_.size();
  nodes_.emplace_back();
  nodes_[id].depth = depth;

  // Majority label; ties go to the class listed first.
  std::vector<long> counts(data_.classes.size(), 0);
  for (auto r : rows) {
    const auto it = std::find(data_.classes.begin(), data_.classes.end(), data_.label(r));
    ++counts[static_cast<std::size_t>(it - data_.classes.begin())];
  }
  std::size_t best_class = 0;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    if (counts[k] > counts[best_class]) best_class = k;
  }
  nodes_[id].label = data_.classes[best_class];
  if (rows.size() < 2 || counts[best_class] == static_cast<long>(rows.size())) return id;

  bool found = false;
  double best_impurity = 0.0;
  std::size_t best_feature = 0;
  double best_threshold = 0.0;
  for (std::size_t j = 0; j < data_.dimension; ++j) {
    std::set<double> values;
    for (auto r : rows) values.insert(data_.instances[r].values[j]);
    for (auto it = values.begin(); std::next(it) != values.end(); ++it) {
      const double t = (*it + *std::next(it)) / 2.0;
      std::vector<Label> left, right;
      for (auto r : rows) {
        (data_.instances[r].values[j] <= t ? left : right).push_back(data_.label(r));
      }
      const double n = static_cast<double>(rows.size());
      const double impurity = (static_cast<double>(left.size()) * Gini(left) +
                               static_cast<double>(right.size()) * Gini(right)) / n;
      if (!found || impurity < best_impurity - 1e-12) {
        found = true;
        best_impurity = impurity;
        best_feature = j;
        best_threshold = t;
      }
    }
  }
  if (!found) return id;

  std::vector<std::size_t> left, right;
  for (auto r : rows) {
    (data_.instances[r].values[best_feature] <= best_threshold ? left : right).push_back(r);
  }
  const std::size_t l = Grow(left, depth + 1);
  const std::size_t rr = Grow(right, depth + 1);
  nodes_[id].leaf = false;
  nodes_[id].feature = best_feature;
  nodes_[id].threshold = best_threshold;
  nodes_[id].left = l;
  nodes_[id].right = rr;
  return id;
}

Label OracleGiniTree::Predict(const std::vector<double>& x) const {
  std::size_t i = 0;
  while (!nodes_[i].leaf) {
    i = x[nodes_[i].feature] <= nodes_[i].threshold ? nodes_[i].left : nodes_[i].right;
  }
  return nodes_[i].label;
}

std::size_t OracleGiniTree::LeafCount() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.leaf; }));
}

std::size_t OracleGiniTree::Depth() const {
  std::size_t d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.depth);
  return d;
}

double MannWhitneyAuc(const std::vector<double>& scores, const std::vector<bool>& is_positive) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!is_positive[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (is_positive[j]) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) {
        wins += 1.0;
      } else if (scores[i] == scores[j]) {
        wins += 0.5;
      }
    }
  }
  return wins / pairs;
}

std::vector<double> FiniteDifferenceGradient(const Dataset& data, const LogisticParams& params,
                                             double l2, double step) {
  std::vector<double> grad;
  LogisticParams probe = params;
  auto sweep = [&](std::vector<double>& vec) {
    for (auto& v : vec) {
      const double saved = v;
      v = saved + step;
      const double up = LogisticLoss(data, probe, l2);
      v = saved - step;
      const double down = LogisticLoss(data, probe, l2);
      v = saved;
      grad.push_back((up - down) / (2.0 * step));
    }
  };
  sweep(probe.weights);
  sweep(probe.bias);
  return grad;
}

}  // namespace stocksent::testing
