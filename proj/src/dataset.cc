#include <algorithm>
#include <cmath>
#include <numeric>

#include "stocksent/error.h"
#include "stocksent/ml.h"
#include "stocksent/random.h"

namespace stocksent {

std::size_t Dataset::ClassIndex(Label label) const {
  auto it = std::find(classes.begin(), classes.end(), label);
  if (it == classes.end()) {
    throw ArgumentError("label " + std::to_string(label) + " is not in the class set");
  }
  return static_cast<std::size_t>(it - classes.begin());
}

void Dataset::Validate() const {
  if (classes.empty()) throw ArgumentError("dataset has no classes");
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& x = instances[i];
    if (x.kind != kind || x.dimension != dimension) {
      throw ArgumentError("instance " + std::to_string(i) +
                          " does not match the dataset's feature kind/dimension");
    }
    if (x.kind == FeatureKind::kEmbeddingSum && x.values.size() != dimension) {
      throw ArgumentError("instance " + std::to_string(i) + " has a malformed dense vector");
    }
    if (!x.label) throw ArgumentError("instance " + std::to_string(i) + " has no label");
    ClassIndex(*x.label);
  }
}

std::string_view ToString(SplitMode mode) {
  return mode == SplitMode::kOrdered ? "ordered" : "shuffled";
}

SplitMode ParseSplitMode(std::string_view text) {
  if (text == "ordered") return SplitMode::kOrdered;
  if (text == "shuffled") return SplitMode::kShuffled;
  throw ArgumentError("unknown split mode '" + std::string(text) + "'");
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> SplitIndices(
    std::size_t n, double train_fraction, SplitMode mode, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ArgumentError("train fraction must lie strictly between 0 and 1");
  }
  // The epsilon keeps products like 100 * 0.29 from flooring one short.
  const auto n_train =
      static_cast<std::size_t>(std::floor(static_cast<double>(n) * train_fraction + 1e-9));
  if (n_train == 0 || n_train >= n) {
    throw ArgumentError("split of " + std::to_string(n) + " instances at fraction " +
                        std::to_string(train_fraction) + " leaves one side empty");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (mode == SplitMode::kShuffled) {
    Rng rng(seed);
    rng.Shuffle(order);
  }
  std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<long>(n_train));
  std::vector<std::size_t> test(order.begin() + static_cast<long>(n_train), order.end());
  return {std::move(train), std::move(test)};
}

Split SplitDataset(const Dataset& data, double train_fraction, SplitMode mode,
                   std::uint64_t seed) {
  auto [train_rows, test_rows] = SplitIndices(data.size(), train_fraction, mode, seed);
  Split split;
  split.train = Dataset{data.kind, data.dimension, data.classes, {}};
  split.test = split.train;
  for (auto i : train_rows) split.train.instances.push_back(data.instances[i]);
  for (auto i : test_rows) split.test.instances.push_back(data.instances[i]);
  split.train_rows = std::move(train_rows);
  split.test_rows = std::move(test_rows);
  return split;
}

}  // namespace stocksent
