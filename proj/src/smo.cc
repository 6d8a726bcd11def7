#include <algorithm>
#include <cmath>

#include "stocksent/error.h"
#include "stocksent/ml.h"
#include "stocksent/random.h"

namespace stocksent {
namespace {

void AddScaled(std::vector<double>& w, double scale, const FeatureVector& x) {
  x.ForEachNonZero([&](std::size_t j, double v) { w[j] += scale * v; });
}

// Simplified SMO on one binary subproblem with a linear kernel; the weight
// vector is kept explicitly so f(x) = w.x + b costs one sparse dot product.
void SolvePair(const std::vector<const FeatureVector*>& xs, PairwiseSvm& svm,
               std::size_t dimension, const SmoOptions& options, Rng& rng) {
  const std::size_t m = xs.size();
  const double c = options.c;
  const double tol = options.tolerance;
  std::vector<double>& alpha = svm.alphas;
  const std::vector<int>& y = svm.targets;
  alpha.assign(m, 0.0);
  svm.weights.assign(dimension, 0.0);
  svm.bias = 0.0;

  std::vector<double> self_dot(m);
  for (std::size_t i = 0; i < m; ++i) self_dot[i] = Dot(*xs[i], *xs[i]);
  auto f = [&](std::size_t i) { return Dot(svm.weights, *xs[i]) + svm.bias; };

  int passes = 0;
  svm.sweeps = 0;
  while (passes < options.max_passes && svm.sweeps < options.max_sweeps) {
    int changed = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double e_i = f(i) - y[i];
      if (!((y[i] * e_i < -tol && alpha[i] < c) || (y[i] * e_i > tol && alpha[i] > 0.0))) {
        continue;
      }
      std::size_t j = rng.Below(m - 1);
      if (j >= i) ++j;
      const double e_j = f(j) - y[j];
      const double ai_old = alpha[i];
      const double aj_old = alpha[j];
      double lo, hi;
      if (y[i] != y[j]) {
        lo = std::max(0.0, aj_old - ai_old);
        hi = std::min(c, c + aj_old - ai_old);
      } else {
        lo = std::max(0.0, ai_old + aj_old - c);
        hi = std::min(c, ai_old + aj_old);
      }
      if (lo >= hi) continue;
      const double k_ij = Dot(*xs[i], *xs[j]);
      const double eta = 2.0 * k_ij - self_dot[i] - self_dot[j];
      if (eta >= 0.0) continue;

      double aj = aj_old - y[j] * (e_i - e_j) / eta;
      aj = std::clamp(aj, lo, hi);
      if (std::abs(aj - aj_old) < 1e-5) continue;
      double ai = ai_old + y[i] * y[j] * (aj_old - aj);
      // Rounding can leave ai a hair outside the box.
      ai = std::clamp(ai, 0.0, c);

      const double di = ai - ai_old;
      const double dj = aj - aj_old;
      const double b1 = svm.bias - e_i - y[i] * di * self_dot[i] - y[j] * dj * k_ij;
      const double b2 = svm.bias - e_j - y[i] * di * k_ij - y[j] * dj * self_dot[j];
      if (ai > 0.0 && ai < c) {
        svm.bias = b1;
      } else if (aj > 0.0 && aj < c) {
        svm.bias = b2;
      } else {
        svm.bias = (b1 + b2) / 2.0;
      }
      alpha[i] = ai;
      alpha[j] = aj;
      AddScaled(svm.weights, y[i] * di, *xs[i]);
      AddScaled(svm.weights, y[j] * dj, *xs[j]);
      ++changed;
    }
    ++svm.sweeps;
    passes = changed == 0 ? passes + 1 : 0;
  }
}

}  // namespace

double PairwiseSvm::Decision(const FeatureVector& x) const {
  return Dot(weights, x) + bias;
}

SentimentModel TrainSvmSmo(const Dataset& train, const SmoOptions& options) {
  train.Validate();
  if (train.size() == 0) throw ArgumentError("empty training set");
  if (!(options.c > 0.0)) throw ArgumentError("C must be > 0");
  if (options.max_passes < 1) throw ArgumentError("max passes must be >= 1");
  const std::size_t k = train.classes.size();
  if (k < 2) throw DataError("an SVM needs at least two classes");

  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < train.size(); ++i) {
    members[train.ClassIndex(train.label(i))].push_back(i);
  }
  for (std::size_t a = 0; a < k; ++a) {
    if (members[a].empty()) {
      throw DataError("class " + std::to_string(train.classes[a]) +
                      " has no training instances; its pairwise SVM subproblems cannot be trained");
    }
  }

  SvmParams params;
  std::uint64_t stream = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      PairwiseSvm svm;
      svm.positive = a;
      svm.negative = b;
      // Subproblem instances in dataset order.
      std::vector<const FeatureVector*> xs;
      for (std::size_t i = 0; i < train.size(); ++i) {
        const std::size_t cls = train.ClassIndex(train.label(i));
        if (cls != a && cls != b) continue;
        xs.push_back(&train.instances[i]);
        svm.targets.push_back(cls == a ? 1 : -1);
      }
      Rng rng(Rng::Derive(options.seed, stream++));
      SolvePair(xs, svm, train.dimension, options, rng);
      params.pairs.push_back(std::move(svm));
    }
  }
  return SentimentModel(Algorithm::kSvmSmo, train.kind, train.dimension, train.classes,
                        options.seed, std::move(params));
}

}  // namespace stocksent
