#include <algorithm>
#include <cmath>

#include "stocksent/error.h"
#include "stocksent/ml.h"

namespace stocksent {

double LogisticLoss(const Dataset& data, const LogisticParams& params, double l2,
                    std::vector<double>* gradient) {
  const std::size_t k = data.classes.size();
  const std::size_t d = data.dimension;
  const double n = static_cast<double>(data.size());
  if (gradient) gradient->assign(k * d + k, 0.0);

  std::vector<double> logits(k);
  double loss = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const FeatureVector& x = data.instances[i];
    const std::size_t y = data.ClassIndex(data.label(i));
    for (std::size_t c = 0; c < k; ++c) {
      logits[c] = params.bias[c] + Dot(std::span<const double>(params.weights).subspan(c * d, d), x);
    }
    const double peak = *std::max_element(logits.begin(), logits.end());
    double norm = 0.0;
    for (double z : logits) norm += std::exp(z - peak);
    const double log_norm = peak + std::log(norm);
    loss += log_norm - logits[y];

    if (gradient) {
      for (std::size_t c = 0; c < k; ++c) {
        const double g = (std::exp(logits[c] - log_norm) - (c == y ? 1.0 : 0.0)) / n;
        double* row = gradient->data() + c * d;
        x.ForEachNonZero([&](std::size_t j, double v) { row[j] += g * v; });
        (*gradient)[k * d + c] += g;
      }
    }
  }
  loss /= n;

  double sq = 0.0;
  for (double w : params.weights) sq += w * w;
  loss += 0.5 * l2 * sq;
  if (gradient && l2 != 0.0) {
    for (std::size_t j = 0; j < k * d; ++j) (*gradient)[j] += l2 * params.weights[j];
  }
  return loss;
}

SentimentModel TrainLogisticRegression(const Dataset& train, const LogisticOptions& options) {
  train.Validate();
  if (train.size() == 0) throw ArgumentError("empty training set");
  if (options.l2 < 0.0) throw ArgumentError("l2 penalty must be >= 0");
  if (!(options.learning_rate > 0.0)) throw ArgumentError("learning rate must be > 0");
  if (options.epochs < 0) throw ArgumentError("epochs must be >= 0");

  const std::size_t k = train.classes.size();
  const std::size_t d = train.dimension;
  LogisticParams params;
  params.weights.assign(k * d, 0.0);
  params.bias.assign(k, 0.0);

  std::vector<double> gradient;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const double loss = LogisticLoss(train, params, options.l2, &gradient);
    if (!std::isfinite(loss)) {
      throw NumericError("non-finite loss at epoch " + std::to_string(epoch));
    }
    if (options.on_epoch) options.on_epoch(epoch, loss);
    for (std::size_t j = 0; j < k * d; ++j) params.weights[j] -= options.learning_rate * gradient[j];
    for (std::size_t c = 0; c < k; ++c) params.bias[c] -= options.learning_rate * gradient[k * d + c];
  }
  for (double w : params.weights) {
    if (!std::isfinite(w)) {
      throw NumericError("non-finite weights after epoch " + std::to_string(options.epochs - 1));
    }
  }
  return SentimentModel(Algorithm::kLogisticRegression, train.kind, train.dimension,
                        train.classes, 0, std::move(params));
}

}  // namespace stocksent
