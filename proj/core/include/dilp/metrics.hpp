#pragma once

#include <span>

namespace dilp {

struct Metrics {
  /// NaN when either class is empty.
  double auc = 0.0;
  double mse = 0.0;
};

/// Mann-Whitney AUC over raw scores; tied positive/negative pairs count 0.5.
double auc(std::span<const double> scores, std::span<const int> labels);
/// Mean of (p - y)^2. Zero on empty input.
double mse(std::span<const double> predictions, std::span<const int> labels);

Metrics compute_metrics(std::span<const double> predictions, std::span<const int> labels);

}  // namespace dilp
