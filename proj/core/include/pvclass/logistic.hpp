#pragma once

#include <optional>
#include <vector>

#include "pvclass/core.hpp"

namespace pvclass {

/// Maximum-likelihood fit of log(w_2(x) / (1 - w_2(x))) = a + b^T x.
struct LogisticFit {
  double intercept = 0.0;
  std::vector<double> coefficients;
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
  /// Set when the iteration was stopped by the coefficient cap (|coef| > 30)
  /// or ran out of iterations with the deviance still decreasing.
  bool separated = false;
  bool ridge_used = false;

  /// a + b^T x: the statistic T_1; T_2 is its negative.
  double linear_predictor(FeatureView x) const;
};

struct LogisticOptions {
  int max_iterations = 100;
  double gradient_tolerance = 1e-8;
  double coefficient_cap = 30.0;
  double ridge = 1e-8;
};

/// Newton / IRLS fit for a two-class training set (class 2 is the "event").
/// Throws InvalidArgument unless L = 2. `warm_start` seeds (a, b).
LogisticFit fit_logistic(const TrainingSet& d, const LogisticOptions& options = {},
                         const std::optional<LogisticFit>& warm_start = std::nullopt);

/// Same on raw data: n x q row-major features (q may be 0 for an
/// intercept-only model) and responses y in {0, 1}.
LogisticFit fit_logistic(std::span<const double> features, std::size_t dim, std::span<const double> y01,
                         const LogisticOptions& options = {},
                         const std::optional<LogisticFit>& warm_start = std::nullopt);

}  // namespace pvclass
