#pragma once

#include <vector>

#include "pvclass/core.hpp"
#include "pvclass/numerics.hpp"

namespace pvclass {

/// Weighted likelihood ratio for Gaussian classes with a common covariance:
///
///   T_theta(x) = sum_{b != theta} w_{b,theta} exp((x - (mu_theta + mu_b)/2)^T Sigma^{-1} (mu_b - mu_theta))
///
/// with w_{b,theta} = w_b / sum_{c != theta} w_c. Shared by the known-model
/// oracle and the plug-in statistic so both evaluate the identical expression.
class LinearDiscriminant {
 public:
  LinearDiscriminant() = default;
  LinearDiscriminant(std::vector<double> weights, std::vector<FeatureVector> means, SpdMatrix covariance);

  std::size_t num_classes() const noexcept { return means_.size(); }
  const SpdMatrix& covariance() const noexcept { return cov_; }

  /// log T_theta(x), accumulated with log-sum-exp.
  double log_statistic(ClassLabel theta, FeatureView x) const;

 private:
  std::vector<double> log_weights_;
  std::vector<FeatureVector> means_;
  std::vector<FeatureVector> precision_means_;  // Sigma^{-1} mu_b
  SpdMatrix cov_;
};

}  // namespace pvclass
