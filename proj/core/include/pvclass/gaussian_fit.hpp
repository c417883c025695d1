#pragma once

#include <vector>

#include "pvclass/core.hpp"
#include "pvclass/discriminant.hpp"
#include "pvclass/numerics.hpp"

namespace pvclass {

/// Class means, pooled covariance with divisor n - L, and class proportions.
///
/// Edits return new fits in O(q^2) (plus O(L q^2) to refresh the cached
/// discriminant): the covariance is updated by the rank-one formulae and its
/// Cholesky factor by rank-one updates/downdates.
class PooledGaussianFit {
 public:
  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return cov_.dim(); }
  std::size_t num_classes() const noexcept { return counts_.size(); }
  std::size_t count(ClassLabel theta) const { return counts_.at(theta.index()); }
  const FeatureVector& mean(ClassLabel theta) const { return means_.at(theta.index()); }
  const SpdMatrix& covariance() const noexcept { return cov_; }
  /// N_theta / n
  double proportion(ClassLabel theta) const;

  /// Fit on the data set with one row (x, theta) of group theta removed.
  PooledGaussianFit without(FeatureView x, ClassLabel theta) const;
  /// Fit on the data set with a group-theta row x_old replaced by x_new.
  PooledGaussianFit with_replaced(FeatureView x_old, FeatureView x_new, ClassLabel theta) const;
  /// Fit on the data set augmented by (x, theta).
  PooledGaussianFit with_added(FeatureView x, ClassLabel theta) const;

  /// log of the plug-in likelihood ratio (weights N_c/n, means, pooled covariance).
  double log_plugin_statistic(ClassLabel theta, FeatureView x) const { return discriminant_.log_statistic(theta, x); }

  friend PooledGaussianFit fit_pooled_gaussian(const TrainingSet& d);

 private:
  void refresh(Matrix cov, Matrix lower);

  std::size_t n_ = 0;
  std::vector<std::size_t> counts_;
  std::vector<FeatureVector> means_;
  SpdMatrix cov_;
  LinearDiscriminant discriminant_;
};

/// Exact sample statistics. Requires n > L; throws DegenerateFitError when the
/// pooled covariance is singular.
PooledGaussianFit fit_pooled_gaussian(const TrainingSet& d);

/// Plug-in likelihood ratio T_theta(x, D) (the exponential of log_plugin_statistic).
double gaussian_plugin_statistic(const PooledGaussianFit& fit, ClassLabel theta, FeatureView x);

/// C_theta = (n - L - q + 1) / (q (n - L) (1 + 1/N_theta)).
double typicality_constant(std::size_t n, std::size_t num_classes, std::size_t dim, std::size_t group_size);

/// 1 - F_{q, n-L-q+1}(C_theta ||x - mu_theta||^2_Sigma). Requires n >= L + q.
double typicality_index(const PooledGaussianFit& fit, ClassLabel theta, FeatureView x);

}  // namespace pvclass
