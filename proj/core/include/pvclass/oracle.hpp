#pragma once

// p-values for a fully known Gaussian mixture: the optimal (likelihood-ratio)
// p-values, typicality indices, the compromise family between them, the
// inflated-covariance variant, and Monte Carlo risk estimates.
//
// Monte Carlo p-values use (#{j : S(Z_j) >= S(x)} + 1) / (M + 1) with Z_j drawn
// from P_theta in chunks of kMonteCarloChunk, chunk c seeded with
// derive_seed(seed, {theta, c}); the result is independent of threading.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pvclass/core.hpp"
#include "pvclass/discriminant.hpp"
#include "pvclass/numerics.hpp"
#include "pvclass/rng.hpp"

namespace pvclass {

inline constexpr std::size_t kMonteCarloChunk = 4096;
inline constexpr std::size_t kDefaultMonteCarloSamples = 20000;

/// Prior weights w_theta with Gaussian class conditionals N(mu_theta, Sigma_theta).
class GaussianMixtureModel {
 public:
  /// Validates: weights positive and summing to 1 within 1e-12, covariances SPD,
  /// not all (mu, Sigma) identical.
  GaussianMixtureModel(std::vector<double> weights, std::vector<FeatureVector> means,
                       std::vector<Matrix> covariances);

  std::size_t num_classes() const noexcept { return weights_.size(); }
  std::size_t dim() const noexcept { return means_.front().size(); }
  double weight(ClassLabel theta) const { return weights_.at(theta.index()); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const FeatureVector& mean(ClassLabel theta) const { return means_.at(theta.index()); }
  const SpdMatrix& covariance(ClassLabel theta) const { return covs_.at(theta.index()); }

  /// True when every class shares the same covariance matrix.
  bool homoscedastic() const noexcept { return discriminant_.has_value(); }
  const LinearDiscriminant& discriminant() const;

  double log_density(ClassLabel theta, FeatureView x) const;
  FeatureVector sample(ClassLabel theta, Rng& rng) const;

  /// Same class conditionals, different prior.
  GaussianMixtureModel with_weights(std::vector<double> weights) const;

 private:
  std::vector<double> weights_;
  std::vector<FeatureVector> means_;
  std::vector<SpdMatrix> covs_;
  std::vector<double> log_norm_;  // -q/2 log(2 pi) - 1/2 log det Sigma
  std::optional<LinearDiscriminant> discriminant_;
};

/// Two-class model mu1 = 0, mu2 = (delta, 0, ..., 0), Sigma = I, equal weights.
GaussianMixtureModel two_class_standard_model(std::size_t dim = 2, double delta = 2.0);

/// log T*_theta(x), T*_theta = sum_{b != theta} w_{b,theta} f_b / f_theta.
double log_optimal_statistic(const GaussianMixtureModel& model, ClassLabel theta, FeatureView x);
double optimal_statistic(const GaussianMixtureModel& model, ClassLabel theta, FeatureView x);

/// Sorted Monte Carlo scores of draws from one class; larger score = more extreme.
class MonteCarloReference {
 public:
  MonteCarloReference() = default;
  explicit MonteCarloReference(std::vector<double> scores);

  std::size_t size() const noexcept { return sorted_.size(); }
  /// (#{j : score_j >= s} + 1) / (M + 1)
  double upper_tail_pvalue(double s) const;

 private:
  std::vector<double> sorted_;
};

/// Draws M points from P_theta (chunked sub-streams) and scores each.
MonteCarloReference draw_reference(const GaussianMixtureModel& model, ClassLabel theta, std::size_t samples,
                                   std::uint64_t seed,
                                   const std::function<double(FeatureView)>& score, unsigned threads = 1);

double optimal_pvalue_mc(const GaussianMixtureModel& model, ClassLabel theta, FeatureView x,
                         std::size_t samples, std::uint64_t seed);

/// Optimal p-values for all classes with one reference sample per class,
/// reusable across many query points.
class OptimalPValues {
 public:
  OptimalPValues(const GaussianMixtureModel& model, std::size_t samples, std::uint64_t seed,
                 unsigned threads = 1);

  double pvalue(ClassLabel theta, FeatureView x) const;
  PValueVector pvalues(FeatureView x) const;

 private:
  GaussianMixtureModel model_;
  std::vector<MonteCarloReference> refs_;
};

/// Closed-form optimal p-value for two classes with a common covariance:
/// Phi(-Z(x) - Delta/2) for theta = 1 and Phi(Z(x) - Delta/2) for theta = 2.
double optimal_pvalue_2class_closed(const GaussianMixtureModel& model, ClassLabel theta, FeatureView x);

/// Standardized coordinate Z(x) of the two-class closed form.
double two_class_z(const GaussianMixtureModel& model, FeatureView x);

/// 1 - F_q(||x - mu_theta||^2_{Sigma_theta})
double typicality_known(const GaussianMixtureModel& model, ClassLabel theta, FeatureView x);

/// log (f_theta / f~)(x) with f~ = sum_b w_b f_b + w0 (background density 1).
double log_compromise_ratio(const GaussianMixtureModel& model, double w0, ClassLabel theta, FeatureView x);

double compromise_pvalue(const GaussianMixtureModel& model, double w0, ClassLabel theta, FeatureView x,
                         std::size_t samples, std::uint64_t seed);

/// log T~_theta(x) for the inflated-covariance variant (other classes get c Sigma),
/// evaluated in the nu-centered form.
double log_inflated_statistic(const GaussianMixtureModel& model, double c, ClassLabel theta, FeatureView x);
/// Same statistic from the direct form ||x - mu_theta||^2/2 - ||x - mu_b||^2/(2c).
double log_inflated_statistic_direct(const GaussianMixtureModel& model, double c, ClassLabel theta,
                                     FeatureView x);

double inflated_pvalue(const GaussianMixtureModel& model, double c, ClassLabel theta, FeatureView x,
                       std::size_t samples, std::uint64_t seed);

using PValueFunction = std::function<double(ClassLabel, FeatureView)>;

struct RiskEstimate {
  double total = 0.0;              // E #region
  std::vector<double> per_class;   // P(pi_theta(X) > alpha)
  double std_error = 0.0;          // Monte Carlo standard error of `total`
};

/// Monte Carlo estimate of E #{theta : pi_theta(X) > alpha} with X drawn from the mixture.
RiskEstimate risk_alpha(const PValueFunction& pvalue, const GaussianMixtureModel& model, double alpha,
                        std::size_t samples, std::uint64_t seed);

}  // namespace pvclass
