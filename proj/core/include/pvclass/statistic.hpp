#pragma once

// Fitted test-statistic families T_theta(., D) for the permutation engine.
//
// Every statistic is symmetric in the group-theta training rows, and larger
// values speak against "Y = theta":
//   gaussian_plugin  log of the plug-in likelihood ratio (weights N_c/n, class
//                    means, pooled covariance)
//   knn              minus the k-nearest-neighbor posterior of theta
//   logistic         a + b^T x for theta = 1 and its negative for theta = 2

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pvclass/core.hpp"
#include "pvclass/gaussian_fit.hpp"
#include "pvclass/knn.hpp"
#include "pvclass/logistic.hpp"

namespace pvclass {

enum class StatisticKind { gaussian_plugin, knn, logistic };

std::string to_string(StatisticKind kind);

struct StatisticConfig {
  StatisticKind kind = StatisticKind::gaussian_plugin;
  /// Neighbor count; 0 selects ceil(n^{2/3}) for the data set first fitted.
  std::size_t k = 0;
  FeatureScaling scaling = FeatureScaling::none;
  /// Prior weights for the knn posterior; empty means N_b / n.
  std::vector<double> prior_weights;
  LogisticOptions logistic;
};

class FittedStatistic {
 public:
  virtual ~FittedStatistic() = default;

  const TrainingSet& data() const noexcept { return *data_; }
  const std::shared_ptr<const TrainingSet>& data_ptr() const noexcept { return data_; }
  virtual StatisticKind kind() const noexcept = 0;

  /// T_theta(x, D).
  virtual double evaluate(ClassLabel theta, FeatureView x) const = 0;
  /// T_theta(X_i, D) at a row of the fitted data.
  virtual double evaluate_row(ClassLabel theta, std::size_t i) const { return evaluate(theta, data().row(i)); }

  /// Same configuration fitted on another data set.
  virtual std::unique_ptr<FittedStatistic> refit(std::shared_ptr<const TrainingSet> d) const = 0;
  /// Fit on D_i (row i removed).
  virtual std::unique_ptr<FittedStatistic> removed(std::size_t i) const;
  /// Fit on D_i(x) (row i's features replaced by x).
  virtual std::unique_ptr<FittedStatistic> replaced(std::size_t i, FeatureView x) const;
  /// Fit on D(x, theta) (row appended).
  virtual std::unique_ptr<FittedStatistic> augmented(FeatureView x, ClassLabel theta) const;

  /// T_theta(X_i, D_i(x)) for i in G_theta, in group order.
  virtual std::vector<double> swapped_scores(ClassLabel theta, FeatureView x) const;
  /// T_theta(x, D(x,theta)) followed by T_theta(X_i, D(x,theta)) for i in G_theta.
  virtual std::vector<double> augmented_scores(ClassLabel theta, FeatureView x) const;

 protected:
  explicit FittedStatistic(std::shared_ptr<const TrainingSet> d) : data_(std::move(d)) {}

 private:
  std::shared_ptr<const TrainingSet> data_;
};

std::unique_ptr<FittedStatistic> fit_statistic(const StatisticConfig& config, std::shared_ptr<const TrainingSet> d);

class GaussianPluginStatistic final : public FittedStatistic {
 public:
  explicit GaussianPluginStatistic(std::shared_ptr<const TrainingSet> d);
  GaussianPluginStatistic(std::shared_ptr<const TrainingSet> d, PooledGaussianFit fit)
      : FittedStatistic(std::move(d)), fit_(std::move(fit)) {}

  const PooledGaussianFit& fit() const noexcept { return fit_; }

  StatisticKind kind() const noexcept override { return StatisticKind::gaussian_plugin; }
  double evaluate(ClassLabel theta, FeatureView x) const override { return fit_.log_plugin_statistic(theta, x); }
  std::unique_ptr<FittedStatistic> refit(std::shared_ptr<const TrainingSet> d) const override;
  std::unique_ptr<FittedStatistic> removed(std::size_t i) const override;
  std::unique_ptr<FittedStatistic> replaced(std::size_t i, FeatureView x) const override;
  std::unique_ptr<FittedStatistic> augmented(FeatureView x, ClassLabel theta) const override;
  std::vector<double> swapped_scores(ClassLabel theta, FeatureView x) const override;
  std::vector<double> augmented_scores(ClassLabel theta, FeatureView x) const override;

 private:
  PooledGaussianFit fit_;
};

class KnnStatistic final : public FittedStatistic {
 public:
  /// `k` must already be resolved (1..n). Caches are built on first use.
  KnnStatistic(std::shared_ptr<const TrainingSet> d, std::size_t k, FeatureScaling scaling,
               std::vector<double> prior_weights = {});

  std::size_t k() const noexcept { return k_; }
  const std::vector<double>& scales() const noexcept { return scales_; }
  /// Builds (once) and returns the per-row caches.
  const KnnCaches& caches() const;

  StatisticKind kind() const noexcept override { return StatisticKind::knn; }
  double evaluate(ClassLabel theta, FeatureView x) const override;
  double evaluate_row(ClassLabel theta, std::size_t i) const override;
  std::unique_ptr<FittedStatistic> refit(std::shared_ptr<const TrainingSet> d) const override;
  std::vector<double> swapped_scores(ClassLabel theta, FeatureView x) const override;
  std::vector<double> augmented_scores(ClassLabel theta, FeatureView x) const override;

 private:
  std::vector<std::size_t> group_sizes() const;

  std::size_t k_;
  FeatureScaling scaling_;
  std::vector<double> prior_weights_;
  std::vector<double> scales_;
  struct LazyCaches {
    std::once_flag once;
    std::optional<KnnCaches> value;
  };
  std::shared_ptr<LazyCaches> caches_ = std::make_shared<LazyCaches>();
};

class LogisticStatistic final : public FittedStatistic {
 public:
  LogisticStatistic(std::shared_ptr<const TrainingSet> d, LogisticOptions options,
                    const std::optional<LogisticFit>& warm_start = std::nullopt);

  const LogisticFit& fit() const noexcept { return fit_; }

  StatisticKind kind() const noexcept override { return StatisticKind::logistic; }
  double evaluate(ClassLabel theta, FeatureView x) const override;
  std::unique_ptr<FittedStatistic> refit(std::shared_ptr<const TrainingSet> d) const override;

 private:
  LogisticOptions options_;
  LogisticFit fit_;
};

}  // namespace pvclass
