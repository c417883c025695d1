#pragma once

// Method selection and a fitted p-value classifier.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pvclass/core.hpp"
#include "pvclass/gaussian_fit.hpp"
#include "pvclass/permutation.hpp"
#include "pvclass/statistic.hpp"

namespace pvclass {

/// plugin, knn and logistic are permutation p-values built on the matching
/// statistic; typicality is the F-pivot index of the pooled Gaussian fit.
enum class MethodKind { plugin, knn, logistic, typicality };

std::string to_string(MethodKind kind);
MethodKind parse_method_kind(const std::string& text);

struct MethodConfig {
  MethodKind kind = MethodKind::plugin;
  PermutationMode mode = PermutationMode::valid_shortcut;
  std::size_t k = 0;
  FeatureScaling scaling = FeatureScaling::none;
  std::vector<double> prior_weights;
  LogisticOptions logistic;

  /// Statistic configuration for the permutation methods.
  StatisticConfig statistic() const;
};

class PValueClassifier {
 public:
  /// Fits once. Warns (once) when some N_theta + 1 < 1/alpha for a listed alpha.
  PValueClassifier(MethodConfig config, TrainingSet data, std::vector<double> alphas = {});
  PValueClassifier(MethodConfig config, std::shared_ptr<const TrainingSet> data, std::vector<double> alphas = {});

  const MethodConfig& config() const noexcept { return config_; }
  const TrainingSet& data() const noexcept { return *data_; }
  /// Null for the typicality method.
  const FittedStatistic* statistic() const noexcept { return stat_.get(); }

  double pvalue(ClassLabel theta, FeatureView x) const;
  PValueVector pvalues(FeatureView x) const;
  std::vector<PredictionRegion> regions(FeatureView x) const;

 private:
  MethodConfig config_;
  std::shared_ptr<const TrainingSet> data_;
  std::vector<double> alphas_;
  std::unique_ptr<FittedStatistic> stat_;
  std::optional<PooledGaussianFit> gaussian_;
};

}  // namespace pvclass
