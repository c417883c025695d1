#include "pvclass/statistic.hpp"

#include <string>

#include "pvclass/errors.hpp"

namespace pvclass {

namespace {

[[noreturn]] void rethrow_for_edit(const DegenerateFitError& e, std::size_t index) {
  throw DegenerateFitError(std::string(e.what()) + " (edit at row " + std::to_string(index + 1) + ")", e.pivot(),
                           index);
}

std::shared_ptr<const TrainingSet> share(TrainingSet d) {
  return std::make_shared<const TrainingSet>(std::move(d));
}

}  // namespace

std::string to_string(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::gaussian_plugin: return "plugin";
    case StatisticKind::knn: return "knn";
    case StatisticKind::logistic: return "logistic";
  }
  return "unknown";
}

std::unique_ptr<FittedStatistic> FittedStatistic::removed(std::size_t i) const {
  return refit(share(data().without(i)));
}

std::unique_ptr<FittedStatistic> FittedStatistic::replaced(std::size_t i, FeatureView x) const {
  return refit(share(data().with_replaced(i, x)));
}

std::unique_ptr<FittedStatistic> FittedStatistic::augmented(FeatureView x, ClassLabel theta) const {
  return refit(share(data().with_added(x, theta)));
}

std::vector<double> FittedStatistic::swapped_scores(ClassLabel theta, FeatureView x) const {
  std::vector<double> out;
  for (std::size_t i : data().group(theta)) {
    const FeatureVector xi(data().row(i).begin(), data().row(i).end());
    try {
      out.push_back(replaced(i, x)->evaluate(theta, xi));
    } catch (const DegenerateFitError& e) {
      rethrow_for_edit(e, i);
    }
  }
  return out;
}

std::vector<double> FittedStatistic::augmented_scores(ClassLabel theta, FeatureView x) const {
  std::unique_ptr<FittedStatistic> aug;
  try {
    aug = augmented(x, theta);
  } catch (const DegenerateFitError& e) {
    rethrow_for_edit(e, data().size());
  }
  std::vector<double> out;
  out.push_back(aug->evaluate_row(theta, data().size()));
  for (std::size_t i : data().group(theta)) out.push_back(aug->evaluate_row(theta, i));
  return out;
}

std::unique_ptr<FittedStatistic> fit_statistic(const StatisticConfig& config, std::shared_ptr<const TrainingSet> d) {
  switch (config.kind) {
    case StatisticKind::gaussian_plugin:
      return std::make_unique<GaussianPluginStatistic>(std::move(d));
    case StatisticKind::knn: {
      const std::size_t k = config.k == 0 ? default_k(d->size()) : config.k;
      if (!config.prior_weights.empty() && config.prior_weights.size() != d->num_classes()) {
        throw InvalidArgument("knn prior weights must have one entry per class");
      }
      auto s = std::make_unique<KnnStatistic>(std::move(d), k, config.scaling, config.prior_weights);
      s->caches();
      return s;
    }
    case StatisticKind::logistic:
      return std::make_unique<LogisticStatistic>(std::move(d), config.logistic);
  }
  throw InvalidArgument("unknown statistic kind");
}

// ---------------------------------------------------------------------------

GaussianPluginStatistic::GaussianPluginStatistic(std::shared_ptr<const TrainingSet> d)
    : FittedStatistic(d), fit_(fit_pooled_gaussian(*d)) {}

std::unique_ptr<FittedStatistic> GaussianPluginStatistic::refit(std::shared_ptr<const TrainingSet> d) const {
  return std::make_unique<GaussianPluginStatistic>(std::move(d));
}

std::unique_ptr<FittedStatistic> GaussianPluginStatistic::removed(std::size_t i) const {
  try {
    auto fit = fit_.without(data().row(i), data().label(i));
    return std::make_unique<GaussianPluginStatistic>(share(data().without(i)), std::move(fit));
  } catch (const DegenerateFitError& e) {
    rethrow_for_edit(e, i);
  }
}

std::unique_ptr<FittedStatistic> GaussianPluginStatistic::replaced(std::size_t i, FeatureView x) const {
  try {
    auto fit = fit_.with_replaced(data().row(i), x, data().label(i));
    return std::make_unique<GaussianPluginStatistic>(share(data().with_replaced(i, x)), std::move(fit));
  } catch (const DegenerateFitError& e) {
    rethrow_for_edit(e, i);
  }
}

std::unique_ptr<FittedStatistic> GaussianPluginStatistic::augmented(FeatureView x, ClassLabel theta) const {
  auto fit = fit_.with_added(x, theta);
  return std::make_unique<GaussianPluginStatistic>(share(data().with_added(x, theta)), std::move(fit));
}

std::vector<double> GaussianPluginStatistic::swapped_scores(ClassLabel theta, FeatureView x) const {
  std::vector<double> out;
  for (std::size_t i : data().group(theta)) {
    try {
      out.push_back(fit_.with_replaced(data().row(i), x, theta).log_plugin_statistic(theta, data().row(i)));
    } catch (const DegenerateFitError& e) {
      rethrow_for_edit(e, i);
    }
  }
  return out;
}

std::vector<double> GaussianPluginStatistic::augmented_scores(ClassLabel theta, FeatureView x) const {
  const PooledGaussianFit aug = fit_.with_added(x, theta);
  std::vector<double> out;
  out.push_back(aug.log_plugin_statistic(theta, x));
  for (std::size_t i : data().group(theta)) out.push_back(aug.log_plugin_statistic(theta, data().row(i)));
  return out;
}

// ---------------------------------------------------------------------------

KnnStatistic::KnnStatistic(std::shared_ptr<const TrainingSet> d, std::size_t k, FeatureScaling scaling,
                           std::vector<double> prior_weights)
    : FittedStatistic(d), k_(k), scaling_(scaling), prior_weights_(std::move(prior_weights)) {
  if (k_ == 0 || k_ > d->size()) throw InvalidArgument("knn: k must lie in 1..n");
  scales_ = feature_scales(*d, scaling_);
}

const KnnCaches& KnnStatistic::caches() const {
  std::call_once(caches_->once, [&] { caches_->value = knn_fit(data(), k_, scaling_); });
  return *caches_->value;
}

std::vector<std::size_t> KnnStatistic::group_sizes() const {
  std::vector<std::size_t> sizes;
  for (std::size_t t = 0; t < data().num_classes(); ++t) sizes.push_back(data().group_size(ClassLabel::from_index(t)));
  return sizes;
}

double KnnStatistic::evaluate(ClassLabel theta, FeatureView x) const {
  const BallCounts bc = ball_counts(data(), x, k_, scales_);
  return -knn_weight(bc, theta, group_sizes(), prior_weights_);
}

double KnnStatistic::evaluate_row(ClassLabel theta, std::size_t i) const {
  if (prior_weights_.empty() && caches_->value) {
    const KnnCaches& c = *caches_->value;
    return -static_cast<double>(c.nk(i, theta)) / static_cast<double>(c.total_k[i]);
  }
  return evaluate(theta, data().row(i));
}

std::unique_ptr<FittedStatistic> KnnStatistic::refit(std::shared_ptr<const TrainingSet> d) const {
  return std::make_unique<KnnStatistic>(std::move(d), k_, scaling_, prior_weights_);
}

std::vector<double> KnnStatistic::swapped_scores(ClassLabel theta, FeatureView x) const {
  const auto sizes = group_sizes();
  std::vector<double> out;
  for (std::size_t i : data().group(theta)) {
    const std::vector<double> scales =
        scaling_ == FeatureScaling::none ? scales_ : feature_scales(data().with_replaced(i, x), scaling_);
    const BallCounts bc = ball_counts(data(), data().row(i), k_, scales, i, std::pair{x, theta});
    out.push_back(-knn_weight(bc, theta, sizes, prior_weights_));
  }
  return out;
}

std::vector<double> KnnStatistic::augmented_scores(ClassLabel theta, FeatureView x) const {
  // Scaling depends on the augmented data, so the cached distances only apply unscaled.
  if (scaling_ != FeatureScaling::none) return FittedStatistic::augmented_scores(theta, x);
  const KnnCaches& c = caches();
  const TrainingSet& d = data();
  auto sizes = group_sizes();
  sizes[theta.index()] += 1;
  std::vector<double> out;
  const BallCounts at_x = ball_counts(d, x, k_, scales_, std::nullopt, std::pair{x, theta});
  out.push_back(-knn_weight(at_x, theta, sizes, prior_weights_));
  const std::size_t num_classes = d.num_classes();
  BallCounts bc;
  bc.per_class.resize(num_classes);
  for (std::size_t i : d.group(theta)) {
    const double dist = scaled_distance(d.row(i), x, scales_);
    const bool inside_smaller = dist < c.radius[i];
    const bool add = dist <= c.radius[i];
    const std::size_t* base = inside_smaller ? &c.count_km1[i * num_classes] : &c.count_k[i * num_classes];
    bc.total = inside_smaller ? c.total_km1[i] : c.total_k[i];
    std::copy(base, base + num_classes, bc.per_class.begin());
    if (add) {
      ++bc.per_class[theta.index()];
      ++bc.total;
    }
    out.push_back(-knn_weight(bc, theta, sizes, prior_weights_));
  }
  return out;
}

// ---------------------------------------------------------------------------

LogisticStatistic::LogisticStatistic(std::shared_ptr<const TrainingSet> d, LogisticOptions options,
                                     const std::optional<LogisticFit>& warm_start)
    : FittedStatistic(d), options_(options), fit_(fit_logistic(*d, options, warm_start)) {}

double LogisticStatistic::evaluate(ClassLabel theta, FeatureView x) const {
  const double eta = fit_.linear_predictor(x);
  return theta.value() == 1 ? eta : -eta;
}

std::unique_ptr<FittedStatistic> LogisticStatistic::refit(std::shared_ptr<const TrainingSet> d) const {
  return std::make_unique<LogisticStatistic>(std::move(d), options_, fit_);
}

}  // namespace pvclass
