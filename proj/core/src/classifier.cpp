#include "pvclass/classifier.hpp"

#include "pvclass/errors.hpp"

namespace pvclass {

std::string to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::plugin: return "plugin";
    case MethodKind::knn: return "knn";
    case MethodKind::logistic: return "logistic";
    case MethodKind::typicality: return "typicality";
  }
  return "unknown";
}

MethodKind parse_method_kind(const std::string& text) {
  if (text == "plugin") return MethodKind::plugin;
  if (text == "knn") return MethodKind::knn;
  if (text == "logistic") return MethodKind::logistic;
  if (text == "typicality") return MethodKind::typicality;
  throw InvalidArgument("unknown method '" + text + "' (expected plugin, knn, logistic or typicality)");
}

StatisticConfig MethodConfig::statistic() const {
  StatisticConfig s;
  switch (kind) {
    case MethodKind::plugin: s.kind = StatisticKind::gaussian_plugin; break;
    case MethodKind::knn: s.kind = StatisticKind::knn; break;
    case MethodKind::logistic: s.kind = StatisticKind::logistic; break;
    case MethodKind::typicality: throw InvalidArgument("typicality is not a permutation statistic");
  }
  s.k = k;
  s.scaling = scaling;
  s.prior_weights = prior_weights;
  s.logistic = logistic;
  return s;
}

PValueClassifier::PValueClassifier(MethodConfig config, TrainingSet data, std::vector<double> alphas)
    : PValueClassifier(std::move(config), std::make_shared<const TrainingSet>(std::move(data)), std::move(alphas)) {}

PValueClassifier::PValueClassifier(MethodConfig config, std::shared_ptr<const TrainingSet> data,
                                   std::vector<double> alphas)
    : config_(std::move(config)), data_(std::move(data)), alphas_(std::move(alphas)) {
  for (double a : alphas_) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  }
  if (config_.kind == MethodKind::typicality) {
    if (data_->size() < data_->num_classes() + data_->dim()) {
      throw InvalidArgument("typicality needs n >= L + q");
    }
    gaussian_ = fit_pooled_gaussian(*data_);
  } else {
    check_group_sizes(*data_, alphas_);
    stat_ = fit_statistic(config_.statistic(), data_);
  }
}

double PValueClassifier::pvalue(ClassLabel theta, FeatureView x) const {
  if (x.size() != data_->dim()) throw InvalidArgument("query dimension does not match the training data");
  if (theta.index() >= data_->num_classes()) throw InvalidArgument("label out of range");
  if (gaussian_) return typicality_index(*gaussian_, theta, x);
  return mode_pvalue(config_.mode, *stat_, theta, x);
}

PValueVector PValueClassifier::pvalues(FeatureView x) const {
  std::vector<double> values;
  for (std::size_t t = 0; t < data_->num_classes(); ++t) values.push_back(pvalue(ClassLabel::from_index(t), x));
  return PValueVector(std::move(values));
}

std::vector<PredictionRegion> PValueClassifier::regions(FeatureView x) const {
  const PValueVector p = pvalues(x);
  std::vector<PredictionRegion> out;
  for (double a : alphas_) out.push_back(region_from_pvalues(p, a));
  return out;
}

}  // namespace pvclass
