#include "pvclass/permutation.hpp"

#include <algorithm>
#include <sstream>

#include "pvclass/errors.hpp"
#include "pvclass/warnings.hpp"

namespace pvclass {

std::string to_string(PermutationMode mode) {
  switch (mode) {
    case PermutationMode::exact_swap: return "exact-swap";
    case PermutationMode::naive: return "naive";
    case PermutationMode::valid_shortcut: return "valid-shortcut";
  }
  return "unknown";
}

PermutationMode parse_permutation_mode(const std::string& text) {
  if (text == "exact-swap") return PermutationMode::exact_swap;
  if (text == "naive") return PermutationMode::naive;
  if (text == "valid-shortcut") return PermutationMode::valid_shortcut;
  throw InvalidArgument("unknown mode '" + text + "' (expected exact-swap, naive or valid-shortcut)");
}

double count_pvalue(double query, std::span<const double> group) {
  const auto hits = std::count_if(group.begin(), group.end(), [&](double t) { return t >= query; });
  return static_cast<double>(hits + 1) / static_cast<double>(group.size() + 1);
}

double permutation_pvalue(const FittedStatistic& stat, ClassLabel theta, FeatureView x) {
  const double t = stat.evaluate(theta, x);
  const auto swapped = stat.swapped_scores(theta, x);
  return count_pvalue(t, swapped);
}

double naive_pvalue(const FittedStatistic& stat, ClassLabel theta, FeatureView x) {
  const double t = stat.evaluate(theta, x);
  std::vector<double> group;
  for (std::size_t i : stat.data().group(theta)) group.push_back(stat.evaluate_row(theta, i));
  return count_pvalue(t, group);
}

double valid_shortcut_pvalue(const FittedStatistic& stat, ClassLabel theta, FeatureView x) {
  const auto scores = stat.augmented_scores(theta, x);
  return count_pvalue(scores.front(), std::span<const double>(scores).subspan(1));
}

double mode_pvalue(PermutationMode mode, const FittedStatistic& stat, ClassLabel theta, FeatureView x) {
  if (x.size() != stat.data().dim()) throw InvalidArgument("query dimension does not match the training data");
  switch (mode) {
    case PermutationMode::exact_swap: return permutation_pvalue(stat, theta, x);
    case PermutationMode::naive: return naive_pvalue(stat, theta, x);
    case PermutationMode::valid_shortcut: return valid_shortcut_pvalue(stat, theta, x);
  }
  throw InvalidArgument("unknown permutation mode");
}

bool check_group_sizes(const TrainingSet& d, std::span<const double> alphas) {
  bool warned = false;
  for (double alpha : alphas) {
    for (std::size_t t = 0; t < d.num_classes(); ++t) {
      const auto theta = ClassLabel::from_index(t);
      const double n1 = static_cast<double>(d.group_size(theta) + 1);
      if (n1 * alpha < 1.0) {
        std::ostringstream msg;
        msg << "class " << d.label_name(theta) << " has N = " << d.group_size(theta) << " < 1/alpha - 1 for alpha = "
            << alpha << "; its p-value can never fall to alpha or below, so it is never excluded";
        warn(msg.str());
        warned = true;
      }
    }
  }
  return warned;
}

PValueVector pvalue_vector(PermutationMode mode, const FittedStatistic& stat, FeatureView x,
                           std::span<const double> alphas) {
  if (!alphas.empty()) check_group_sizes(stat.data(), alphas);
  std::vector<double> values;
  for (std::size_t t = 0; t < stat.data().num_classes(); ++t) {
    values.push_back(mode_pvalue(mode, stat, ClassLabel::from_index(t), x));
  }
  return PValueVector(std::move(values));
}

}  // namespace pvclass

namespace pvclass {

namespace {

std::unique_ptr<FittedStatistic> scratch_fit(const StatisticConfig& config, TrainingSet d) {
  const auto shared = std::make_shared<const TrainingSet>(std::move(d));
  switch (config.kind) {
    case StatisticKind::gaussian_plugin: return std::make_unique<GaussianPluginStatistic>(shared);
    case StatisticKind::knn:
      return std::make_unique<KnnStatistic>(shared, config.k, config.scaling, config.prior_weights);
    case StatisticKind::logistic: return std::make_unique<LogisticStatistic>(shared, config.logistic);
  }
  throw InvalidArgument("unknown statistic kind");
}

}  // namespace

double reference_pvalue(const StatisticConfig& config, PermutationMode mode, const TrainingSet& d,
                        ClassLabel theta, FeatureView x) {
  if (config.kind == StatisticKind::knn && config.k == 0) throw InvalidArgument("reference_pvalue needs a resolved k");
  std::vector<double> group;
  double t = 0.0;
  switch (mode) {
    case PermutationMode::exact_swap: {
      t = scratch_fit(config, d)->evaluate(theta, x);
      for (std::size_t i : d.group(theta)) {
        group.push_back(scratch_fit(config, d.with_replaced(i, x))->evaluate(theta, d.row(i)));
      }
      break;
    }
    case PermutationMode::naive: {
      const auto s = scratch_fit(config, d);
      t = s->evaluate(theta, x);
      for (std::size_t i : d.group(theta)) group.push_back(s->evaluate(theta, d.row(i)));
      break;
    }
    case PermutationMode::valid_shortcut: {
      const auto s = scratch_fit(config, d.with_added(x, theta));
      t = s->evaluate(theta, x);
      for (std::size_t i : d.group(theta)) group.push_back(s->evaluate(theta, d.row(i)));
      break;
    }
  }
  return count_pvalue(t, group);
}

}  // namespace pvclass
