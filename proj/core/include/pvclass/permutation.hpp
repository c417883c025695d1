#pragma once

// Permutation p-values
//   pi_theta = (#{i in G_theta : T(X_i, D_i(x)) >= T(x, D)} + 1) / (N_theta + 1)
// and its two shortcuts. exact_swap and valid_shortcut are valid in finite
// samples; naive is not and is kept for ROC comparisons.

#include <span>
#include <string>
#include <vector>

#include "pvclass/core.hpp"
#include "pvclass/statistic.hpp"

namespace pvclass {

enum class PermutationMode { exact_swap, naive, valid_shortcut };

std::string to_string(PermutationMode mode);
PermutationMode parse_permutation_mode(const std::string& text);

/// (#{t in group : t >= query} + 1) / (group.size() + 1).
double count_pvalue(double query, std::span<const double> group);

double permutation_pvalue(const FittedStatistic& stat, ClassLabel theta, FeatureView x);
double naive_pvalue(const FittedStatistic& stat, ClassLabel theta, FeatureView x);
double valid_shortcut_pvalue(const FittedStatistic& stat, ClassLabel theta, FeatureView x);

double mode_pvalue(PermutationMode mode, const FittedStatistic& stat, ClassLabel theta, FeatureView x);

/// All L p-values for x. Warns when some N_theta + 1 < 1/alpha for any listed alpha.
PValueVector pvalue_vector(PermutationMode mode, const FittedStatistic& stat, FeatureView x,
                           std::span<const double> alphas = {});

/// Warns for each class with N_theta + 1 < 1/alpha. Returns true if any warning was issued.
bool check_group_sizes(const TrainingSet& d, std::span<const double> alphas);

}  // namespace pvclass

namespace pvclass {

/// Same p-value computed with a from-scratch fit for every edited data set
/// (no update formulae, no caches). `config.k` must be resolved for knn.
double reference_pvalue(const StatisticConfig& config, PermutationMode mode, const TrainingSet& d,
                        ClassLabel theta, FeatureView x);

}  // namespace pvclass
