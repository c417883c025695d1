#include "pvclass/discriminant.hpp"

#include <cmath>

#include "pvclass/errors.hpp"

namespace pvclass {

LinearDiscriminant::LinearDiscriminant(std::vector<double> weights, std::vector<FeatureVector> means,
                                       SpdMatrix covariance)
    : means_(std::move(means)), cov_(std::move(covariance)) {
  if (weights.size() != means_.size()) throw InvalidArgument("LinearDiscriminant: weights/means mismatch");
  log_weights_.reserve(weights.size());
  for (double w : weights) log_weights_.push_back(std::log(w));
  precision_means_.reserve(means_.size());
  for (const auto& m : means_) precision_means_.push_back(cov_.solve(m));
}

double LinearDiscriminant::log_statistic(ClassLabel theta, FeatureView x) const {
  const std::size_t t = theta.index();
  const std::size_t q = x.size();
  const auto& mt = means_[t];
  const auto& at = precision_means_[t];
  std::vector<double> others;
  others.reserve(means_.size());
  std::vector<double> log_w_others;
  for (std::size_t b = 0; b < means_.size(); ++b)
    if (b != t) log_w_others.push_back(log_weights_[b]);
  const double log_norm = log_sum_exp(log_w_others);
  for (std::size_t b = 0; b < means_.size(); ++b) {
    if (b == t) continue;
    const auto& mb = means_[b];
    const auto& ab = precision_means_[b];
    double s = 0.0;
    for (std::size_t j = 0; j < q; ++j) s += (x[j] - 0.5 * (mt[j] + mb[j])) * (ab[j] - at[j]);
    others.push_back(log_weights_[b] - log_norm + s);
  }
  return log_sum_exp(others);
}

}  // namespace pvclass
