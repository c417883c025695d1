#include "pvclass/gaussian_fit.hpp"

#include <cmath>
#include <string>

#include "pvclass/errors.hpp"

namespace pvclass {

namespace {

std::vector<double> minus(FeatureView a, FeatureView b) {
  std::vector<double> d(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) d[j] = a[j] - b[j];
  return d;
}

std::vector<double> scaled(std::vector<double> v, double s) {
  for (double& e : v) e *= s;
  return v;
}

void scale_factor(Matrix& lower, double s) {
  // factor of (s * Sigma) is sqrt(s) * L
  lower *= std::sqrt(s);
}

}  // namespace

double PooledGaussianFit::proportion(ClassLabel theta) const {
  return static_cast<double>(count(theta)) / static_cast<double>(n_);
}

void PooledGaussianFit::refresh(Matrix cov, Matrix lower) {
  cov_ = SpdMatrix::from_parts(std::move(cov), std::move(lower));
  std::vector<double> w;
  for (std::size_t c : counts_) w.push_back(static_cast<double>(c) / static_cast<double>(n_));
  discriminant_ = LinearDiscriminant(std::move(w), means_, cov_);
}

PooledGaussianFit fit_pooled_gaussian(const TrainingSet& d) {
  const std::size_t n = d.size();
  const std::size_t num_classes = d.num_classes();
  const std::size_t q = d.dim();
  if (n <= num_classes) throw InvalidArgument("fit_pooled_gaussian: need n > L");
  PooledGaussianFit fit;
  fit.n_ = n;
  fit.counts_.resize(num_classes);
  fit.means_.assign(num_classes, FeatureVector(q, 0.0));
  const auto order = canonical_order(d);
  for (std::size_t i : order) {
    const FeatureView x = d.row(i);
    auto& m = fit.means_[d.label(i).index()];
    for (std::size_t j = 0; j < q; ++j) m[j] += x[j];
  }
  for (std::size_t t = 0; t < num_classes; ++t) {
    fit.counts_[t] = d.group_size(ClassLabel::from_index(t));
    for (double& v : fit.means_[t]) v /= static_cast<double>(fit.counts_[t]);
  }
  Matrix scatter(q, q);
  for (std::size_t i : order) {
    const auto r = minus(d.row(i), fit.means_[d.label(i).index()]);
    scatter.add_outer(1.0, r, r);
  }
  scatter *= 1.0 / static_cast<double>(n - num_classes);
  Matrix lower;
  try {
    lower = cholesky(scatter);
  } catch (const SingularMatrixError& e) {
    throw DegenerateFitError("degenerate fit: pooled covariance singular (pivot " +
                                 std::to_string(e.pivot()) + ")",
                             e.pivot());
  }
  fit.refresh(std::move(scatter), std::move(lower));
  return fit;
}

PooledGaussianFit PooledGaussianFit::without(FeatureView x, ClassLabel theta) const {
  const std::size_t t = theta.index();
  const double nt = static_cast<double>(counts_.at(t));
  if (counts_[t] < 2) throw InvalidArgument("remove: group " + std::to_string(theta.value()) + " is a singleton");
  const std::size_t num_classes = counts_.size();
  if (n_ - 1 <= num_classes) throw InvalidArgument("remove: need n - 1 > L");
  const double dof = static_cast<double>(n_ - num_classes);
  // Sigma <- ((n-L) Sigma - (1 - 1/N)^{-1} r r^T) / (n-L-1), r = x - mu_theta
  const auto r = minus(x, means_[t]);
  const double coef = 1.0 / (1.0 - 1.0 / nt);
  Matrix cov = cov_.matrix();
  cov *= dof;
  cov.add_outer(-coef, r, r);
  cov *= 1.0 / (dof - 1.0);
  Matrix lower = cov_.factor();
  scale_factor(lower, dof);
  try {
    cholesky_rank_one(lower, scaled(r, std::sqrt(coef)), -1);
  } catch (const SingularMatrixError& e) {
    throw DegenerateFitError("degenerate fit after removing a row", e.pivot());
  }
  scale_factor(lower, 1.0 / (dof - 1.0));

  PooledGaussianFit out = *this;
  out.n_ = n_ - 1;
  out.counts_[t] -= 1;
  for (std::size_t j = 0; j < r.size(); ++j) out.means_[t][j] -= r[j] / (nt - 1.0);
  out.refresh(std::move(cov), std::move(lower));
  return out;
}

PooledGaussianFit PooledGaussianFit::with_replaced(FeatureView x_old, FeatureView x_new, ClassLabel theta) const {
  const std::size_t t = theta.index();
  const double nt = static_cast<double>(counts_.at(t));
  const std::size_t q = dim();
  // mu_{theta,i}: group mean without x_old
  std::vector<double> mu_i(q);
  if (counts_[t] >= 2) {
    for (std::size_t j = 0; j < q; ++j) mu_i[j] = (nt * means_[t][j] - x_old[j]) / (nt - 1.0);
  } else {
    mu_i = means_[t];  // singleton group: coefficient (1 - 1/N) vanishes
  }
  const double dof = static_cast<double>(n_ - counts_.size());
  const double coef = 1.0 - 1.0 / nt;
  const auto a = minus(x_new, mu_i);
  const auto b = minus(x_old, mu_i);
  Matrix cov = cov_.matrix();
  cov *= dof;
  cov.add_outer(coef, a, a);
  cov.add_outer(-coef, b, b);
  cov *= 1.0 / dof;
  Matrix lower = cov_.factor();
  if (coef > 0.0) {
    const double s = std::sqrt(coef / dof);
    cholesky_rank_one(lower, scaled(a, s), +1);
    try {
      cholesky_rank_one(lower, scaled(b, s), -1);
    } catch (const SingularMatrixError& e) {
      throw DegenerateFitError("degenerate fit after replacing a row", e.pivot());
    }
  }
  PooledGaussianFit out = *this;
  for (std::size_t j = 0; j < q; ++j) out.means_[t][j] += (x_new[j] - x_old[j]) / nt;
  out.refresh(std::move(cov), std::move(lower));
  return out;
}

PooledGaussianFit PooledGaussianFit::with_added(FeatureView x, ClassLabel theta) const {
  const std::size_t t = theta.index();
  const double nt = static_cast<double>(counts_.at(t));
  const double dof = static_cast<double>(n_ - counts_.size());
  // Sigma <- ((n-L) Sigma + (1 + 1/N)^{-1} r r^T) / (n+1-L)
  const auto r = minus(x, means_[t]);
  const double coef = 1.0 / (1.0 + 1.0 / nt);
  Matrix cov = cov_.matrix();
  cov *= dof;
  cov.add_outer(coef, r, r);
  cov *= 1.0 / (dof + 1.0);
  Matrix lower = cov_.factor();
  scale_factor(lower, dof);
  cholesky_rank_one(lower, scaled(r, std::sqrt(coef)), +1);
  scale_factor(lower, 1.0 / (dof + 1.0));

  PooledGaussianFit out = *this;
  out.n_ = n_ + 1;
  out.counts_[t] += 1;
  for (std::size_t j = 0; j < r.size(); ++j) out.means_[t][j] += r[j] / (nt + 1.0);
  out.refresh(std::move(cov), std::move(lower));
  return out;
}

double gaussian_plugin_statistic(const PooledGaussianFit& fit, ClassLabel theta, FeatureView x) {
  return std::exp(fit.log_plugin_statistic(theta, x));
}

double typicality_constant(std::size_t n, std::size_t num_classes, std::size_t dim, std::size_t group_size) {
  const double nl = static_cast<double>(n) - static_cast<double>(num_classes);
  const double q = static_cast<double>(dim);
  return (nl - q + 1.0) / (q * nl * (1.0 + 1.0 / static_cast<double>(group_size)));
}

double typicality_index(const PooledGaussianFit& fit, ClassLabel theta, FeatureView x) {
  const std::size_t n = fit.size();
  const std::size_t num_classes = fit.num_classes();
  const std::size_t q = fit.dim();
  if (n < num_classes + q) throw InvalidArgument("typicality_index: need n >= L + q");
  if (x.size() != q) throw InvalidArgument("typicality_index: dimension mismatch");
  const double t = mahalanobis_sq(x, fit.mean(theta), fit.covariance());
  const double c = typicality_constant(n, num_classes, q, fit.count(theta));
  return f_sf(c * t, static_cast<int>(q), static_cast<int>(n - num_classes - q + 1));
}

}  // namespace pvclass
