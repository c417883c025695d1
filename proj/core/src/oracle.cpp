#include "pvclass/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "pvclass/errors.hpp"

namespace pvclass {

GaussianMixtureModel::GaussianMixtureModel(std::vector<double> weights, std::vector<FeatureVector> means,
                                           std::vector<Matrix> covariances)
    : weights_(std::move(weights)), means_(std::move(means)) {
  const std::size_t num_classes = weights_.size();
  if (num_classes < 2) throw InvalidArgument("GaussianMixtureModel: need at least two classes");
  if (means_.size() != num_classes || covariances.size() != num_classes) {
    throw InvalidArgument("GaussianMixtureModel: weights, means and covariances differ in length");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw InvalidArgument("GaussianMixtureModel: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("GaussianMixtureModel: weights must sum to 1");
  const std::size_t q = means_.front().size();
  if (q == 0) throw InvalidArgument("GaussianMixtureModel: empty mean vector");
  bool all_same_cov = true;
  bool all_same_component = true;
  for (std::size_t t = 0; t < num_classes; ++t) {
    if (means_[t].size() != q || covariances[t].rows() != q || covariances[t].cols() != q) {
      throw InvalidArgument("GaussianMixtureModel: dimension mismatch in class " + std::to_string(t + 1));
    }
    covs_.emplace_back(covariances[t]);
    const bool same_cov = covariances[t].data() == covariances[0].data();
    all_same_cov = all_same_cov && same_cov;
    all_same_component = all_same_component && same_cov && means_[t] == means_[0];
  }
  if (all_same_component) {
    throw InvalidArgument("GaussianMixtureModel: all class distributions are identical");
  }
  for (const auto& s : covs_) {
    log_norm_.push_back(-0.5 * static_cast<double>(q) * std::log(2.0 * std::numbers::pi) - 0.5 * s.log_det());
  }
  if (all_same_cov) discriminant_.emplace(weights_, means_, covs_.front());
}

const LinearDiscriminant& GaussianMixtureModel::discriminant() const {
  if (!discriminant_) throw InvalidArgument("model is not homoscedastic");
  return *discriminant_;
}

double GaussianMixtureModel::log_density(ClassLabel theta, FeatureView x) const {
  const std::size_t t = theta.index();
  return log_norm_.at(t) - 0.5 * mahalanobis_sq(x, means_[t], covs_[t]);
}

FeatureVector GaussianMixtureModel::sample(ClassLabel theta, Rng& rng) const {
  const std::size_t t = theta.index();
  const std::size_t q = dim();
  std::vector<double> z(q);
  for (double& v : z) v = rng.normal();
  const Matrix& l = covs_[t].factor();
  FeatureVector x = means_[t];
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t k = 0; k <= i; ++k) x[i] += l(i, k) * z[k];
  return x;
}

GaussianMixtureModel GaussianMixtureModel::with_weights(std::vector<double> weights) const {
  std::vector<Matrix> covs;
  for (const auto& s : covs_) covs.push_back(s.matrix());
  return GaussianMixtureModel(std::move(weights), means_, std::move(covs));
}

GaussianMixtureModel two_class_standard_model(std::size_t dim, double delta) {
  FeatureVector mu1(dim, 0.0);
  FeatureVector mu2(dim, 0.0);
  mu2[0] = delta;
  return GaussianMixtureModel({0.5, 0.5}, {mu1, mu2}, {Matrix::identity(dim), Matrix::identity(dim)});
}

double log_optimal_statistic(const GaussianMixtureModel& model, ClassLabel theta, FeatureView x) {
  if (x.size() != model.dim()) throw InvalidArgument("log_optimal_statistic: dimension mismatch");
  if (model.homoscedastic()) return model.discriminant().log_statistic(theta, x);
  const std::size_t num_classes = model.num_classes();
  std::vector<double> log_w;
  std::vector<double> terms;
  for (std::size_t b = 0; b < num_classes; ++b) {
    if (b == theta.index()) continue;
    log_w.push_back(std::log(model.weights()[b]));
  }
  const double log_norm = log_sum_exp(log_w);
  std::size_t k = 0;
  for (std::size_t b = 0; b < num_classes; ++b) {
    if (b == theta.index()) continue;
    terms.push_back(log_w[k++] - log_norm + model.log_density(ClassLabel::from_index(b), x));
  }
  return log_sum_exp(terms) - model.log_density(theta, x);
}

double optimal_statistic(const GaussianMixtureModel& model, ClassLabel theta, FeatureView x) {
  return std::exp(log_optimal_statistic(model, theta, x));
}

MonteCarloReference::MonteCarloReference(std::vector<double> scores) : sorted_(std::move(scores)) {
  std::sort(sorted_.begin(), sorted_.end());
}

double MonteCarloReference::upper_tail_pvalue(double s) const {
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), s);
  const auto count = static_cast<double>(sorted_.end() - it);
  return (count + 1.0) / (static_cast<double>(sorted_.size()) + 1.0);
}

MonteCarloReference draw_reference(const GaussianMixtureModel& model, ClassLabel theta, std::size_t samples,
                                   std::uint64_t seed, const std::function<double(FeatureView)>& score,
                                   unsigned threads) {
  if (samples == 0) throw InvalidArgument("Monte Carlo sample count must be positive");
  std::vector<double> scores(samples);
  const std::size_t chunks = (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
  parallel_for(
      chunks,
      [&](std::size_t c) {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(theta.value()), c}));
        const std::size_t end = std::min(samples, (c + 1) * kMonteCarloChunk);
        for (std::size_t j = c * kMonteCarloChunk; j < end; ++j) {
          const FeatureVector z = model.sample(theta, rng);
          scores[j] = score(z);
        }
      },
      threads);
  return MonteCarloReference(std::move(scores));
}

double optimal_pvalue_mc(const GaussianMixtureModel& model, ClassLabel theta, FeatureView x,
                         std::size_t samples, std::uint64_t seed) {
  const auto stat = [&](FeatureView z) { return log_optimal_statistic(model, theta, z); };
  return draw_reference(model, theta, samples, seed, stat).upper_tail_pvalue(stat(x));
}

OptimalPValues::OptimalPValues(const GaussianMixtureModel& model, std::size_t samples, std::uint64_t seed,
                               unsigned threads)
    : model_(model) {
  for (std::size_t t = 0; t < model_.num_classes(); ++t) {
    const ClassLabel theta = ClassLabel::from_index(t);
    refs_.push_back(draw_reference(
        model_, theta, samples, seed, [&](FeatureView z) { return log_optimal_statistic(model_, theta, z); },
        threads));
  }
}

double OptimalPValues::pvalue(ClassLabel theta, FeatureView x) const {
  return refs_.at(theta.index()).upper_tail_pvalue(log_optimal_statistic(model_, theta, x));
}

PValueVector OptimalPValues::pvalues(FeatureView x) const {
  std::vector<double> p;
  for (std::size_t t = 0; t < refs_.size(); ++t) p.push_back(pvalue(ClassLabel::from_index(t), x));
  return PValueVector(std::move(p));
}

double two_class_z(const GaussianMixtureModel& model, FeatureView x) {
  if (model.num_classes() != 2 || !model.homoscedastic()) {
    throw InvalidArgument("closed-form p-value needs two classes with a common covariance");
  }
  const auto& mu1 = model.mean(ClassLabel(1));
  const auto& mu2 = model.mean(ClassLabel(2));
  const SpdMatrix& sigma = model.covariance(ClassLabel(1));
  const std::size_t q = model.dim();
  if (x.size() != q) throw InvalidArgument("two_class_z: dimension mismatch");
  std::vector<double> diff(q);
  std::vector<double> centered(q);
  for (std::size_t j = 0; j < q; ++j) {
    diff[j] = mu2[j] - mu1[j];
    centered[j] = x[j] - 0.5 * (mu1[j] + mu2[j]);
  }
  const double delta = std::sqrt(mahalanobis_sq(mu1, mu2, sigma));
  if (!(delta > 0.0)) throw InvalidArgument("closed-form p-value undefined for equal means");
  return dot(centered, sigma.solve(diff)) / delta;
}

double optimal_pvalue_2class_closed(const GaussianMixtureModel& model, ClassLabel theta, FeatureView x) {
  const double z = two_class_z(model, x);
  const double half_delta =
      0.5 * std::sqrt(mahalanobis_sq(model.mean(ClassLabel(1)), model.mean(ClassLabel(2)),
                                     model.covariance(ClassLabel(1))));
  if (theta.value() == 1) return std_normal_cdf(-z - half_delta);
  if (theta.value() == 2) return std_normal_cdf(z - half_delta);
  throw InvalidArgument("closed-form p-value: theta must be 1 or 2");
}

double typicality_known(const GaussianMixtureModel& model, ClassLabel theta, FeatureView x) {
  return chisq_sf(mahalanobis_sq(x, model.mean(theta), model.covariance(theta)), static_cast<int>(model.dim()));
}

double log_compromise_ratio(const GaussianMixtureModel& model, double w0, ClassLabel theta, FeatureView x) {
  std::vector<double> terms;
  terms.reserve(model.num_classes() + 1);
  for (std::size_t b = 0; b < model.num_classes(); ++b) {
    terms.push_back(std::log(model.weights()[b]) + model.log_density(ClassLabel::from_index(b), x));
  }
  terms.push_back(std::log(w0));
  return model.log_density(theta, x) - log_sum_exp(terms);
}

double compromise_pvalue(const GaussianMixtureModel& model, double w0, ClassLabel theta, FeatureView x,
                         std::size_t samples, std::uint64_t seed) {
  if (!(w0 > 0.0)) throw InvalidArgument("compromise_pvalue: w0 must be positive");
  // Small ratio = atypical, so score with the negated log ratio.
  const auto score = [&](FeatureView z) { return -log_compromise_ratio(model, w0, theta, z); };
  return draw_reference(model, theta, samples, seed, score).upper_tail_pvalue(score(x));
}

namespace {

void check_inflation(const GaussianMixtureModel& model, double c) {
  if (!(c > 1.0)) throw InvalidArgument("inflated statistic: c must exceed 1");
  if (!model.homoscedastic()) throw InvalidArgument("inflated statistic: model must be homoscedastic");
}

std::vector<double> other_log_weights(const GaussianMixtureModel& model, ClassLabel theta) {
  std::vector<double> lw;
  for (std::size_t b = 0; b < model.num_classes(); ++b)
    if (b != theta.index()) lw.push_back(std::log(model.weights()[b]));
  const double norm = log_sum_exp(lw);
  for (double& v : lw) v -= norm;
  return lw;
}

}  // namespace

double log_inflated_statistic(const GaussianMixtureModel& model, double c, ClassLabel theta, FeatureView x) {
  check_inflation(model, c);
  const SpdMatrix& sigma = model.covariance(theta);
  const auto& mt = model.mean(theta);
  const std::vector<double> lw = other_log_weights(model, theta);
  const std::size_t q = model.dim();
  std::vector<double> terms;
  std::size_t k = 0;
  for (std::size_t b = 0; b < model.num_classes(); ++b) {
    if (b == theta.index()) continue;
    const auto& mb = model.mean(ClassLabel::from_index(b));
    FeatureVector nu(q);
    for (std::size_t j = 0; j < q; ++j) nu[j] = mt[j] - (mb[j] - mt[j]) / (c - 1.0);
    const double e = (1.0 - 1.0 / c) * mahalanobis_sq(x, nu, sigma) / 2.0 -
                     mahalanobis_sq(mb, mt, sigma) / (2.0 * (c - 1.0));
    terms.push_back(lw[k++] + e);
  }
  return log_sum_exp(terms);
}

double log_inflated_statistic_direct(const GaussianMixtureModel& model, double c, ClassLabel theta,
                                     FeatureView x) {
  check_inflation(model, c);
  const SpdMatrix& sigma = model.covariance(theta);
  const std::vector<double> lw = other_log_weights(model, theta);
  const double own = mahalanobis_sq(x, model.mean(theta), sigma) / 2.0;
  std::vector<double> terms;
  std::size_t k = 0;
  for (std::size_t b = 0; b < model.num_classes(); ++b) {
    if (b == theta.index()) continue;
    terms.push_back(lw[k++] + own - mahalanobis_sq(x, model.mean(ClassLabel::from_index(b)), sigma) / (2.0 * c));
  }
  return log_sum_exp(terms);
}

double inflated_pvalue(const GaussianMixtureModel& model, double c, ClassLabel theta, FeatureView x,
                       std::size_t samples, std::uint64_t seed) {
  const auto stat = [&](FeatureView z) { return log_inflated_statistic(model, c, theta, z); };
  const double tx = stat(x);
  return draw_reference(model, theta, samples, seed, stat).upper_tail_pvalue(tx);
}

RiskEstimate risk_alpha(const PValueFunction& pvalue, const GaussianMixtureModel& model, double alpha,
                        std::size_t samples, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("risk_alpha: alpha must lie in (0,1)");
  if (samples == 0) throw InvalidArgument("risk_alpha: sample count must be positive");
  const std::size_t num_classes = model.num_classes();
  RiskEstimate r;
  r.per_class.assign(num_classes, 0.0);
  Rng rng(derive_seed(seed, {0x7269736bULL}));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const ClassLabel y = ClassLabel::from_index(rng.categorical(model.weights()));
    const FeatureVector x = model.sample(y, rng);
    double size = 0.0;
    for (std::size_t t = 0; t < num_classes; ++t) {
      if (pvalue(ClassLabel::from_index(t), x) > alpha) {
        r.per_class[t] += 1.0;
        size += 1.0;
      }
    }
    sum += size;
    sum_sq += size * size;
  }
  const double m = static_cast<double>(samples);
  for (double& v : r.per_class) v /= m;
  r.total = sum / m;
  const double var = samples > 1 ? (sum_sq - m * r.total * r.total) / (m - 1.0) : 0.0;
  r.std_error = std::sqrt(std::max(var, 0.0) / m);
  return r;
}

}  // namespace pvclass
