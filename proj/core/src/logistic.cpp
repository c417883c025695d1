#include "pvclass/logistic.hpp"

#include <algorithm>
#include <cmath>

#include "pvclass/errors.hpp"
#include "pvclass/numerics.hpp"
#include "pvclass/warnings.hpp"

namespace pvclass {

double LogisticFit::linear_predictor(FeatureView x) const {
  double s = intercept;
  for (std::size_t j = 0; j < coefficients.size(); ++j) s += coefficients[j] * x[j];
  return s;
}

namespace {

// log(1 + exp(eta)) without overflow
double softplus(double eta) { return eta > 0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta)); }

double sigmoid(double eta) {
  if (eta >= 0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

struct Evaluation {
  double deviance = 0.0;
  std::vector<double> gradient;  // of the log-likelihood
  Matrix information;            // X^T W X
};

Evaluation evaluate(std::span<const double> features, std::span<const double> y01,
                    std::span<const double> beta) {
  const std::size_t p = beta.size();
  Evaluation ev;
  ev.gradient.assign(p, 0.0);
  ev.information = Matrix(p, p);
  std::vector<double> row(p);
  const std::size_t q = p - 1;
  for (std::size_t i = 0; i < y01.size(); ++i) {
    row[0] = 1.0;
    for (std::size_t j = 0; j < q; ++j) row[j + 1] = features[i * q + j];
    const double eta = dot(row, beta);
    const double y = y01[i];
    const double mu = sigmoid(eta);
    ev.deviance += 2.0 * (softplus(eta) - y * eta);
    const double w = mu * (1.0 - mu);
    for (std::size_t a = 0; a < p; ++a) {
      ev.gradient[a] += (y - mu) * row[a];
      for (std::size_t b = 0; b <= a; ++b) ev.information(a, b) += w * row[a] * row[b];
    }
  }
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < a; ++b) ev.information(b, a) = ev.information(a, b);
  return ev;
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

}  // namespace

LogisticFit fit_logistic(const TrainingSet& d, const LogisticOptions& options,
                         const std::optional<LogisticFit>& warm_start) {
  if (d.num_classes() != 2) throw InvalidArgument("fit_logistic: exactly two classes required");
  std::vector<double> features;
  features.reserve(d.features().size());
  std::vector<double> y;
  for (std::size_t i : canonical_order(d)) {
    features.insert(features.end(), d.row(i).begin(), d.row(i).end());
    y.push_back(d.label(i).value() == 2 ? 1.0 : 0.0);
  }
  return fit_logistic(features, d.dim(), y, options, warm_start);
}

LogisticFit fit_logistic(std::span<const double> features, std::size_t q, std::span<const double> y01,
                         const LogisticOptions& options, const std::optional<LogisticFit>& warm_start) {
  if (features.size() != y01.size() * q) throw InvalidArgument("fit_logistic: feature buffer does not match n x q");
  const std::size_t p = q + 1;
  std::vector<double> beta(p, 0.0);
  if (warm_start && warm_start->coefficients.size() == q && !warm_start->separated) {
    beta[0] = warm_start->intercept;
    std::copy(warm_start->coefficients.begin(), warm_start->coefficients.end(), beta.begin() + 1);
  }
  LogisticFit fit;
  Evaluation ev = evaluate(features, y01, beta);
  bool deviance_decreasing = true;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (norm(ev.gradient) <= options.gradient_tolerance) {
      fit.converged = true;
      break;
    }
    // Newton step: (X^T W X) delta = X^T (y - mu)
    Matrix lower;
    try {
      lower = cholesky(ev.information);
    } catch (const SingularMatrixError&) {
      Matrix ridged = ev.information;
      const double scale = std::max(1.0, ridged.max_abs_diag());
      for (std::size_t a = 0; a < p; ++a) ridged(a, a) += options.ridge * scale;
      try {
        lower = cholesky(ridged);
      } catch (const SingularMatrixError&) {
        fit.separated = true;
        break;
      }
      if (!fit.ridge_used) warn("logistic fit: singular weighted normal equations, ridge 1e-8 applied");
      fit.ridge_used = true;
    }
    const std::vector<double> delta = backward_solve_transposed(lower, forward_solve(lower, ev.gradient));
    // Step halving keeps the deviance monotone.
    double step = 1.0;
    std::vector<double> candidate(p);
    Evaluation next;
    for (int h = 0; h < 30; ++h) {
      for (std::size_t a = 0; a < p; ++a) candidate[a] = beta[a] + step * delta[a];
      next = evaluate(features, y01, candidate);
      if (next.deviance <= ev.deviance + 1e-12 * std::abs(ev.deviance)) break;
      step *= 0.5;
    }
    deviance_decreasing = next.deviance < ev.deviance;
    beta = candidate;
    ev = std::move(next);
    double max_coef = 0.0;
    for (double b : beta) max_coef = std::max(max_coef, std::abs(b));
    if (max_coef > options.coefficient_cap) {
      fit.separated = true;
      ++it;
      break;
    }
  }
  if (!fit.converged && !fit.separated) {
    if (norm(ev.gradient) <= options.gradient_tolerance) {
      fit.converged = true;
    } else if (deviance_decreasing) {
      fit.separated = true;
    }
  }
  if (fit.converged && !y01.empty()) {
    // Complete separation: the gradient vanishes only in the limit, no MLE exists.
    bool all_correct = true;
    for (std::size_t i = 0; i < y01.size() && all_correct; ++i) {
      double eta = beta[0];
      for (std::size_t j = 0; j < q; ++j) eta += beta[j + 1] * features[i * q + j];
      all_correct = y01[i] > 0.5 ? eta > 0.0 : eta < 0.0;
    }
    if (all_correct) {
      fit.converged = false;
      fit.separated = true;
    }
  }
  fit.iterations = it;
  fit.gradient_norm = norm(ev.gradient);
  fit.intercept = beta[0];
  fit.coefficients.assign(beta.begin() + 1, beta.end());
  return fit;
}

}  // namespace pvclass
