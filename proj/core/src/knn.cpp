#include "pvclass/knn.hpp"

#include <algorithm>
#include <cmath>

#include "pvclass/errors.hpp"
#include "pvclass/warnings.hpp"

namespace pvclass {

std::vector<double> feature_scales(const TrainingSet& d, FeatureScaling scaling) {
  const std::size_t q = d.dim();
  std::vector<double> scales(q, 1.0);
  if (scaling == FeatureScaling::none) return scales;
  const std::size_t n = d.size();
  if (n < 2) return scales;
  const auto order = canonical_order(d);
  for (std::size_t j = 0; j < q; ++j) {
    double mean = 0.0;
    for (std::size_t i : order) mean += d.row(i)[j];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i : order) {
      const double r = d.row(i)[j] - mean;
      ss += r * r;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd > 0.0) {
      scales[j] = sd;
    } else {
      warn("feature " + std::to_string(j + 1) + " has zero variance; scale set to 1");
    }
  }
  return scales;
}

double scaled_distance(FeatureView x, FeatureView y, std::span<const double> scales) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double r = (x[j] - y[j]) / scales[j];
    s += r * r;
  }
  return std::sqrt(s);
}

double kth_radius(std::vector<double>& distances, std::size_t k) {
  if (k == 0 || k > distances.size()) throw InvalidArgument("kth_radius: k outside 1..n");
  auto nth = distances.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(distances.begin(), nth, distances.end());
  return *nth;
}

std::size_t default_k(std::size_t n) {
  auto k = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 2.0 / 3.0) - 1e-9));
  return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(n, 1));
}

KnnCaches knn_fit(const TrainingSet& d, std::size_t k, FeatureScaling scaling) {
  const std::size_t n = d.size();
  const std::size_t num_classes = d.num_classes();
  if (k == 0 || k > n) throw InvalidArgument("knn_fit: k must lie in 1..n");
  KnnCaches c;
  c.k = k;
  c.num_classes = num_classes;
  c.scales = feature_scales(d, scaling);
  c.radius.resize(n);
  c.count_k.assign(n * num_classes, 0);
  c.count_km1.assign(n * num_classes, 0);
  c.total_k.assign(n, 0);
  c.total_km1.assign(n, 0);
  std::vector<double> dist(n);
  std::vector<double> work(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[j] = scaled_distance(d.row(i), d.row(j), c.scales);
    work = dist;
    const double rk = kth_radius(work, k);
    // r_{k-1}: the (k-1)-th smallest distance, or 0 for k = 1
    const double rkm1 = k >= 2 ? *std::max_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(k - 1)) : 0.0;
    c.radius[i] = rk;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t b = d.label(j).index();
      if (dist[j] <= rk) {
        ++c.count_k[i * num_classes + b];
        ++c.total_k[i];
      }
      if (dist[j] <= rkm1) {
        ++c.count_km1[i * num_classes + b];
        ++c.total_km1[i];
      }
    }
  }
  return c;
}

BallCounts ball_counts(const TrainingSet& d, FeatureView x, std::size_t k, std::span<const double> scales,
                       std::optional<std::size_t> skip_row,
                       std::optional<std::pair<FeatureView, ClassLabel>> extra) {
  const std::size_t n = d.size();
  std::vector<double> dist;
  dist.reserve(n + 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (skip_row && *skip_row == j) continue;
    dist.push_back(scaled_distance(x, d.row(j), scales));
  }
  double extra_dist = 0.0;
  if (extra) {
    extra_dist = scaled_distance(x, extra->first, scales);
    dist.push_back(extra_dist);
  }
  if (k == 0 || k > dist.size()) throw InvalidArgument("ball_counts: k exceeds the number of points");
  std::vector<double> work = dist;
  BallCounts out;
  out.radius = kth_radius(work, k);
  out.per_class.assign(d.num_classes(), 0);
  std::size_t pos = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (skip_row && *skip_row == j) continue;
    if (dist[pos++] <= out.radius) ++out.per_class[d.label(j).index()];
  }
  if (extra && extra_dist <= out.radius) ++out.per_class[extra->second.index()];
  for (std::size_t c : out.per_class) out.total += c;
  return out;
}

double knn_weight(const BallCounts& counts, ClassLabel theta, std::span<const std::size_t> group_sizes,
                  std::span<const double> prior_weights) {
  if (prior_weights.empty()) {
    return static_cast<double>(counts.per_class[theta.index()]) / static_cast<double>(counts.total);
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t b = 0; b < counts.per_class.size(); ++b) {
    const double v = prior_weights[b] * static_cast<double>(counts.per_class[b]) /
                     static_cast<double>(group_sizes[b]);
    den += v;
    if (b == theta.index()) num = v;
  }
  return num / den;
}

double knn_posterior(const KnnCaches& caches, const TrainingSet& d, ClassLabel theta, FeatureView x) {
  const BallCounts bc = ball_counts(d, x, caches.k, caches.scales);
  return static_cast<double>(bc.per_class[theta.index()]) / static_cast<double>(bc.total);
}

std::vector<std::size_t> knn_augmented_counts(const KnnCaches& caches, const TrainingSet& d, FeatureView x,
                                              ClassLabel theta) {
  const std::size_t n = d.size();
  const std::size_t num_classes = caches.num_classes;
  std::vector<std::size_t> out(n * num_classes);
  for (std::size_t i = 0; i < n; ++i) {
    const double dist = scaled_distance(d.row(i), x, caches.scales);
    const std::size_t* base = nullptr;
    bool add = true;
    if (dist < caches.radius[i]) {
      base = &caches.count_km1[i * num_classes];
    } else if (dist == caches.radius[i]) {
      base = &caches.count_k[i * num_classes];
    } else {
      base = &caches.count_k[i * num_classes];
      add = false;
    }
    std::copy(base, base + num_classes, out.begin() + static_cast<std::ptrdiff_t>(i * num_classes));
    if (add) ++out[i * num_classes + theta.index()];
  }
  return out;
}

}  // namespace pvclass
