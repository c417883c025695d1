#pragma once

// k-nearest-neighbor posterior estimates with closed balls
// B(x, r) = {y : d(x, y) <= r}; ties at the boundary radius are all counted.

#include <optional>
#include <vector>

#include "pvclass/core.hpp"

namespace pvclass {

enum class FeatureScaling { none, per_feature_sd };

/// Per-feature divisors: sample standard deviations (n - 1) of the rows, or 1
/// for a zero-variance feature (with a warning). All ones for `none`.
std::vector<double> feature_scales(const TrainingSet& d, FeatureScaling scaling);

/// Euclidean distance between x / scale and y / scale.
double scaled_distance(FeatureView x, FeatureView y, std::span<const double> scales);

/// min{r >= 0 : #{i : d_i <= r} >= k}, i.e. the k-th smallest distance.
/// Reorders `distances`. Requires 1 <= k <= distances.size().
double kth_radius(std::vector<double>& distances, std::size_t k);

/// Per-point radii and per-class ball counts on the fitted data set:
/// radius[i] = r_k(X_i), count_k(i, b) = N_{k,b}(X_i), count_km1(i, b) = N_{k-1,b}(X_i).
/// X_i itself (distance 0) is part of its own ball.
struct KnnCaches {
  std::size_t k = 0;
  std::size_t num_classes = 0;
  std::vector<double> scales;
  std::vector<double> radius;
  std::vector<std::size_t> count_k;    // n x L, row-major
  std::vector<std::size_t> count_km1;  // n x L, row-major
  std::vector<std::size_t> total_k;    // sum_b count_k(i, b)
  std::vector<std::size_t> total_km1;

  std::size_t nk(std::size_t i, ClassLabel b) const { return count_k[i * num_classes + b.index()]; }
  std::size_t nkm1(std::size_t i, ClassLabel b) const { return count_km1[i * num_classes + b.index()]; }
};

/// Default neighbor count ceil(n^{2/3}).
std::size_t default_k(std::size_t n);

/// Builds the caches by exact computation. Throws InvalidArgument if k = 0 or k > n.
KnnCaches knn_fit(const TrainingSet& d, std::size_t k, FeatureScaling scaling = FeatureScaling::none);

/// Ball counts around an arbitrary point.
struct BallCounts {
  double radius = 0.0;
  std::vector<std::size_t> per_class;
  std::size_t total = 0;
};

/// Counts around x over the rows of d (optionally skipping one row), plus an
/// optional extra point (x_extra, label_extra) treated as part of the data.
BallCounts ball_counts(const TrainingSet& d, FeatureView x, std::size_t k, std::span<const double> scales,
                       std::optional<std::size_t> skip_row = std::nullopt,
                       std::optional<std::pair<FeatureView, ClassLabel>> extra = std::nullopt);

/// Posterior estimate from ball counts. With no prior weights this is the
/// exact count ratio; with weights w_b it is w_theta P_theta(B) / sum_b w_b P_b(B)
/// where P_b(B) = count_b / N_b and `group_sizes` are the N_b of the data set.
double knn_weight(const BallCounts& counts, ClassLabel theta, std::span<const std::size_t> group_sizes,
                  std::span<const double> prior_weights = {});

/// w_theta(x, D) = #{i in G_theta : d(X_i, x) <= r_k(x)} / #{i : d(X_i, x) <= r_k(x)}.
double knn_posterior(const KnnCaches& caches, const TrainingSet& d, ClassLabel theta, FeatureView x);

/// Ball counts N_{k,b}(X_i, D(x, theta)) for every training row i after adding
/// (x, theta), from the caches in O(n q) total. Row-major n x L.
std::vector<std::size_t> knn_augmented_counts(const KnnCaches& caches, const TrainingSet& d, FeatureView x,
                                              ClassLabel theta);

}  // namespace pvclass
