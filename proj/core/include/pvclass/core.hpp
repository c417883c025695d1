#pragma once

// Shared domain types: class labels, training sets, p-value vectors and
// prediction regions.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pvclass {

using FeatureVector = std::vector<double>;
using FeatureView = std::span<const double>;

/// Class label in 1..L.
class ClassLabel {
 public:
  constexpr ClassLabel() = default;
  constexpr explicit ClassLabel(int value) : value_(value) {}

  constexpr int value() const noexcept { return value_; }
  /// Zero-based position, for indexing per-class arrays.
  constexpr std::size_t index() const noexcept { return static_cast<std::size_t>(value_ - 1); }

  static constexpr ClassLabel from_index(std::size_t i) { return ClassLabel(static_cast<int>(i) + 1); }

  friend constexpr auto operator<=>(ClassLabel, ClassLabel) = default;

 private:
  int value_ = 1;
};

/// Labeled feature vectors with the per-class group index.
///
/// Features are stored row-major. The label dictionary maps canonical labels
/// 1..L back to the external names (first-appearance order).
class TrainingSet {
 public:
  TrainingSet() = default;

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_classes() const noexcept { return groups_.size(); }

  FeatureView row(std::size_t i) const { return {features_.data() + i * dim_, dim_}; }
  ClassLabel label(std::size_t i) const { return labels_[i]; }
  const std::vector<ClassLabel>& labels() const noexcept { return labels_; }
  const std::vector<double>& features() const noexcept { return features_; }

  /// Positions of the rows with label `theta`, ascending.
  const std::vector<std::size_t>& group(ClassLabel theta) const { return groups_.at(theta.index()); }
  std::size_t group_size(ClassLabel theta) const { return group(theta).size(); }

  const std::string& label_name(ClassLabel theta) const { return label_names_.at(theta.index()); }
  const std::vector<std::string>& label_names() const noexcept { return label_names_; }

  /// Data set without row `i`. Throws StructuralError if a class would become empty.
  TrainingSet without(std::size_t i) const;
  /// Data set with row `i`'s features replaced by `x` (label kept).
  TrainingSet with_replaced(std::size_t i, FeatureView x) const;
  /// Data set with (x, theta) appended as the last row.
  TrainingSet with_added(FeatureView x, ClassLabel theta) const;
  /// Data set with row `i` relabeled to `theta`.
  TrainingSet with_label(std::size_t i, ClassLabel theta) const;

  friend TrainingSet make_training_set(std::vector<double> features, std::size_t dim,
                                       std::vector<ClassLabel> labels,
                                       std::vector<std::string> label_names);

 private:
  void rebuild_groups();

  std::size_t dim_ = 0;
  std::vector<double> features_;
  std::vector<ClassLabel> labels_;
  std::vector<std::string> label_names_;
  std::vector<std::vector<std::size_t>> groups_;
};

/// Builds a TrainingSet from already canonical labels (1..L, L = label_names.size()).
/// Throws StructuralError on empty classes or shape mismatch.
TrainingSet make_training_set(std::vector<double> features, std::size_t dim,
                              std::vector<ClassLabel> labels,
                              std::vector<std::string> label_names);

/// Row indices sorted by (label, features lexicographically). Fits accumulate
/// in this order so that they are exactly invariant under row permutations.
std::vector<std::size_t> canonical_order(const TrainingSet& d);

/// Validates raw rows with integer labels in 1..L.
///
/// L is inferred as the largest label unless `declared_classes` is given.
/// Every class must be non-empty and every row must share one dimension.
TrainingSet validate_training_set(const std::vector<FeatureVector>& features,
                                  const std::vector<int>& labels,
                                  std::optional<std::size_t> declared_classes = std::nullopt);

/// Same, for external string labels; canonical labels follow first appearance.
/// `declared_names`, when given, fixes the label order (and may name classes
/// that must then be present).
TrainingSet validate_training_set(const std::vector<FeatureVector>& features,
                                  const std::vector<std::string>& labels,
                                  const std::vector<std::string>& declared_names = {});

/// One p-value per class. Entries lie in [0,1] and need not sum to one.
class PValueVector {
 public:
  PValueVector() = default;
  explicit PValueVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](ClassLabel theta) const { return values_.at(theta.index()); }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/// Subset of {1..L} as a bitmask; bit (theta-1) set iff theta is a member.
using LabelSet = std::uint64_t;

inline constexpr std::size_t kMaxClasses = 64;

constexpr LabelSet label_bit(ClassLabel theta) { return LabelSet{1} << theta.index(); }

/// Labels contained in a set, ascending.
std::vector<ClassLabel> members_of(LabelSet set);

class PredictionRegion {
 public:
  PredictionRegion(double alpha, std::size_t num_classes, LabelSet members)
      : alpha_(alpha), num_classes_(num_classes), members_(members) {}

  double alpha() const noexcept { return alpha_; }
  std::size_t num_classes() const noexcept { return num_classes_; }
  LabelSet mask() const noexcept { return members_; }
  bool contains(ClassLabel theta) const noexcept { return (members_ & label_bit(theta)) != 0; }
  bool empty() const noexcept { return members_ == 0; }
  std::size_t count() const noexcept;
  std::vector<ClassLabel> members() const { return members_of(members_); }

 private:
  double alpha_;
  std::size_t num_classes_;
  LabelSet members_;
};

/// {theta : p_theta > alpha}; a p-value equal to alpha is excluded.
PredictionRegion region_from_pvalues(const PValueVector& pvals, double alpha);

/// Mask form of region_from_pvalues for hot loops (no alpha validation).
LabelSet region_mask(std::span<const double> pvals, double alpha);

}  // namespace pvclass
