#pragma once

// Leave-one-out p-values and the separability summaries built on them:
// inclusion and pattern probabilities, ROC step functions, empirical risk.

#include <span>
#include <vector>

#include "pvclass/classifier.hpp"
#include "pvclass/core.hpp"

namespace pvclass {

/// n x L matrix of pi_theta(X_i, D_i) with the row labels Y_i.
class CrossValMatrix {
 public:
  CrossValMatrix(std::size_t num_classes, std::vector<ClassLabel> labels, std::vector<double> values);

  std::size_t rows() const noexcept { return labels_.size(); }
  std::size_t num_classes() const noexcept { return num_classes_; }
  double at(std::size_t i, ClassLabel theta) const { return values_.at(i * num_classes_ + theta.index()); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * num_classes_, num_classes_);
  }
  const std::vector<double>& values() const noexcept { return values_; }
  ClassLabel label(std::size_t i) const { return labels_.at(i); }
  const std::vector<ClassLabel>& labels() const noexcept { return labels_; }
  const std::vector<std::size_t>& group(ClassLabel b) const { return groups_.at(b.index()); }
  std::size_t group_size(ClassLabel b) const { return group(b).size(); }
  /// N_theta - 1{Y_i = theta}: the group size behind entry (i, theta).
  std::size_t loo_group_size(std::size_t i, ClassLabel theta) const;

 private:
  std::size_t num_classes_;
  std::vector<ClassLabel> labels_;
  std::vector<double> values_;
  std::vector<std::vector<std::size_t>> groups_;
};

/// Row i is computed on D_i with X_i as the query, using the same method and
/// mode as classification. Throws StructuralError if removing a row empties a class.
CrossValMatrix crossval_pvalues(const TrainingSet& d, const MethodConfig& method, unsigned threads = 0);

/// Reference implementation: refits every statistic from scratch on D_i.
CrossValMatrix crossval_pvalues_reference(const TrainingSet& d, const MethodConfig& method);

/// #{i in G_b : pi_theta(X_i, D_i) > alpha} / N_b
double empirical_inclusion(const CrossValMatrix& cv, double alpha, ClassLabel b, ClassLabel theta);

/// #{i in G_b : region(X_i, D_i) = S} / N_b
double empirical_pattern(const CrossValMatrix& cv, double alpha, ClassLabel b, LabelSet pattern);

/// Inclusion and pattern probabilities for one alpha. Patterns are the observed
/// ones plus any requested, ordered by size and then by mask.
struct PatternTable {
  double alpha = 0.0;
  std::size_t num_classes = 0;
  std::vector<LabelSet> patterns;
  std::vector<double> inclusion;  // L x L: (b, theta)
  std::vector<double> pattern;    // L x patterns.size(): (b, S)
  std::vector<std::size_t> group_sizes;

  double inclusion_at(ClassLabel b, ClassLabel theta) const { return inclusion[b.index() * num_classes + theta.index()]; }
  double pattern_at(ClassLabel b, std::size_t s) const { return pattern[b.index() * patterns.size() + s]; }
};

PatternTable pattern_table(const CrossValMatrix& cv, double alpha, std::span<const LabelSet> requested = {});

/// alpha -> fraction of a p-value sample that is <= alpha. Right-continuous and
/// nondecreasing; breakpoints are the distinct sample values.
class RocCurve {
 public:
  RocCurve() = default;
  explicit RocCurve(std::vector<double> pvalues);

  double value_at(double alpha) const;
  /// Left limit at alpha: fraction strictly below alpha.
  double value_before(double alpha) const;
  std::vector<double> breakpoints() const;
  std::size_t sample_size() const noexcept { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

/// Curve alpha -> 1 - I_alpha(b, theta) from column theta restricted to G_b.
RocCurve roc_curve(const CrossValMatrix& cv, ClassLabel b, ClassLabel theta);

/// sup over alpha in (0, 1) of |a(alpha) - b(alpha)|.
double sup_distance(const RocCurve& a, const RocCurve& b);

/// Mean over rows of #region(X_i, D_i).
double empirical_risk(const CrossValMatrix& cv, double alpha);

}  // namespace pvclass
