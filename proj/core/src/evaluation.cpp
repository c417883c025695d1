#include "pvclass/evaluation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "pvclass/errors.hpp"
#include "pvclass/gaussian_fit.hpp"
#include "pvclass/knn.hpp"
#include "pvclass/rng.hpp"

namespace pvclass {

CrossValMatrix::CrossValMatrix(std::size_t num_classes, std::vector<ClassLabel> labels, std::vector<double> values)
    : num_classes_(num_classes), labels_(std::move(labels)), values_(std::move(values)), groups_(num_classes) {
  if (values_.size() != labels_.size() * num_classes_) throw InvalidArgument("cross-validation matrix shape mismatch");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].index() >= num_classes_) throw InvalidArgument("cross-validation label out of range");
    groups_[labels_[i].index()].push_back(i);
  }
}

std::size_t CrossValMatrix::loo_group_size(std::size_t i, ClassLabel theta) const {
  return group_size(theta) - (labels_.at(i) == theta ? 1 : 0);
}

namespace {

void check_loo(const TrainingSet& d) {
  for (std::size_t t = 0; t < d.num_classes(); ++t) {
    const auto theta = ClassLabel::from_index(t);
    if (d.group_size(theta) < 2) {
      throw StructuralError("class " + d.label_name(theta) + " has a single member; leaving it out empties the class");
    }
  }
}

// Valid shortcut for the count-ratio knn statistic. D_i plus (X_i, theta) is D
// with row i relabeled, so radii, scales and caches of D carry over and only
// the counts of balls containing X_i change.
void knn_shortcut_rows(const KnnStatistic& stat, std::vector<double>& out, unsigned threads) {
  const TrainingSet& d = stat.data();
  const KnnCaches& c = stat.caches();
  const std::size_t num_classes = d.num_classes();
  parallel_for(
      d.size(),
      [&](std::size_t i) {
        const ClassLabel y = d.label(i);
        for (std::size_t t = 0; t < num_classes; ++t) {
          const auto theta = ClassLabel::from_index(t);
          const bool relabel = theta != y;
          const double query =
              -static_cast<double>(c.nk(i, theta) + (relabel ? 1 : 0)) / static_cast<double>(c.total_k[i]);
          std::size_t hits = 0;
          std::size_t count = 0;
          for (std::size_t j : d.group(theta)) {
            if (j == i) continue;
            std::size_t n_theta = c.nk(j, theta);
            if (relabel && scaled_distance(d.row(j), d.row(i), c.scales) <= c.radius[j]) ++n_theta;
            const double s = -static_cast<double>(n_theta) / static_cast<double>(c.total_k[j]);
            if (s >= query) ++hits;
            ++count;
          }
          out[i * num_classes + t] = static_cast<double>(hits + 1) / static_cast<double>(count + 1);
        }
      },
      threads);
}

}  // namespace

CrossValMatrix crossval_pvalues(const TrainingSet& d, const MethodConfig& method, unsigned threads) {
  check_loo(d);
  const std::size_t num_classes = d.num_classes();
  std::vector<double> values(d.size() * num_classes);

  if (method.kind == MethodKind::typicality) {
    const PooledGaussianFit full = fit_pooled_gaussian(d);
    if (d.size() - 1 < num_classes + d.dim()) throw InvalidArgument("typicality needs n - 1 >= L + q");
    parallel_for(
        d.size(),
        [&](std::size_t i) {
          const PooledGaussianFit fit = full.without(d.row(i), d.label(i));
          for (std::size_t t = 0; t < num_classes; ++t) {
            values[i * num_classes + t] = typicality_index(fit, ClassLabel::from_index(t), d.row(i));
          }
        },
        threads);
    return CrossValMatrix(num_classes, d.labels(), std::move(values));
  }

  const auto shared = std::make_shared<const TrainingSet>(d);
  const auto stat = fit_statistic(method.statistic(), shared);
  if (method.kind == MethodKind::knn && method.mode == PermutationMode::valid_shortcut &&
      method.prior_weights.empty()) {
    knn_shortcut_rows(static_cast<const KnnStatistic&>(*stat), values, threads);
    return CrossValMatrix(num_classes, d.labels(), std::move(values));
  }
  parallel_for(
      d.size(),
      [&](std::size_t i) {
        const auto loo = stat->removed(i);
        for (std::size_t t = 0; t < num_classes; ++t) {
          values[i * num_classes + t] = mode_pvalue(method.mode, *loo, ClassLabel::from_index(t), d.row(i));
        }
      },
      threads);
  return CrossValMatrix(num_classes, d.labels(), std::move(values));
}

CrossValMatrix crossval_pvalues_reference(const TrainingSet& d, const MethodConfig& method) {
  check_loo(d);
  const std::size_t num_classes = d.num_classes();
  std::vector<double> values(d.size() * num_classes);
  StatisticConfig config;
  if (method.kind != MethodKind::typicality) {
    config = method.statistic();
    if (config.kind == StatisticKind::knn && config.k == 0) config.k = default_k(d.size());
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    const TrainingSet loo = d.without(i);
    for (std::size_t t = 0; t < num_classes; ++t) {
      const auto theta = ClassLabel::from_index(t);
      values[i * num_classes + t] = method.kind == MethodKind::typicality
                                        ? typicality_index(fit_pooled_gaussian(loo), theta, d.row(i))
                                        : reference_pvalue(config, method.mode, loo, theta, d.row(i));
    }
  }
  return CrossValMatrix(num_classes, d.labels(), std::move(values));
}

double empirical_inclusion(const CrossValMatrix& cv, double alpha, ClassLabel b, ClassLabel theta) {
  const auto& g = cv.group(b);
  if (g.empty()) throw InvalidArgument("empty group");
  const auto hits = std::count_if(g.begin(), g.end(), [&](std::size_t i) { return cv.at(i, theta) > alpha; });
  return static_cast<double>(hits) / static_cast<double>(g.size());
}

double empirical_pattern(const CrossValMatrix& cv, double alpha, ClassLabel b, LabelSet pattern) {
  const auto& g = cv.group(b);
  if (g.empty()) throw InvalidArgument("empty group");
  const auto hits =
      std::count_if(g.begin(), g.end(), [&](std::size_t i) { return region_mask(cv.row(i), alpha) == pattern; });
  return static_cast<double>(hits) / static_cast<double>(g.size());
}

PatternTable pattern_table(const CrossValMatrix& cv, double alpha, std::span<const LabelSet> requested) {
  const std::size_t num_classes = cv.num_classes();
  PatternTable table;
  table.alpha = alpha;
  table.num_classes = num_classes;
  std::vector<LabelSet> masks(cv.rows());
  std::set<LabelSet> seen(requested.begin(), requested.end());
  for (std::size_t i = 0; i < cv.rows(); ++i) {
    masks[i] = region_mask(cv.row(i), alpha);
    seen.insert(masks[i]);
  }
  table.patterns.assign(seen.begin(), seen.end());
  std::stable_sort(table.patterns.begin(), table.patterns.end(), [](LabelSet a, LabelSet b) {
    const int pa = std::popcount(a);
    const int pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  table.inclusion.assign(num_classes * num_classes, 0.0);
  table.pattern.assign(num_classes * table.patterns.size(), 0.0);
  for (std::size_t b = 0; b < num_classes; ++b) {
    const auto& g = cv.group(ClassLabel::from_index(b));
    table.group_sizes.push_back(g.size());
    if (g.empty()) continue;
    const double inv = 1.0 / static_cast<double>(g.size());
    for (std::size_t i : g) {
      for (std::size_t t = 0; t < num_classes; ++t) {
        if (masks[i] & (LabelSet{1} << t)) table.inclusion[b * num_classes + t] += 1.0;
      }
      const auto pos = std::find(table.patterns.begin(), table.patterns.end(), masks[i]) - table.patterns.begin();
      table.pattern[b * table.patterns.size() + static_cast<std::size_t>(pos)] += 1.0;
    }
    for (std::size_t t = 0; t < num_classes; ++t) table.inclusion[b * num_classes + t] *= inv;
    for (std::size_t s = 0; s < table.patterns.size(); ++s) table.pattern[b * table.patterns.size() + s] *= inv;
  }
  return table;
}

RocCurve::RocCurve(std::vector<double> pvalues) : sorted_(std::move(pvalues)) {
  std::sort(sorted_.begin(), sorted_.end());
}

double RocCurve::value_at(double alpha) const {
  if (sorted_.empty()) return 0.0;
  const auto count = std::upper_bound(sorted_.begin(), sorted_.end(), alpha) - sorted_.begin();
  return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

double RocCurve::value_before(double alpha) const {
  if (sorted_.empty()) return 0.0;
  const auto count = std::lower_bound(sorted_.begin(), sorted_.end(), alpha) - sorted_.begin();
  return static_cast<double>(count) / static_cast<double>(sorted_.size());
}

std::vector<double> RocCurve::breakpoints() const {
  std::vector<double> out = sorted_;
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RocCurve roc_curve(const CrossValMatrix& cv, ClassLabel b, ClassLabel theta) {
  std::vector<double> p;
  for (std::size_t i : cv.group(b)) p.push_back(cv.at(i, theta));
  if (p.empty()) throw InvalidArgument("empty group");
  return RocCurve(std::move(p));
}

double sup_distance(const RocCurve& a, const RocCurve& b) {
  std::vector<double> points = a.breakpoints();
  const auto more = b.breakpoints();
  points.insert(points.end(), more.begin(), more.end());
  double sup = std::abs(a.value_at(0.5) - b.value_at(0.5));
  for (double c : points) {
    if (!(c > 0.0) || c > 1.0) continue;
    sup = std::max(sup, std::abs(a.value_before(c) - b.value_before(c)));
    if (c < 1.0) sup = std::max(sup, std::abs(a.value_at(c) - b.value_at(c)));
  }
  return sup;
}

double empirical_risk(const CrossValMatrix& cv, double alpha) {
  if (cv.rows() == 0) return 0.0;
  std::size_t total = 0;
  for (double p : cv.values()) total += p > alpha ? 1 : 0;
  return static_cast<double>(total) / static_cast<double>(cv.rows());
}

}  // namespace pvclass
