#include "pvclass/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

#include "pvclass/errors.hpp"

namespace pvclass {

void TrainingSet::rebuild_groups() {
  groups_.assign(label_names_.size(), {});
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    groups_[labels_[i].index()].push_back(i);
  }
}

TrainingSet make_training_set(std::vector<double> features, std::size_t dim,
                              std::vector<ClassLabel> labels,
                              std::vector<std::string> label_names) {
  if (dim == 0) throw StructuralError("feature dimension must be positive");
  if (features.size() != labels.size() * dim) {
    throw StructuralError("feature buffer does not match n x q");
  }
  if (label_names.size() < 2) throw StructuralError("at least two classes are required");
  if (label_names.size() > kMaxClasses) throw StructuralError("too many classes (max 64)");
  for (double v : features) {
    if (!std::isfinite(v)) throw StructuralError("non-finite feature value");
  }
  TrainingSet d;
  d.dim_ = dim;
  d.features_ = std::move(features);
  d.labels_ = std::move(labels);
  d.label_names_ = std::move(label_names);
  for (ClassLabel y : d.labels_) {
    if (y.value() < 1 || y.index() >= d.label_names_.size()) {
      throw StructuralError("label " + std::to_string(y.value()) + " outside 1.." +
                            std::to_string(d.label_names_.size()));
    }
  }
  d.rebuild_groups();
  for (std::size_t t = 0; t < d.groups_.size(); ++t) {
    if (d.groups_[t].empty()) {
      throw StructuralError("class " + d.label_names_[t] + " empty");
    }
  }
  return d;
}

std::vector<std::size_t> canonical_order(const TrainingSet& d) {
  std::vector<std::size_t> order(d.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (d.label(a) != d.label(b)) return d.label(a) < d.label(b);
    const auto ra = d.row(a);
    const auto rb = d.row(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  });
  return order;
}

TrainingSet TrainingSet::without(std::size_t i) const {
  std::vector<double> f;
  f.reserve(features_.size() - dim_);
  f.insert(f.end(), features_.begin(), features_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
  f.insert(f.end(), features_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_), features_.end());
  std::vector<ClassLabel> y = labels_;
  y.erase(y.begin() + static_cast<std::ptrdiff_t>(i));
  return make_training_set(std::move(f), dim_, std::move(y), label_names_);
}

TrainingSet TrainingSet::with_replaced(std::size_t i, FeatureView x) const {
  if (x.size() != dim_) throw InvalidArgument("with_replaced: dimension mismatch");
  TrainingSet d = *this;
  std::copy(x.begin(), x.end(), d.features_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
  return d;
}

TrainingSet TrainingSet::with_added(FeatureView x, ClassLabel theta) const {
  if (x.size() != dim_) throw InvalidArgument("with_added: dimension mismatch");
  if (theta.value() < 1 || theta.index() >= num_classes()) {
    throw InvalidArgument("with_added: label out of range");
  }
  TrainingSet d = *this;
  d.features_.insert(d.features_.end(), x.begin(), x.end());
  d.labels_.push_back(theta);
  d.groups_[theta.index()].push_back(d.labels_.size() - 1);
  return d;
}

TrainingSet TrainingSet::with_label(std::size_t i, ClassLabel theta) const {
  std::vector<ClassLabel> y = labels_;
  y.at(i) = theta;
  return make_training_set(features_, dim_, std::move(y), label_names_);
}

TrainingSet validate_training_set(const std::vector<FeatureVector>& features,
                                  const std::vector<int>& labels,
                                  std::optional<std::size_t> declared_classes) {
  if (features.size() != labels.size()) {
    throw StructuralError("features and labels differ in length");
  }
  if (features.empty()) throw StructuralError("empty training set");
  const std::size_t q = features.front().size();
  std::vector<double> flat;
  flat.reserve(features.size() * q);
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].size() != q) {
      throw StructuralError("row " + std::to_string(i + 1) + " has dimension " +
                            std::to_string(features[i].size()) + ", expected " +
                            std::to_string(q));
    }
    flat.insert(flat.end(), features[i].begin(), features[i].end());
  }
  int max_label = 0;
  std::vector<ClassLabel> y;
  y.reserve(labels.size());
  for (int v : labels) {
    if (v < 1) throw StructuralError("labels must be >= 1");
    max_label = std::max(max_label, v);
    y.emplace_back(v);
  }
  const std::size_t num_classes = declared_classes.value_or(static_cast<std::size_t>(max_label));
  if (static_cast<std::size_t>(max_label) > num_classes) {
    throw StructuralError("label " + std::to_string(max_label) + " exceeds declared L");
  }
  std::vector<std::string> names;
  for (std::size_t t = 1; t <= num_classes; ++t) names.push_back(std::to_string(t));
  return make_training_set(std::move(flat), q, std::move(y), std::move(names));
}

TrainingSet validate_training_set(const std::vector<FeatureVector>& features,
                                  const std::vector<std::string>& labels,
                                  const std::vector<std::string>& declared_names) {
  std::vector<std::string> names = declared_names;
  std::unordered_map<std::string, int> dict;
  for (std::size_t t = 0; t < names.size(); ++t) dict.emplace(names[t], static_cast<int>(t) + 1);
  std::vector<int> ids;
  ids.reserve(labels.size());
  for (const auto& s : labels) {
    auto it = dict.find(s);
    if (it == dict.end()) {
      if (!declared_names.empty()) throw StructuralError("unknown label '" + s + "'");
      names.push_back(s);
      it = dict.emplace(s, static_cast<int>(names.size())).first;
    }
    ids.push_back(it->second);
  }
  TrainingSet d = validate_training_set(features, ids, names.size());
  std::vector<double> flat = d.features();
  return make_training_set(std::move(flat), d.dim(), d.labels(), std::move(names));
}

PValueVector::PValueVector(std::vector<double> values) : values_(std::move(values)) {
  for (double p : values_) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p-value outside [0,1]");
  }
}

std::vector<ClassLabel> members_of(LabelSet set) {
  std::vector<ClassLabel> out;
  for (std::size_t t = 0; t < kMaxClasses; ++t) {
    if (set & (LabelSet{1} << t)) out.push_back(ClassLabel::from_index(t));
  }
  return out;
}

std::size_t PredictionRegion::count() const noexcept {
  return static_cast<std::size_t>(std::popcount(members_));
}

LabelSet region_mask(std::span<const double> pvals, double alpha) {
  LabelSet m = 0;
  for (std::size_t t = 0; t < pvals.size(); ++t) {
    if (pvals[t] > alpha) m |= LabelSet{1} << t;
  }
  return m;
}

PredictionRegion region_from_pvalues(const PValueVector& pvals, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0,1)");
  return {alpha, pvals.size(), region_mask(pvals.values(), alpha)};
}

}  // namespace pvclass
