#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "pvclass/errors.hpp"
#include "pvclass/evaluation.hpp"

using namespace pvclass;

namespace {

CrossValMatrix matrix(std::size_t classes, std::vector<int> labels, std::vector<double> values) {
  std::vector<ClassLabel> y;
  for (int v : labels) y.emplace_back(v);
  return CrossValMatrix(classes, y, std::move(values));
}

MethodConfig method(MethodKind kind, PermutationMode mode = PermutationMode::valid_shortcut, std::size_t k = 5) {
  MethodConfig m;
  m.kind = kind;
  m.mode = mode;
  m.k = k;
  return m;
}

}  // namespace

TEST(CrossVal, ShapeAndGrid) {
  const auto d = pvtest::random_data(30, 2, 3, 2);
  const auto cv = crossval_pvalues(d, method(MethodKind::plugin));
  EXPECT_EQ(cv.rows(), 30u);
  EXPECT_EQ(cv.num_classes(), 3u);
  for (std::size_t i = 0; i < cv.rows(); ++i) {
    for (std::size_t t = 0; t < 3; ++t) {
      const auto theta = ClassLabel::from_index(t);
      const double n1 = static_cast<double>(cv.loo_group_size(i, theta) + 1);
      const double j = cv.at(i, theta) * n1;
      EXPECT_NEAR(j, std::round(j), 1e-9);
      EXPECT_GE(cv.at(i, theta), 1.0 / n1 - 1e-15);
    }
  }
}

TEST(CrossVal, MatchesScratchRefitsForEveryMethod) {
  const auto d2 = pvtest::random_data(24, 2, 2, 31);
  const auto d3 = pvtest::random_data(24, 2, 3, 32);
  for (auto mode : {PermutationMode::exact_swap, PermutationMode::naive, PermutationMode::valid_shortcut}) {
    for (auto kind : {MethodKind::plugin, MethodKind::knn, MethodKind::logistic}) {
      const auto& d = kind == MethodKind::logistic ? d2 : d3;
      const auto m = method(kind, mode);
      const auto fast = crossval_pvalues(d, m, 3);
      const auto slow = crossval_pvalues_reference(d, m);
      EXPECT_EQ(fast.values(), slow.values()) << to_string(kind) << " " << to_string(mode);
    }
  }
  const auto t = method(MethodKind::typicality);
  const auto a = crossval_pvalues(d3, t);
  const auto b = crossval_pvalues_reference(d3, t);
  for (std::size_t i = 0; i < a.values().size(); ++i) EXPECT_NEAR(a.values()[i], b.values()[i], 1e-9);
}

TEST(CrossVal, KnnShortcutHandlesTies) {
  for (int rep = 0; rep < 6; ++rep) {
    const auto d = pvtest::lattice_data(40, 2, 3, 300 + rep);
    for (auto scaling : {FeatureScaling::none, FeatureScaling::per_feature_sd}) {
      auto m = method(MethodKind::knn, PermutationMode::valid_shortcut, 1 + rep * 2);
      m.scaling = scaling;
      EXPECT_EQ(crossval_pvalues(d, m).values(), crossval_pvalues_reference(d, m).values());
    }
  }
}

TEST(CrossVal, SmallestSizesAndSingletonClass) {
  const auto d = validate_training_set({{0, 0}, {1, 1}, {3, 0}, {4, 2}}, std::vector<int>{1, 1, 2, 2});
  const auto m = method(MethodKind::knn, PermutationMode::valid_shortcut, 2);
  const auto cv = crossval_pvalues(d, m);
  EXPECT_EQ(cv.values(), crossval_pvalues_reference(d, m).values());
  const auto single = validate_training_set({{0.0}, {1.0}, {3.0}}, std::vector<int>{1, 1, 2});
  EXPECT_THROW(crossval_pvalues(single, m), StructuralError);
}

TEST(CrossVal, DuplicatePointsGiveIdenticalRows) {
  auto x = std::vector<FeatureVector>{{0, 0}, {0, 0}, {1, 2}, {2, 1}, {3, 3}, {4, 2}, {5, 5}, {3, 1}};
  const auto d = validate_training_set(x, std::vector<int>{1, 1, 1, 1, 2, 2, 2, 2});
  const auto cv = crossval_pvalues(d, method(MethodKind::knn, PermutationMode::valid_shortcut, 3));
  EXPECT_EQ(cv.at(0, ClassLabel(1)), cv.at(1, ClassLabel(1)));
  EXPECT_EQ(cv.at(0, ClassLabel(2)), cv.at(1, ClassLabel(2)));
}

TEST(Inclusion, HandCount) {
  const auto cv = matrix(2, {1, 1, 1, 2}, {0.2, 0.5, 0.04, 0.5, 0.6, 0.5, 0.5, 0.5});
  EXPECT_NEAR(empirical_inclusion(cv, 0.05, ClassLabel(1), ClassLabel(1)), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(empirical_inclusion(cv, 0.0, ClassLabel(1), ClassLabel(1)), 1.0);
  EXPECT_EQ(empirical_inclusion(cv, 0.05, ClassLabel(2), ClassLabel(2)), 1.0);
}

TEST(Patterns, PartitionAndInclusionIdentity) {
  const auto d = pvtest::random_data(45, 2, 3, 4);
  const auto cv = crossval_pvalues(d, method(MethodKind::plugin));
  for (double alpha : {0.05, 0.1, 0.3}) {
    const auto table = pattern_table(cv, alpha);
    for (std::size_t b = 0; b < 3; ++b) {
      const auto lb = ClassLabel::from_index(b);
      double sum = 0.0;
      for (LabelSet s = 0; s < 8; ++s) sum += empirical_pattern(cv, alpha, lb, s);
      EXPECT_NEAR(sum, 1.0, 1e-12);
      for (std::size_t t = 0; t < 3; ++t) {
        const auto theta = ClassLabel::from_index(t);
        double incl = 0.0;
        for (LabelSet s = 0; s < 8; ++s) {
          if (s & label_bit(theta)) incl += empirical_pattern(cv, alpha, lb, s);
        }
        EXPECT_NEAR(incl, empirical_inclusion(cv, alpha, lb, theta), 1e-12);
        EXPECT_NEAR(table.inclusion_at(lb, theta), empirical_inclusion(cv, alpha, lb, theta), 1e-12);
      }
      double table_sum = 0.0;
      for (std::size_t s = 0; s < table.patterns.size(); ++s) {
        table_sum += table.pattern_at(lb, s);
        EXPECT_NEAR(table.pattern_at(lb, s), empirical_pattern(cv, alpha, lb, table.patterns[s]), 1e-12);
      }
      EXPECT_NEAR(table_sum, 1.0, 1e-12);
    }
  }
}

TEST(Patterns, RequestedPatternsAppearInOrder) {
  const auto cv = matrix(2, {1, 2}, {0.5, 0.01, 0.01, 0.5});
  const std::vector<LabelSet> requested{0b11};
  const auto table = pattern_table(cv, 0.05, requested);
  EXPECT_EQ(table.patterns, (std::vector<LabelSet>{0b01, 0b10, 0b11}));
  EXPECT_EQ(table.pattern_at(ClassLabel(1), 2), 0.0);
  // member of theta = exactly {theta} + {1,2}
  EXPECT_EQ(table.inclusion_at(ClassLabel(1), ClassLabel(1)),
            table.pattern_at(ClassLabel(1), 0) + table.pattern_at(ClassLabel(1), 2));
}

TEST(Roc, StepFunctionProperties) {
  const auto cv = matrix(2, {1, 1, 1, 1, 2}, {0.1, 1, 0.3, 1, 0.3, 1, 0.7, 1, 1, 1});
  const auto roc = roc_curve(cv, ClassLabel(1), ClassLabel(1));
  EXPECT_EQ(roc.value_at(0.05), 0.0);
  EXPECT_EQ(roc.value_at(0.1), 0.25);
  EXPECT_EQ(roc.value_before(0.1), 0.0);
  EXPECT_EQ(roc.value_at(0.3), 0.75);
  EXPECT_EQ(roc.breakpoints(), (std::vector<double>{0.1, 0.3, 0.7}));
  double prev = 0.0;
  for (double a = 0.0; a < 1.0; a += 0.01) {
    EXPECT_GE(roc.value_at(a), prev);
    EXPECT_NEAR(roc.value_at(a), 1.0 - empirical_inclusion(cv, a, ClassLabel(1), ClassLabel(1)), 1e-15);
    prev = roc.value_at(a);
  }
  const auto flat = roc_curve(cv, ClassLabel(1), ClassLabel(2));
  for (double a = 0.01; a < 1.0; a += 0.01) EXPECT_EQ(flat.value_at(a), 0.0);
}

TEST(Roc, SupDistance) {
  const RocCurve a(std::vector<double>{0.1, 0.5});
  const RocCurve b(std::vector<double>{0.2, 0.5});
  EXPECT_EQ(sup_distance(a, b), 0.5);
  EXPECT_EQ(sup_distance(a, a), 0.0);
  const RocCurve c(std::vector<double>{1.0, 1.0});
  EXPECT_EQ(sup_distance(a, c), 1.0);
}

TEST(Risk, EmpiricalRisk) {
  const auto ones = matrix(3, {1, 2, 3}, std::vector<double>(9, 1.0));
  EXPECT_EQ(empirical_risk(ones, 0.05), 3.0);
  const auto low = matrix(2, {1, 2}, std::vector<double>(4, 0.1));
  EXPECT_EQ(empirical_risk(low, 0.2), 0.0);
  const auto d = pvtest::random_data(30, 2, 3, 4);
  const auto cv = crossval_pvalues(d, method(MethodKind::plugin));
  for (double alpha : {0.05, 0.2}) {
    double sum = 0.0;
    for (std::size_t t = 0; t < 3; ++t) {
      double col = 0.0;
      for (std::size_t i = 0; i < cv.rows(); ++i) col += cv.at(i, ClassLabel::from_index(t)) > alpha ? 1.0 : 0.0;
      sum += col / static_cast<double>(cv.rows());
    }
    EXPECT_NEAR(empirical_risk(cv, alpha), sum, 1e-12);
    EXPECT_GE(empirical_risk(cv, 0.05), empirical_risk(cv, 0.2));
  }
}
