#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "pvclass/errors.hpp"
#include "pvclass/statistic.hpp"

using namespace pvclass;

namespace {

std::shared_ptr<const TrainingSet> share(TrainingSet d) { return std::make_shared<const TrainingSet>(std::move(d)); }

StatisticConfig config_for(StatisticKind kind, FeatureScaling scaling = FeatureScaling::none, std::size_t k = 5) {
  StatisticConfig c;
  c.kind = kind;
  c.scaling = scaling;
  c.k = k;
  return c;
}

std::vector<StatisticConfig> all_configs(std::size_t classes) {
  std::vector<StatisticConfig> out{config_for(StatisticKind::gaussian_plugin),
                                   config_for(StatisticKind::knn),
                                   config_for(StatisticKind::knn, FeatureScaling::per_feature_sd)};
  StatisticConfig weighted = config_for(StatisticKind::knn);
  weighted.prior_weights.assign(classes, 1.0 / static_cast<double>(classes));
  out.push_back(weighted);
  if (classes == 2) out.push_back(config_for(StatisticKind::logistic));
  return out;
}

}  // namespace

TEST(Statistic, SymmetricInGroupRowsExactly) {
  for (std::size_t classes : {2u, 3u}) {
    const auto d = pvtest::random_data(36, 2, classes, 40 + classes);
    for (const auto& cfg : all_configs(classes)) {
      for (std::size_t t = 0; t < classes; ++t) {
        const auto theta = ClassLabel::from_index(t);
        const auto a = fit_statistic(cfg, share(d));
        const auto b = fit_statistic(cfg, share(pvtest::rotate_group(d, theta)));
        Rng rng(5);
        for (int rep = 0; rep < 20; ++rep) {
          const FeatureVector x{2 * rng.normal(), 2 * rng.normal()};
          for (std::size_t s = 0; s < classes; ++s) {
            EXPECT_EQ(a->evaluate(ClassLabel::from_index(s), x), b->evaluate(ClassLabel::from_index(s), x))
                << to_string(cfg.kind);
          }
        }
      }
    }
  }
}

TEST(Statistic, LogisticAntisymmetry) {
  const auto d = pvtest::random_data(40, 2, 2, 2);
  const auto s = fit_statistic(config_for(StatisticKind::logistic), share(d));
  Rng rng(1);
  for (int rep = 0; rep < 30; ++rep) {
    const FeatureVector x{rng.normal(), rng.normal()};
    EXPECT_EQ(s->evaluate(ClassLabel(1), x), -s->evaluate(ClassLabel(2), x));
  }
}

TEST(Statistic, LogisticNeedsTwoClasses) {
  EXPECT_THROW(fit_statistic(config_for(StatisticKind::logistic), share(pvtest::random_data(30, 2, 3, 1))),
               InvalidArgument);
}

TEST(Statistic, KnnDefaultKResolves) {
  auto cfg = config_for(StatisticKind::knn, FeatureScaling::none, 0);
  const auto s = fit_statistic(cfg, share(pvtest::random_data(200, 2, 2, 1)));
  EXPECT_EQ(static_cast<const KnnStatistic&>(*s).k(), 35u);
}

TEST(Statistic, KnnPosteriorsSumToOne) {
  const auto d = pvtest::random_data(45, 2, 3, 8);
  const auto s = fit_statistic(config_for(StatisticKind::knn), share(d));
  Rng rng(2);
  for (int rep = 0; rep < 30; ++rep) {
    const FeatureVector x{3 * rng.normal(), rng.normal()};
    double sum = 0.0;
    for (int t = 1; t <= 3; ++t) sum += -s->evaluate(ClassLabel(t), x);
    EXPECT_NEAR(sum, 1.0, 1e-14);
  }
}

TEST(Statistic, GaussianShortcutsMatchGenericPaths) {
  const auto d = pvtest::random_data(30, 3, 3, 17);
  const auto s = fit_statistic(config_for(StatisticKind::gaussian_plugin), share(d));
  Rng rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const FeatureVector x{rng.normal(), rng.normal(), rng.normal()};
    for (int t = 1; t <= 3; ++t) {
      const ClassLabel theta(t);
      const auto fast = s->swapped_scores(theta, x);
      const auto slow = s->FittedStatistic::swapped_scores(theta, x);
      ASSERT_EQ(fast.size(), slow.size());
      for (std::size_t i = 0; i < fast.size(); ++i) EXPECT_NEAR(fast[i], slow[i], 1e-9 * std::max(1.0, std::abs(slow[i])));
      const auto fa = s->augmented_scores(theta, x);
      const auto sa = s->FittedStatistic::augmented_scores(theta, x);
      ASSERT_EQ(fa.size(), sa.size());
      for (std::size_t i = 0; i < fa.size(); ++i) EXPECT_NEAR(fa[i], sa[i], 1e-9 * std::max(1.0, std::abs(sa[i])));
    }
  }
}

TEST(Statistic, GaussianEditsMatchScratchFits) {
  const auto d = pvtest::random_data(30, 2, 3, 18);
  const auto s = fit_statistic(config_for(StatisticKind::gaussian_plugin), share(d));
  const FeatureVector x{0.5, -0.5};
  const auto check = [&](const FittedStatistic& edited, const TrainingSet& data) {
    const GaussianPluginStatistic scratch(share(data));
    EXPECT_EQ(edited.data().features(), data.features());
    for (int t = 1; t <= 3; ++t) {
      const double a = edited.evaluate(ClassLabel(t), x);
      const double b = scratch.evaluate(ClassLabel(t), x);
      EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(b)));
    }
  };
  check(*s->removed(4), d.without(4));
  check(*s->replaced(4, x), d.with_replaced(4, x));
  check(*s->augmented(x, ClassLabel(2)), d.with_added(x, ClassLabel(2)));
}

TEST(Statistic, KnnShortcutsMatchGenericPathsExactly) {
  for (auto scaling : {FeatureScaling::none, FeatureScaling::per_feature_sd}) {
    for (int rep = 0; rep < 12; ++rep) {
      const auto d = pvtest::lattice_data(40, 2, 3, 900 + rep);
      auto cfg = config_for(StatisticKind::knn, scaling, 1 + rep % 9);
      if (rep % 3 == 0) cfg.prior_weights = {0.5, 0.3, 0.2};
      const auto s = fit_statistic(cfg, share(d));
      Rng rng(rep);
      const FeatureVector x{static_cast<double>(rng.next() % 4), static_cast<double>(rng.next() % 4)};
      for (int t = 1; t <= 3; ++t) {
        const ClassLabel theta(t);
        EXPECT_EQ(s->swapped_scores(theta, x), s->FittedStatistic::swapped_scores(theta, x));
        EXPECT_EQ(s->augmented_scores(theta, x), s->FittedStatistic::augmented_scores(theta, x));
      }
    }
  }
}

TEST(Statistic, KnnCachedRowsMatchScratchEvaluation) {
  const auto d = pvtest::lattice_data(30, 2, 2, 4);
  const auto s = fit_statistic(config_for(StatisticKind::knn), share(d));
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (int t = 1; t <= 2; ++t) EXPECT_EQ(s->evaluate_row(ClassLabel(t), i), s->evaluate(ClassLabel(t), d.row(i)));
  }
}

TEST(Statistic, DegenerateSwapReportsIndex) {
  // one point off the line in class 1: swapping it onto the line is singular
  const auto d = validate_training_set({{0, 0}, {1, 0}, {2, 0}, {0, 3}, {1, 0}, {3, 0}, {4, 0}},
                                       std::vector<int>{1, 1, 1, 1, 2, 2, 2});
  const auto s = fit_statistic(config_for(StatisticKind::gaussian_plugin), share(d));
  try {
    s->swapped_scores(ClassLabel(1), std::vector<double>{5.0, 0.0});
    FAIL();
  } catch (const DegenerateFitError& e) {
    ASSERT_TRUE(e.edit_index().has_value());
    EXPECT_EQ(*e.edit_index(), 3u);
  }
}
