#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "pvclass/rng.hpp"

using namespace pvclass;

TEST(Rng, Reproducible) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.next(), b.next());
    EXPECT_EQ(a.normal(), b.normal());
  }
}

TEST(Rng, UniformRange) {
  Rng r(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double v = r.uniform_open();
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(Rng, NormalMoments) {
  Rng r(2);
  const int n = 200000;
  double s = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
}

TEST(Rng, CategoricalFrequencies) {
  Rng r(5);
  const std::vector<double> w{1.0, 2.0, 7.0};
  std::vector<int> c(3, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++c[r.categorical(w)];
  for (int t = 0; t < 3; ++t) {
    const double p = w[t] / 10.0;
    EXPECT_NEAR(c[t] / double(n), p, 4.0 * std::sqrt(p * (1 - p) / n));
  }
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, {0}), derive_seed(1, {1}));
  EXPECT_NE(derive_seed(1, {0, 1}), derive_seed(1, {1, 0}));
  EXPECT_EQ(derive_seed(9, {3, 4}), derive_seed(9, {3, 4}));
}

TEST(ParallelFor, CoversEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 7);
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, RethrowsLowestIndex) {
  try {
    parallel_for(100, [](std::size_t i) {
      if (i == 13 || i == 77) throw std::runtime_error(std::to_string(i));
    }, 4);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "13");
  }
}
