#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "pvclass/errors.hpp"
#include "pvclass/numerics.hpp"
#include "pvclass/rng.hpp"

using namespace pvclass;

// Reference values computed with mpmath at 30 digits.

TEST(NormalCdf, MatchesHighPrecisionValues) {
  EXPECT_EQ(std_normal_cdf(0.0), 0.5);
  EXPECT_NEAR(std_normal_cdf(-1.0), 0.15865525393145705141, 1e-15);
  EXPECT_NEAR(std_normal_cdf(-2.0), 0.0227501319481792072, 1e-15);
  EXPECT_NEAR(std_normal_cdf(1.959964), 0.97500000090355759801, 1e-14);
  EXPECT_NEAR(std_normal_cdf(1.959964), 0.975, 1e-6);
  EXPECT_NEAR(std_normal_cdf(5.0), 0.99999971334842812081, 1e-15);
  EXPECT_NEAR(std_normal_cdf(0.3), 0.61791142218895263307, 1e-15);
  EXPECT_NEAR(std_normal_cdf(-8.0) / 6.2209605742717841235e-16, 1.0, 1e-12);
}

TEST(NormalCdf, SaturatesAndIsMonotone) {
  EXPECT_EQ(std_normal_cdf(-40.0), 0.0);
  EXPECT_EQ(std_normal_cdf(40.0), 1.0);
  double prev = 0.0;
  for (double z = -10.0; z <= 10.0; z += 0.01) {
    const double v = std_normal_cdf(z);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(ChiSquare, MatchesHighPrecisionValues) {
  EXPECT_EQ(chisq_cdf(0.0, 3), 0.0);
  EXPECT_NEAR(chisq_cdf(1.0, 1), 0.68268949213708589717, 1e-12);
  EXPECT_NEAR(chisq_cdf(2.5, 3), 0.52470891665697940984, 1e-12);
  EXPECT_NEAR(chisq_cdf(10.0, 5), 0.92476475385348782128, 1e-12);
  EXPECT_NEAR(chisq_cdf(3.0, 10), 0.018575936222140674301, 1e-12);
  EXPECT_NEAR(chisq_cdf(60.0, 50), 0.84275797276160839646, 1e-12);
  EXPECT_NEAR(chisq_cdf(0.01, 4), 1.2458411354275081191e-5, 1e-15);
  EXPECT_NEAR(chisq_sf(200.0, 7) / 1.14778122401425982086e-39, 1.0, 1e-10);
}

TEST(ChiSquare, TwoDegreesOfFreedomClosedForm) {
  // F(x) = 1 - exp(-x/2)
  EXPECT_NEAR(chisq_cdf(2.9957, 2), 0.7763895939278777737, 1e-12);
  EXPECT_NEAR(chisq_cdf(5.9915, 2), 0.95, 1e-4);
  EXPECT_NEAR(chisq_sf(5.9915, 2), 0.049999113685555168707, 1e-12);
  for (double x = 0.0; x < 40.0; x += 0.37) EXPECT_NEAR(chisq_cdf(x, 2), -std::expm1(-x / 2.0), 1e-13);
}

TEST(ChiSquare, NegativeArgumentThrows) {
  EXPECT_THROW(chisq_cdf(-1.0, 2), InvalidArgument);
  EXPECT_THROW(chisq_sf(-1.0, 2), InvalidArgument);
}

TEST(FDistribution, MatchesHighPrecisionValues) {
  EXPECT_EQ(f_cdf(0.0, 3, 4), 0.0);
  EXPECT_NEAR(f_cdf(1.0, 2, 2), 0.5, 1e-14);
  EXPECT_NEAR(f_cdf(3.0, 2, 2), 0.75, 1e-14);
  EXPECT_NEAR(f_cdf(1.5, 3, 7), 0.70419108070356229221, 1e-12);
  EXPECT_NEAR(f_cdf(2.0, 5, 20), 0.87749275531815752573, 1e-12);
  EXPECT_NEAR(f_cdf(0.5, 1, 1), 0.39182655203060727017, 1e-12);
  EXPECT_NEAR(f_cdf(4.0, 10, 3), 0.85955159694206354602, 1e-12);
  EXPECT_NEAR(f_cdf(3.0, 2, 296), 0.94869665537282079335, 1e-12);
  EXPECT_NEAR(f_cdf(0.2, 4, 50), 0.062811724714325548208, 1e-12);
  EXPECT_NEAR(f_cdf(12.0, 3, 3), 0.96462887585697961428, 1e-12);
  EXPECT_NEAR(f_sf(12.0, 3, 3), 1.0 - 0.96462887585697961428, 1e-12);
  EXPECT_THROW(f_cdf(-0.1, 2, 2), InvalidArgument);
}

TEST(Cdfs, MonotoneAndInUnitInterval) {
  for (int q : {1, 2, 5, 30}) {
    double prev_c = 0.0;
    double prev_f = 0.0;
    for (double x = 0.0; x < 80.0; x += 0.25) {
      const double c = chisq_cdf(x, q);
      const double f = f_cdf(x / 10.0, q, 7);
      EXPECT_GE(c, prev_c);
      EXPECT_GE(f, prev_f);
      EXPECT_LE(c, 1.0);
      EXPECT_LE(f, 1.0);
      EXPECT_NEAR(c + chisq_sf(x, q), 1.0, 1e-12);
      prev_c = c;
      prev_f = f;
    }
  }
}

TEST(LogSumExp, ShiftsByMax) {
  const std::vector<double> v{1000.0, 1000.0};
  EXPECT_NEAR(log_sum_exp(v), 1000.0 + std::log(2.0), 1e-12);
  EXPECT_EQ(log_sum_exp(std::vector<double>{}), -std::numeric_limits<double>::infinity());
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(log_sum_exp(std::vector<double>{-inf, -inf}), -inf);
}

TEST(Cholesky, HandExamples) {
  const Matrix id = cholesky(Matrix::identity(3));
  EXPECT_EQ(max_abs_diff(id, Matrix::identity(3)), 0.0);
  const Matrix l = cholesky(Matrix{{4, 2}, {2, 5}});
  EXPECT_EQ(max_abs_diff(l, Matrix{{2, 0}, {1, 2}}), 0.0);
}

TEST(Cholesky, SingularThrowsWithPivot) {
  try {
    cholesky(Matrix{{1, 1}, {1, 1}});
    FAIL();
  } catch (const SingularMatrixError& e) {
    EXPECT_EQ(e.pivot(), 1u);
  }
  EXPECT_THROW(cholesky(Matrix{{1, 0.5}, {0.4, 1}}), InvalidArgument);
}

TEST(Cholesky, ReconstructsRandomSpd) {
  Rng rng(3);
  for (std::size_t q = 1; q <= 6; ++q) {
    Matrix a(q, q);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) a(i, j) = rng.normal();
    Matrix m = a * a.transposed();
    for (std::size_t i = 0; i < q; ++i) m(i, i) += 0.5;
    const Matrix l = cholesky(m);
    EXPECT_LT(max_abs_diff(l * l.transposed(), m), 1e-10 * m.max_abs_diag());
  }
}

TEST(Cholesky, RankOneUpdateAndDowndate) {
  Rng rng(4);
  const std::size_t q = 4;
  Matrix a(q, q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) a(i, j) = rng.normal();
  Matrix m = a * a.transposed();
  for (std::size_t i = 0; i < q; ++i) m(i, i) += 1.0;
  std::vector<double> v(q);
  for (double& x : v) x = rng.normal();
  Matrix l = cholesky(m);
  cholesky_rank_one(l, v, +1);
  Matrix up = m;
  up.add_outer(1.0, v, v);
  EXPECT_LT(max_abs_diff(l * l.transposed(), up), 1e-10);
  cholesky_rank_one(l, v, -1);
  EXPECT_LT(max_abs_diff(l * l.transposed(), m), 1e-10);
  Matrix small = Matrix::identity(2);
  EXPECT_THROW(cholesky_rank_one(small, std::vector<double>{2.0, 0.0}, -1), SingularMatrixError);
}

TEST(Mahalanobis, HandExamples) {
  const SpdMatrix id(Matrix::identity(2));
  EXPECT_NEAR(mahalanobis_sq(std::vector<double>{3, 4}, std::vector<double>{0, 0}, id), 25.0, 1e-12);
  EXPECT_EQ(mahalanobis_sq(std::vector<double>{1, 2}, std::vector<double>{1, 2}, id), 0.0);
  const SpdMatrix s(Matrix{{4, 0}, {0, 1}});
  EXPECT_NEAR(mahalanobis_sq(std::vector<double>{3, 1}, std::vector<double>{1, 1}, s), 1.0, 1e-14);
  EXPECT_THROW(mahalanobis_sq(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}, id), InvalidArgument);
}

TEST(Mahalanobis, AffineInvariance) {
  Rng rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t q = 3;
    Matrix b(q, q);
    Matrix a(q, q);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) {
        b(i, j) = rng.normal();
        a(i, j) = rng.normal() + (i == j ? 3.0 : 0.0);
      }
    Matrix sigma = b * b.transposed();
    for (std::size_t i = 0; i < q; ++i) sigma(i, i) += 0.3;
    std::vector<double> x(q);
    std::vector<double> mu(q);
    for (std::size_t i = 0; i < q; ++i) {
      x[i] = rng.normal();
      mu[i] = rng.normal();
    }
    const double base = mahalanobis_sq(x, mu, SpdMatrix(sigma));
    Matrix s2 = a * sigma * a.transposed();
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < i; ++j) s2(i, j) = s2(j, i);
    const double moved = mahalanobis_sq(a * std::span<const double>(x), a * std::span<const double>(mu), SpdMatrix(s2));
    EXPECT_NEAR(moved, base, 1e-8 * std::max(1.0, base));
  }
}

TEST(SpdMatrix, SolveAndLogDet) {
  const SpdMatrix s(Matrix{{4, 2}, {2, 5}});
  const auto y = s.solve(std::vector<double>{2, 1});
  EXPECT_NEAR(4 * y[0] + 2 * y[1], 2.0, 1e-14);
  EXPECT_NEAR(2 * y[0] + 5 * y[1], 1.0, 1e-14);
  EXPECT_NEAR(s.log_det(), std::log(16.0), 1e-14);
}
