#pragma once

// Special functions and small dense linear algebra.
//
// Everything here is self-contained: the CDFs are built on regularized
// incomplete gamma/beta functions with series / continued-fraction switching.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pvclass {

// ---------------------------------------------------------------------------
// Special functions

/// Standard normal c.d.f. Phi(z); saturates to 0/1 for extreme z.
double std_normal_cdf(double z);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed without cancellation.
double regularized_gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b), x in [0,1].
double regularized_beta(double a, double b, double x);

/// Chi-square c.d.f. with q degrees of freedom. Throws InvalidArgument for x < 0.
double chisq_cdf(double x, int q);
/// Chi-square upper tail 1 - F_q(x).
double chisq_sf(double x, int q);

/// F-distribution c.d.f. with (d1, d2) degrees of freedom. Throws InvalidArgument for x < 0.
double f_cdf(double x, int d1, int d2);
/// F-distribution upper tail.
double f_sf(double x, int d1, int d2);

/// log(sum(exp(v))) with max shift; -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> v);

// ---------------------------------------------------------------------------
// Dense matrices

/// Row-major dense matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  const std::vector<double>& data() const noexcept { return data_; }

  Matrix transposed() const;
  Matrix& operator*=(double s);
  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);

  /// this += s * u v^T
  void add_outer(double s, std::span<const double> u, std::span<const double> v);

  double max_abs_diag() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> v);

/// max |a_ij - b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Lower-triangular Cholesky factor L with L L^T = m.
///
/// Requires symmetry within 1e-12 relative (InvalidArgument otherwise) and
/// every pivot above 1e-12 times the largest diagonal entry (SingularMatrixError
/// carrying the pivot index otherwise).
Matrix cholesky(const Matrix& m);

/// In-place rank-one modification of a Cholesky factor: on return
/// lower * lower^T equals the old product + sign * v v^T, sign = +1 or -1.
/// Throws SingularMatrixError if a downdate loses positive definiteness.
void cholesky_rank_one(Matrix& lower, std::span<const double> v, int sign);

/// Solves L y = b for lower-triangular L.
std::vector<double> forward_solve(const Matrix& lower, std::span<const double> b);
/// Solves L^T y = b for lower-triangular L.
std::vector<double> backward_solve_transposed(const Matrix& lower, std::span<const double> b);

/// Symmetric positive-definite matrix with its Cholesky factor cached.
class SpdMatrix {
 public:
  SpdMatrix() = default;
  explicit SpdMatrix(Matrix m);

  /// Assembles from a matrix and a factor already known to match it (no checks).
  static SpdMatrix from_parts(Matrix m, Matrix lower);

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const Matrix& matrix() const noexcept { return matrix_; }
  const Matrix& factor() const noexcept { return lower_; }

  /// Sigma^{-1} v
  std::vector<double> solve(std::span<const double> v) const;
  /// log det Sigma
  double log_det() const;

 private:
  Matrix matrix_;
  Matrix lower_;
};

/// (x - mu)^T Sigma^{-1} (x - mu), via a triangular solve against the cached factor.
double mahalanobis_sq(std::span<const double> x, std::span<const double> mu, const SpdMatrix& sigma);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace pvclass
