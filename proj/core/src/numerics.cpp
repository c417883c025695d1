#include "pvclass/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pvclass/errors.hpp"

namespace pvclass {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 100000;

// Series for P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x), valid for x >= a + 1 (modified Lentz).
double gamma_q_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) throw InvalidArgument("regularized_gamma_p: a must be positive");
  if (x < 0.0) throw InvalidArgument("regularized_gamma_p: x must be non-negative");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw InvalidArgument("regularized_gamma_q: a must be positive");
  if (x < 0.0) throw InvalidArgument("regularized_gamma_q: x must be non-negative");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double regularized_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("regularized_beta: a, b must be positive");
  if (x < 0.0 || x > 1.0) throw InvalidArgument("regularized_beta: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
  return 1.0 - front * beta_fraction(b, a, 1.0 - x) / b;
}

double chisq_cdf(double x, int q) {
  if (q < 1) throw InvalidArgument("chisq_cdf: degrees of freedom must be positive");
  if (x < 0.0) throw InvalidArgument("chisq_cdf: x must be non-negative");
  return regularized_gamma_p(0.5 * q, 0.5 * x);
}

double chisq_sf(double x, int q) {
  if (q < 1) throw InvalidArgument("chisq_sf: degrees of freedom must be positive");
  if (x < 0.0) throw InvalidArgument("chisq_sf: x must be non-negative");
  return regularized_gamma_q(0.5 * q, 0.5 * x);
}

double f_cdf(double x, int d1, int d2) {
  if (d1 < 1 || d2 < 1) throw InvalidArgument("f_cdf: degrees of freedom must be positive");
  if (x < 0.0) throw InvalidArgument("f_cdf: x must be non-negative");
  if (std::isinf(x)) return 1.0;
  const double t = d1 * x;
  return regularized_beta(0.5 * d1, 0.5 * d2, t / (t + d2));
}

double f_sf(double x, int d1, int d2) {
  if (d1 < 1 || d2 < 1) throw InvalidArgument("f_sf: degrees of freedom must be positive");
  if (x < 0.0) throw InvalidArgument("f_sf: x must be non-negative");
  if (std::isinf(x)) return 0.0;
  // I_{d2/(d2+d1 x)}(d2/2, d1/2) avoids cancellation in the upper tail.
  const double t = d1 * x;
  return regularized_beta(0.5 * d2, 0.5 * d1, d2 / (t + d2));
}

double log_sum_exp(std::span<const double> v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double e : v) m = std::max(m, e);
  if (std::isinf(m)) return m;
  double s = 0.0;
  for (double e : v) s += std::exp(e - m);
  return m + std::log(s);
}

// ---------------------------------------------------------------------------

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidArgument("Matrix: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidArgument("Matrix: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

void Matrix::add_outer(double s, std::span<const double> u, std::span<const double> v) {
  for (std::size_t i = 0; i < rows_; ++i) {
    const double su = s * u[i];
    double* r = data_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) r[j] += su * v[j];
  }
}

double Matrix::max_abs_diag() const {
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) m = std::max(m, std::abs((*this)(i, i)));
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("Matrix product: shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> v) {
  if (a.cols() != v.size()) throw InvalidArgument("Matrix-vector product: shape mismatch");
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), v);
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Matrix cholesky(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidArgument("cholesky: matrix not square");
  const double scale = m.max_abs_diag();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double a = m(i, j), b = m(j, i);
      if (std::abs(a - b) > 1e-12 * std::max({std::abs(a), std::abs(b), scale})) {
        throw InvalidArgument("cholesky: matrix not symmetric");
      }
    }
  const double tol = 1e-12 * scale;
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > tol)) {
      throw SingularMatrixError("singular matrix: non-positive pivot at column " + std::to_string(j), j);
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

void cholesky_rank_one(Matrix& lower, std::span<const double> v, int sign) {
  const std::size_t n = lower.rows();
  if (v.size() != n) throw InvalidArgument("cholesky_rank_one: dimension mismatch");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k <= i; ++k) s += lower(i, k) * lower(i, k);
    scale = std::max(scale, s);
  }
  const double tol = 1e-12 * scale;
  std::vector<double> w(v.begin(), v.end());
  const double sg = sign >= 0 ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lkk = lower(k, k);
    const double r2 = lkk * lkk + sg * w[k] * w[k];
    if (!(r2 > tol)) {
      throw SingularMatrixError("rank-one downdate lost positive definiteness at column " + std::to_string(k), k);
    }
    const double r = std::sqrt(r2);
    const double c = r / lkk;
    const double s = w[k] / lkk;
    lower(k, k) = r;
    for (std::size_t i = k + 1; i < n; ++i) {
      lower(i, k) = (lower(i, k) + sg * s * w[i]) / c;
      w[i] = c * w[i] - s * lower(i, k);
    }
  }
}

std::vector<double> forward_solve(const Matrix& lower, std::span<const double> b) {
  const std::size_t n = lower.rows();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower(i, k) * y[k];
    y[i] = s / lower(i, i);
  }
  return y;
}

std::vector<double> backward_solve_transposed(const Matrix& lower, std::span<const double> b) {
  const std::size_t n = lower.rows();
  std::vector<double> y(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= lower(k, ii) * y[k];
    y[ii] = s / lower(ii, ii);
  }
  return y;
}

SpdMatrix::SpdMatrix(Matrix m) : matrix_(std::move(m)), lower_(cholesky(matrix_)) {}

SpdMatrix SpdMatrix::from_parts(Matrix m, Matrix lower) {
  SpdMatrix s;
  s.matrix_ = std::move(m);
  s.lower_ = std::move(lower);
  return s;
}

std::vector<double> SpdMatrix::solve(std::span<const double> v) const {
  if (v.size() != dim()) throw InvalidArgument("SpdMatrix::solve: dimension mismatch");
  return backward_solve_transposed(lower_, forward_solve(lower_, v));
}

double SpdMatrix::log_det() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += std::log(lower_(i, i));
  return 2.0 * s;
}

double mahalanobis_sq(std::span<const double> x, std::span<const double> mu, const SpdMatrix& sigma) {
  const std::size_t q = sigma.dim();
  if (x.size() != q || mu.size() != q) throw InvalidArgument("mahalanobis_sq: dimension mismatch");
  std::vector<double> diff(q);
  for (std::size_t i = 0; i < q; ++i) diff[i] = x[i] - mu[i];
  const std::vector<double> y = forward_solve(sigma.factor(), diff);
  return dot(y, y);
}

}  // namespace pvclass
