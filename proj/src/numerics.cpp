#include "ddflow/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ddflow/errors.hpp"

namespace ddflow {

namespace {

constexpr double kPivotRelTol = 1e-12;
constexpr int kJacobiMaxSweeps = 50;
constexpr double kJacobiOffTol = 1e-10;

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + ": non-finite entry");
  }
}

}  // namespace

// ---------------------------------------------------------------- Vector

Vector::Vector(std::size_t dim, double fill) : data_(dim, fill) { require_finite(data_, "Vector"); }

Vector::Vector(std::initializer_list<double> values) : data_(values) { require_finite(data_, "Vector"); }

Vector::Vector(std::vector<double> values) : data_(std::move(values)) { require_finite(data_, "Vector"); }

double Vector::norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double Vector::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool Vector::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Vector& Vector::operator+=(const Vector& other) {
  if (other.size() != size()) throw DimensionMismatch("Vector +=: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  if (other.size() != size()) throw DimensionMismatch("Vector -=: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Vector& Vector::operator*=(double scale) {
  for (double& v : data_) v *= scale;
  return *this;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator-(Vector v) { return v *= -1.0; }
Vector operator*(Vector v, double scale) { return v *= scale; }
Vector operator*(double scale, Vector v) { return v *= scale; }

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  require_finite(data_, "Matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_, "Matrix");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vector& diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::column(const Vector& v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Matrix Matrix::row(const Vector& v) {
  Matrix m(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m(0, i) = v[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("Matrix::block out of range");
  Matrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_) throw DimensionMismatch("Matrix::set_block out of range");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) (*this)(r0 + r, c0 + c) = m(r, c);
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_) throw DimensionMismatch("Matrix::add_block out of range");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) (*this)(r0 + r, c0 + c) += m(r, c);
}

Vector Matrix::row_vector(std::size_t r) const {
  Vector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
  return v;
}

Vector Matrix::column_vector(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double Matrix::one_norm() const {
  double best = 0.0;
  for (std::size_t c = 0; c < cols_; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) s += std::abs((*this)(r, c));
    best = std::max(best, s);
  }
  return best;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw DimensionMismatch("Matrix +=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (other.rows_ != rows_ || other.cols_ != cols_) throw DimensionMismatch("Matrix -=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double scale) {
  for (double& v : data_) v *= scale;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Matrix m, double scale) { return m *= scale; }
Matrix operator*(double scale, Matrix m) { return m *= scale; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("Matrix *: inner dimension mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double ark = a(r, k);
      if (ark == 0.0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("Matrix * Vector: dimension mismatch");
  Vector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c) s += a(r, c) * x[c];
    out[r] = s;
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

void require_square(const Matrix& m, const char* what) {
  if (!m.is_square() || m.rows() == 0) throw DimensionMismatch(std::string(what) + ": matrix must be square");
}

// ---------------------------------------------------------------- solves

Matrix solve_linear(const Matrix& a, const Matrix& b) {
  require_square(a, "solve_linear");
  if (b.rows() != a.rows()) throw DimensionMismatch("solve_linear: right-hand side has wrong row count");
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  Matrix lu = a;
  Matrix x = b;

  std::vector<double> col_scale(n, 0.0);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) col_scale[c] = std::max(col_scale[c], std::abs(a(r, c)));

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(lu(r, k)) > std::abs(lu(piv, k))) piv = r;
    if (col_scale[k] == 0.0 || std::abs(lu(piv, k)) < kPivotRelTol * col_scale[k])
      throw SingularMatrix("solve_linear: pivot below tolerance in column " + std::to_string(k));
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
      for (std::size_t c = 0; c < m; ++c) std::swap(x(k, c), x(piv, c));
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double f = lu(r, k) / lu(k, k);
      if (f == 0.0) continue;
      lu(r, k) = 0.0;
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= f * lu(k, c);
      for (std::size_t c = 0; c < m; ++c) x(r, c) -= f * x(k, c);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t c = 0; c < m; ++c) {
      double s = x(kk, c);
      for (std::size_t j = kk + 1; j < n; ++j) s -= lu(kk, j) * x(j, c);
      x(kk, c) = s / lu(kk, kk);
    }
  }
  return x;
}

Vector solve_linear(const Matrix& a, const Vector& b) {
  return solve_linear(a, Matrix::column(b)).column_vector(0);
}

// ---------------------------------------------------------------- expm

Matrix expm(const Matrix& a) {
  require_square(a, "expm");
  if (!a.all_finite()) throw InvalidArgument("expm: non-finite entry");
  const std::size_t n = a.rows();

  const double norm = a.one_norm();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix scaled = a * std::ldexp(1.0, -squarings);

  // Taylor series; ||scaled||_1 <= 0.5 so 30 terms leave a remainder far
  // below double precision.
  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled;
    term *= 1.0 / k;
    sum += term;
    if (term.max_abs() <= std::numeric_limits<double>::epsilon() * 1e-3 * sum.max_abs()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

// ---------------------------------------------------------------- Lyapunov

Matrix lyapunov_solve(const Matrix& a, const Matrix& q) {
  require_square(a, "lyapunov_solve");
  if (q.rows() != a.rows() || q.cols() != a.cols()) throw DimensionMismatch("lyapunov_solve: Q shape mismatch");
  const std::size_t n = a.rows();
  const Matrix at = a.transpose();
  const Matrix eye = Matrix::identity(n);
  // Column-major vec: vec(A^T P) = (I (x) A^T) vec P, vec(P A) = (A^T (x) I) vec P.
  const Matrix system = kron(eye, at) + kron(at, eye);

  Vector rhs(n * n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) rhs[c * n + r] = -q(r, c);

  Vector vec_p = solve_linear(system, rhs);
  // One step of iterative refinement tightens the residual for the larger
  // companion matrices.
  const Vector residual = rhs - system * vec_p;
  vec_p += solve_linear(system, residual);

  Matrix p(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) p(r, c) = vec_p[c * n + r];
  Matrix sym(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) sym(r, c) = 0.5 * (p(r, c) + p(c, r));
  return sym;
}

// ---------------------------------------------------------------- Jacobi

EigenExtremes eig_extremes_symmetric(const Matrix& p) {
  require_square(p, "eig_extremes_symmetric");
  const std::size_t n = p.rows();
  Matrix a = p;
  const double tol = kJacobiOffTol * std::max(1.0, p.frobenius_norm());

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (r != c) s += a(r, c) * a(r, c);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > tol) {
    if (sweep++ >= kJacobiMaxSweeps) throw NoConvergence("eig_extremes_symmetric: Jacobi sweep budget exhausted");
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double aij = a(i, j);
        if (aij == 0.0) continue;
        const double theta = (a(j, j) - a(i, i)) / (2.0 * aij);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double aki = a(k, i);
          const double akj = a(k, j);
          a(k, i) = c * aki - s * akj;
          a(k, j) = s * aki + c * akj;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double aik = a(i, k);
          const double ajk = a(j, k);
          a(i, k) = c * aik - s * ajk;
          a(j, k) = s * aik + c * ajk;
        }
      }
    }
  }
  EigenExtremes out{a(0, 0), a(0, 0)};
  for (std::size_t i = 1; i < n; ++i) {
    out.min = std::min(out.min, a(i, i));
    out.max = std::max(out.max, a(i, i));
  }
  return out;
}

// ---------------------------------------------------------------- misc

std::vector<double> characteristic_polynomial(const Matrix& a) {
  require_square(a, "characteristic_polynomial");
  const std::size_t n = a.rows();
  std::vector<double> coeffs(n + 1, 0.0);
  coeffs[n] = 1.0;
  Matrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += coeffs[n - k + 1];
    const Matrix am = a * m;
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    coeffs[n - k] = -trace / static_cast<double>(k);
  }
  return coeffs;
}

ComplexMatrix transfer_at(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d, Complex s) {
  using Wide = std::complex<long double>;
  require_square(a, "transfer_at");
  const std::size_t n = a.rows();
  const std::size_t p = b.cols();
  const std::size_t q = c.rows();
  if (b.rows() != n || c.cols() != n || d.rows() != q || d.cols() != p)
    throw DimensionMismatch("transfer_at: inconsistent realization shapes");

  std::vector<Wide> m(n * n);
  std::vector<Wide> x(n * p);
  std::vector<long double> col_scale(n, 0.0L);
  const Wide sw(s.real(), s.imag());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      m[r * n + k] = (r == k ? sw : Wide(0.0L)) - Wide(a(r, k));
      col_scale[k] = std::max(col_scale[k], std::abs(m[r * n + k]));
    }
    for (std::size_t k = 0; k < p; ++k) x[r * p + k] = b(r, k);
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(m[r * n + k]) > std::abs(m[piv * n + k])) piv = r;
    if (col_scale[k] == 0.0L || std::abs(m[piv * n + k]) < kPivotRelTol * col_scale[k])
      throw SingularMatrix("transfer_at: sI - A is numerically singular");
    if (piv != k) {
      for (std::size_t cc = 0; cc < n; ++cc) std::swap(m[k * n + cc], m[piv * n + cc]);
      for (std::size_t cc = 0; cc < p; ++cc) std::swap(x[k * p + cc], x[piv * p + cc]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const Wide f = m[r * n + k] / m[k * n + k];
      for (std::size_t cc = k; cc < n; ++cc) m[r * n + cc] -= f * m[k * n + cc];
      for (std::size_t cc = 0; cc < p; ++cc) x[r * p + cc] -= f * x[k * p + cc];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t cc = 0; cc < p; ++cc) {
      Wide acc = x[k * p + cc];
      for (std::size_t j = k + 1; j < n; ++j) acc -= m[k * n + j] * x[j * p + cc];
      x[k * p + cc] = acc / m[k * n + k];
    }
  }
  ComplexMatrix out(q, p);
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t cc = 0; cc < p; ++cc) {
      Wide acc = d(r, cc);
      for (std::size_t j = 0; j < n; ++j) acc += static_cast<long double>(c(r, j)) * x[j * p + cc];
      out(r, cc) = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    }
  return out;
}

}  // namespace ddflow
