#pragma once

// Small dense linear-algebra kernel. Every size handled here is tiny (a few
// dozen rows at most), so all algorithms are plain O(n^3) dense ones.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ddflow {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0);
  Vector(std::initializer_list<double> values);
  explicit Vector(std::vector<double> values);

  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
  [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  [[nodiscard]] std::span<double> span() noexcept { return data_; }
  [[nodiscard]] std::span<const double> span() const noexcept { return data_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return data_; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  [[nodiscard]] double norm() const;
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] bool all_finite() const;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double scale);

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> data_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator-(Vector v);
Vector operator*(Vector v, double scale);
Vector operator*(double scale, Vector v);
double dot(const Vector& a, const Vector& b);

// Row-major dense matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& diag);
  static Matrix column(const Vector& v);
  static Matrix row(const Vector& v);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
  void add_block(std::size_t r0, std::size_t c0, const Matrix& m);
  [[nodiscard]] Vector row_vector(std::size_t r) const;
  [[nodiscard]] Vector column_vector(std::size_t c) const;

  [[nodiscard]] double frobenius_norm() const;
  // Induced 1-norm (max absolute column sum).
  [[nodiscard]] double one_norm() const;
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] bool all_finite() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double scale);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(Matrix m, double scale);
Matrix operator*(double scale, Matrix m);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

Matrix kron(const Matrix& a, const Matrix& b);

// Throws DimensionMismatch unless `m` is square.
void require_square(const Matrix& m, const char* what);

// Gaussian elimination with partial pivoting. Throws SingularMatrix when a
// pivot falls below 1e-12 times the largest initial column magnitude.
Vector solve_linear(const Matrix& a, const Vector& b);
Matrix solve_linear(const Matrix& a, const Matrix& b);

// Matrix exponential by scaling and squaring around a truncated Taylor core.
Matrix expm(const Matrix& a);

// Solves A^T P + P A + Q = 0 through the Kronecker-vectorized n^2 x n^2 system.
// The result is symmetrized. Throws SingularMatrix when A is not Hurwitz
// enough for the vectorized system to be solvable.
Matrix lyapunov_solve(const Matrix& a, const Matrix& q);

struct EigenExtremes {
  double min = 0.0;
  double max = 0.0;
};

// Extreme eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
// Throws NoConvergence after 50 sweeps.
EigenExtremes eig_extremes_symmetric(const Matrix& p);

// Coefficients c_0..c_n of det(sI - A) = s^n + c_{n-1} s^{n-1} + ... + c_0,
// returned lowest order first with c_n = 1 (Faddeev-LeVerrier).
std::vector<double> characteristic_polynomial(const Matrix& a);

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// Computes C (sI - A)^{-1} B + D at a complex frequency s. The complex
// elimination runs in extended precision since biproper blocks subtract
// nearly equal terms at low frequency.
ComplexMatrix transfer_at(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d, Complex s);

}  // namespace ddflow
