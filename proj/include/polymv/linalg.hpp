#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace polymv {

/// Numerical failures (non-finite data, singular systems, step underflow).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix, sized for moment systems (N+1 <= a few dozen).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[i * cols_ + j]; }
  double operator()(int i, int j) const { return a_[i * cols_ + j]; }
  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }
  std::size_t size() const { return a_.size(); }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix transpose(const Matrix& a);
Matrix commutator(const Matrix& a, const Matrix& b);  // AB - BA

std::vector<double> mat_vec(const Matrix& a, const std::vector<double>& x);
std::vector<double> vec_mat(const std::vector<double>& x, const Matrix& a);

double max_abs(const Matrix& a);
double one_norm(const Matrix& a);
double inf_norm(const Matrix& a);
bool all_finite(const Matrix& a);

/// Solve A X = B by LU with partial pivoting.
Matrix solve(Matrix a, Matrix b);

/// Scaling-and-squaring matrix exponential with the degree-13 Pade
/// approximant (lower degrees for small norms, Higham's thresholds).
Matrix matrix_exp(const Matrix& a);

/// Spectral norm via power iteration on A^T A: 100 iterations or relative
/// change < 1e-10, whichever first.
double spectral_norm(const Matrix& a);

}  // namespace polymv
