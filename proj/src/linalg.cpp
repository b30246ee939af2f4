#include "polymv/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace polymv {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  const int n = a.rows(), m = b.cols(), k = a.cols();
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < k; ++l) {
      const double v = a(i, l);
      if (v == 0.0) continue;
      const double* brow = b.data() + l * m;
      double* crow = c.data() + i * m;
      for (int j = 0; j < m; ++j) crow[j] += v * brow[j];
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

std::vector<double> mat_vec(const Matrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<double> vec_mat(const std::vector<double>& x, const Matrix& a) {
  std::vector<double> y(a.cols(), 0.0);
  for (int j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += x[i] * a(i, j);
    y[j] = s;
  }
  return y;
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::fabs(a.data()[i]));
  return m;
}

double one_norm(const Matrix& a) {
  double m = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += std::fabs(a(i, j));
    m = std::max(m, s);
  }
  return m;
}

double inf_norm(const Matrix& a) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += std::fabs(a(i, j));
    m = std::max(m, s);
  }
  return m;
}

bool all_finite(const Matrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!std::isfinite(a.data()[i])) return false;
  return true;
}

Matrix solve(Matrix a, Matrix b) {
  const int n = a.rows();
  if (a.cols() != n || b.rows() != n)
    throw NumericError("solve: dimension mismatch");
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) throw NumericError("solve: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      for (int j = 0; j < b.cols(); ++j) std::swap(b(col, j), b(piv, j));
    }
    const double d = a(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double f = a(r, col) / d;
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      for (int j = 0; j < b.cols(); ++j) b(r, j) -= f * b(col, j);
    }
  }
  for (int col = n - 1; col >= 0; --col) {
    const double d = a(col, col);
    for (int j = 0; j < b.cols(); ++j) {
      double s = b(col, j);
      for (int k = col + 1; k < n; ++k) s -= a(col, k) * b(k, j);
      b(col, j) = s / d;
    }
  }
  return b;
}

namespace {

// Pade numerator coefficients for expm, Higham (2005).
const double kPade3[] = {120, 60, 12, 1};
const double kPade5[] = {30240, 15120, 3360, 420, 30, 1};
const double kPade7[] = {17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
const double kPade9[] = {17643225600., 8821612800., 2075673600., 302702400.,
                         30270240.,    2162160.,    110880.,     3960.,
                         90.,          1.};
const double kPade13[] = {64764752532480000., 32382376266240000.,
                          7771770303897600., 1187353796428800.,
                          129060195264000.,  10559470521600.,
                          670442572800.,     33522128640.,
                          1323241920.,       40840800.,
                          960960.,           16380.,
                          182.,              1.};

Matrix pade_uv(const Matrix& a, const double* b, int degree, Matrix& u,
               Matrix& v) {
  const int n = a.rows();
  const Matrix a2 = a * a;
  // even/odd polynomial split: U = A * sum b_{2k+1} A^{2k}, V = sum b_{2k} A^{2k}
  Matrix even = Matrix::identity(n), pow = Matrix::identity(n);
  Matrix usum(n, n), vsum(n, n);
  for (int k = 0; 2 * k + 1 <= degree; ++k) {
    if (k > 0) pow = pow * a2;
    vsum += b[2 * k] * pow;
    usum += b[2 * k + 1] * pow;
  }
  u = a * usum;
  v = vsum;
  return a2;
}

Matrix expm_pade(const Matrix& a, const double* b, int degree) {
  Matrix u, v;
  pade_uv(a, b, degree, u, v);
  return solve(v - u, v + u);
}

}  // namespace

Matrix matrix_exp(const Matrix& a) {
  if (!all_finite(a)) throw NumericError("matrix_exp: non-finite entries");
  const int n = a.rows();
  if (a.cols() != n) throw NumericError("matrix_exp: square matrix required");
  const double nrm = one_norm(a);

  if (nrm <= 1.495585217958292e-2) return expm_pade(a, kPade3, 3);
  if (nrm <= 2.539398330063230e-1) return expm_pade(a, kPade5, 5);
  if (nrm <= 9.504178996162932e-1) return expm_pade(a, kPade7, 7);
  if (nrm <= 2.097847961257068e0) return expm_pade(a, kPade9, 9);

  const double theta13 = 5.371920351148152;
  int s = 0;
  double scaled = nrm;
  while (scaled > theta13) {
    scaled *= 0.5;
    ++s;
  }
  Matrix as = std::ldexp(1.0, -s) * a;

  // degree 13 with the A^6-based splitting
  const int m = n;
  const Matrix a2 = as * as;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const double* b = kPade13;
  Matrix u = as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                   b[5] * a4 + b[3] * a2 + b[1] * Matrix::identity(m));
  Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
             b[4] * a4 + b[2] * a2 + b[0] * Matrix::identity(m);
  Matrix r = solve(v - u, v + u);
  for (int i = 0; i < s; ++i) r = r * r;
  return r;
}

double spectral_norm(const Matrix& a) {
  const int n = a.cols();
  if (n == 0) return 0.0;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 / std::sqrt(double(n)) + 1e-3 * (i + 1);
  double lambda = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<double> av = mat_vec(a, v);
    std::vector<double> w = vec_mat(av, a);  // A^T (A v)
    double norm_w = 0.0;
    for (double x : w) norm_w += x * x;
    norm_w = std::sqrt(norm_w);
    if (norm_w == 0.0) return 0.0;
    double new_lambda = 0.0;
    for (int i = 0; i < n; ++i) new_lambda += v[i] * w[i];
    for (int i = 0; i < n; ++i) v[i] = w[i] / norm_w;
    if (iter > 0 && std::fabs(new_lambda - lambda) <=
                        1e-10 * std::max(1.0, std::fabs(new_lambda))) {
      lambda = new_lambda;
      break;
    }
    lambda = new_lambda;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

}  // namespace polymv
