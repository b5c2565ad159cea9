#include "loglie/kernels.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "loglie/parallel.hpp"

namespace loglie::kernels {

namespace {
// Below this many multiply-adds the OpenMP fork costs more than it saves.
constexpr long kParallelFlopThreshold = 64 * 1024;

inline void matmul_row(const double* a, const double* b, double* c, int i, int k, int cols) {
  double* ci = c + static_cast<size_t>(i) * cols;
  for (int j = 0; j < cols; ++j) ci[j] = 0.0;
  const double* ai = a + static_cast<size_t>(i) * k;
  for (int l = 0; l < k; ++l) {
    const double ail = ai[l];
    const double* bl = b + static_cast<size_t>(l) * cols;
    for (int j = 0; j < cols; ++j) ci[j] += ail * bl[j];
  }
}
}  // namespace

void matmul_serial(const double* a, const double* b, double* c, int r, int k, int cols) {
  for (int i = 0; i < r; ++i) matmul_row(a, b, c, i, k, cols);
}

void matmul_omp(const double* a, const double* b, double* c, int r, int k, int cols) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < r; ++i) matmul_row(a, b, c, i, k, cols);
}

void matmul(const double* a, const double* b, double* c, int r, int k, int cols) {
  const long flops = static_cast<long>(r) * k * cols;
  if (parallel::enabled() && flops >= kParallelFlopThreshold)
    matmul_omp(a, b, c, r, k, cols);
  else
    matmul_serial(a, b, c, r, k, cols);
}

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
  Mat c(a.rows(), b.cols());
  matmul(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

Mat sandwich(const Mat& a, const Mat& b) { return matmul(matmul(a, b), a.transposed()); }

namespace {
inline double quadratic_entry(const Mat& p, const Mat& g, int i, int l, std::vector<double>& u) {
  const int n = p.cols();
  for (int j = 0; j < n; ++j) u[j] = p(i, j) * p(l, j);
  double t = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += g(j, k) * u[k];
    t += u[j] * s;
  }
  return t;
}
}  // namespace

SymMat quadratic_response_serial(const Mat& p, const Mat& g) {
  const int n = p.rows();
  SymMat h(n);
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i)
    for (int l = i; l < n; ++l) h.set(i, l, quadratic_entry(p, g, i, l, u));
  return h;
}

SymMat quadratic_response_omp(const Mat& p, const Mat& g) {
  const int n = p.rows();
  SymMat h(n);
  const int pairs = n * (n + 1) / 2;
#pragma omp parallel
  {
    std::vector<double> u(n);
#pragma omp for schedule(static)
    for (int idx = 0; idx < pairs; ++idx) {
      // Unrank idx into the upper-triangle pair (i, l), i <= l.
      int i = 0;
      int rem = idx;
      while (rem >= n - i) {
        rem -= n - i;
        ++i;
      }
      const int l = i + rem;
      h.set(i, l, quadratic_entry(p, g, i, l, u));
    }
  }
  return h;
}

SymMat quadratic_response(const Mat& p, const Mat& g) {
  const int n = p.rows();
  const long flops = static_cast<long>(n) * n * n * n;
  if (parallel::enabled() && flops >= kParallelFlopThreshold)
    return quadratic_response_omp(p, g);
  return quadratic_response_serial(p, g);
}

void jacobi_eigensymmetric(const SymMat& a, Mat& vectors, std::vector<double>& values) {
  const int n = a.dim();
  Mat w = a.to_mat();
  Mat v = Mat::identity(n);

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += w(i, j) * w(i, j);
    return std::sqrt(2.0 * s);
  };

  const double scale = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
  const double stop = 1e-15 * scale;
  const int max_sweeps = 64;

  for (int sweep = 0; sweep < max_sweeps && off_norm() > stop; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = w(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (w(q, q) - w(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double wkp = w(k, p);
          const double wkq = w(k, q);
          w(k, p) = c * wkp - s * wkq;
          w(k, q) = s * wkp + c * wkq;
        }
        for (int k = 0; k < n; ++k) {
          const double wpk = w(p, k);
          const double wqk = w(q, k);
          w(p, k) = c * wpk - s * wqk;
          w(q, k) = s * wpk + c * wqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = w(i, i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return diag[x] < diag[y]; });

  values.resize(n);
  vectors = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    values[j] = diag[order[j]];
    for (int i = 0; i < n; ++i) vectors(i, j) = v(i, order[j]);
  }
}

bool cholesky_factor(std::vector<double>& a, int n) {
  for (int j = 0; j < n; ++j) {
    double d = a[static_cast<size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) {
      const double l = a[static_cast<size_t>(j) * n + k];
      d -= l * l;
    }
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    a[static_cast<size_t>(j) * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a[static_cast<size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        s -= a[static_cast<size_t>(i) * n + k] * a[static_cast<size_t>(j) * n + k];
      a[static_cast<size_t>(i) * n + j] = s / ljj;
    }
  }
  return true;
}

std::vector<double> cholesky_solve(const std::vector<double>& l, int n, std::vector<double> b) {
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= l[static_cast<size_t>(i) * n + k] * b[k];
    b[i] = s / l[static_cast<size_t>(i) * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < n; ++k) s -= l[static_cast<size_t>(k) * n + i] * b[k];
    b[i] = s / l[static_cast<size_t>(i) * n + i];
  }
  return b;
}

std::vector<double> spd_solve(const SymMat& a, const std::vector<double>& b) {
  const int n = a.dim();
  if (static_cast<int>(b.size()) != n) throw DimensionMismatch();
  std::vector<double> f(a.data(), a.data() + static_cast<size_t>(n) * n);
  if (!cholesky_factor(f, n)) throw NotPositiveDefinite("spd_solve: Cholesky failed");
  return cholesky_solve(f, n, b);
}

double spd_condition(const SymMat& a) {
  Mat v;
  std::vector<double> d;
  jacobi_eigensymmetric(a, v, d);
  const double lo = d.front();
  const double hi = d.back();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace loglie::kernels
