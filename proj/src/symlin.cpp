#include "loglie/symlin.hpp"

#include <cmath>

#include "loglie/kernels.hpp"

namespace loglie {

EigDecomp sym_eig(const SymMat& a) {
  if (!a.is_finite()) throw NonFinite();
  EigDecomp e;
  kernels::jacobi_eigensymmetric(a, e.vectors, e.values);
  return e;
}

double exp_divided_difference(double a, double b) {
  const double h = 0.5 * (a - b);
  const double mid = std::exp(0.5 * (a + b));
  const double h2 = h * h;
  // sinh(h)/h, series below 1e-4 where the direct quotient loses digits
  const double sinhc =
      (std::abs(h) < 1e-4) ? 1.0 + h2 / 6.0 * (1.0 + h2 / 20.0) : std::sinh(h) / h;
  return mid * sinhc;
}

double log_divided_difference(double a, double b) {
  // (log a - log b)/(a-b) = 2/(a+b) * atanh(r)/r with r = (a-b)/(a+b)
  const double sum = a + b;
  const double r = (a - b) / sum;
  const double r2 = r * r;
  const double atanhc =
      (std::abs(r) < 1e-4) ? 1.0 + r2 / 3.0 * (1.0 + 9.0 * r2 / 15.0) : std::atanh(r) / r;
  return 2.0 / sum * atanhc;
}

namespace detail {

void require_positive_definite(const EigDecomp& e) {
  const double hi = e.values.back();
  if (!(e.values.front() > kPdGuard * std::max(hi, 0.0)))
    throw NotPositiveDefinite();
}

SymMat spectral_apply(const EigDecomp& e, const std::function<double(double)>& f) {
  const int n = e.dim();
  Mat scaled = e.vectors;  // columns scaled by f(lambda_j)
  for (int j = 0; j < n; ++j) {
    const double fj = f(e.values[j]);
    for (int i = 0; i < n; ++i) scaled(i, j) *= fj;
  }
  return SymMat::symmetrized(kernels::matmul(scaled, e.vectors.transposed()));
}

SymMat frechet_apply(const EigDecomp& e, const SymMat& v,
                     const std::function<double(double, double)>& dd) {
  const int n = e.dim();
  const Mat pt = e.vectors.transposed();
  Mat inner = kernels::matmul(kernels::matmul(pt, v.to_mat()), e.vectors);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) inner(j, k) *= dd(e.values[j], e.values[k]);
  return SymMat::symmetrized(kernels::matmul(kernels::matmul(e.vectors, inner), pt));
}

Mat exp_dd_matrix(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  Mat g(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) g(j, k) = exp_divided_difference(values[j], values[k]);
  return g;
}

Mat log_dd_matrix(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  Mat g(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) g(j, k) = log_divided_difference(values[j], values[k]);
  return g;
}

SymMat exp_of(const EigDecomp& e) {
  for (double l : e.values)
    if (l > kExpArgLimit) throw Overflow();
  return spectral_apply(e, [](double x) { return std::exp(x); });
}

SymMat log_of(const EigDecomp& e) {
  require_positive_definite(e);
  return spectral_apply(e, [](double x) { return std::log(x); });
}

SymMat dexp_at(const EigDecomp& e, const SymMat& v) {
  return frechet_apply(e, v, exp_divided_difference);
}

SymMat dlog_at(const EigDecomp& e, const SymMat& w) {
  require_positive_definite(e);
  return frechet_apply(e, w, log_divided_difference);
}

}  // namespace detail

SymMat mat_exp(const SymMat& s) { return detail::exp_of(sym_eig(s)); }

SymMat mat_log(const SymMat& sigma) { return detail::log_of(sym_eig(sigma)); }

SymMat dexp(const SymMat& s, const SymMat& v) {
  if (s.dim() != v.dim()) throw DimensionMismatch();
  return detail::dexp_at(sym_eig(s), v);
}

SymMat dlog(const SymMat& sigma, const SymMat& w) {
  if (sigma.dim() != w.dim()) throw DimensionMismatch();
  return detail::dlog_at(sym_eig(sigma), w);
}

}  // namespace loglie
