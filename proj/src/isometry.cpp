#include "loglie/isometry.hpp"

#include <cmath>

#include "loglie/corr.hpp"
#include "loglie/kernels.hpp"
#include "loglie/symlin.hpp"

namespace loglie {

HelmertMat helmert(int n) {
  if (n < 2) throw DimensionMismatch("Helmert matrix needs n >= 2");
  HelmertMat h;
  h.n = n;
  h.b = Mat(n - 1, n);
  for (int k = 1; k < n; ++k) {
    const double denom = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int c = 0; c < k; ++c) h.b(k - 1, c) = denom;
    h.b(k - 1, k) = -static_cast<double>(k) * denom;
  }
  return h;
}

SymMat hollow_embed(const SymMat& s) {
  const int m = s.dim();
  const int n = m + 1;
  const double sqrt2 = std::sqrt(2.0);
  SymMat h(n);
  for (int k = 0; k < m; ++k) h.set(0, k + 1, s(k, k) / sqrt2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) h.set(i + 1, j + 1, s(i, j));
  return h;
}

SymMat hollow_extract(const SymMat& h) {
  const int n = h.dim();
  if (n < 2) throw DimensionMismatch("hollow_extract needs n >= 2");
  const int m = n - 1;
  const double sqrt2 = std::sqrt(2.0);
  SymMat s(m);
  for (int k = 0; k < m; ++k) s.set(k, k, h(0, k + 1) * sqrt2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) s.set(i, j, h(i + 1, j + 1));
  return s;
}

SymMat rowzero_embed(const SymMat& s) {
  const HelmertMat h = helmert(s.dim() + 1);
  const Mat bt = h.b.transposed();
  return SymMat::symmetrized(kernels::matmul(kernels::matmul(bt, s.to_mat()), h.b));
}

SymMat rowzero_extract(const SymMat& r) {
  if (r.dim() < 2) throw DimensionMismatch("rowzero_extract needs n >= 2");
  const HelmertMat h = helmert(r.dim());
  return SymMat::symmetrized(kernels::sandwich(h.b, r.to_mat()));
}

SymMat spd_to_corr_offlog(const SymMat& x, const FixedPointConfig& cfg) {
  const SymMat embedded = hollow_embed(mat_log(x));
  return mat_exp(embedded + unit_diag_shift(embedded, cfg));
}

SymMat corr_offlog_to_spd(const SymMat& c) {
  return mat_exp(hollow_extract(off_project(mat_log(c))));
}

SymMat spd_to_corr_logscaling(const SymMat& x) {
  return correlation_rescale(mat_exp(rowzero_embed(mat_log(x))));
}

SymMat corr_logscaling_to_spd(const SymMat& c, const NewtonConfig& cfg) {
  const SymMat dstar = unit_rowsum_scaling(c, cfg);
  const int n = c.dim();
  SymMat sigma(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) sigma.set(i, j, dstar(i, i) * c(i, j) * dstar(j, j));
  return mat_exp(rowzero_extract(mat_log(sigma)));
}

SymMat corr_offlog_to_logscaling(const SymMat& c) {
  return correlation_rescale(mat_exp(rowzero_embed(hollow_extract(off_project(mat_log(c))))));
}

SymMat corr_logscaling_to_offlog(const SymMat& c, const NewtonConfig& newton,
                                 const FixedPointConfig& fixed_point) {
  return spd_to_corr_offlog(corr_logscaling_to_spd(c, newton), fixed_point);
}

}  // namespace loglie
