#include "loglie/corr.hpp"

#include <cmath>
#include <limits>

#include "loglie/kernels.hpp"
#include "loglie/symlin.hpp"

namespace loglie {

SymMat correlation_rescale(const SymMat& spd) {
  const int n = spd.dim();
  std::vector<double> inv_sqrt(n);
  for (int i = 0; i < n; ++i) {
    if (!(spd(i, i) > 0.0)) throw NotPositiveDefinite("non-positive diagonal entry");
    inv_sqrt[i] = 1.0 / std::sqrt(spd(i, i));
  }
  SymMat c(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) c.set(i, j, inv_sqrt[i] * spd(i, j) * inv_sqrt[j]);
    c.set(i, i, 1.0);
  }
  return c;
}

namespace {

double corr_membership_residual(const SymMat& c) {
  if (!c.is_finite()) return std::numeric_limits<double>::infinity();
  double unit_dev = 0.0;
  for (int i = 0; i < c.dim(); ++i) unit_dev = std::max(unit_dev, std::abs(c(i, i) - 1.0));
  const EigDecomp e = sym_eig(c);
  if (!(e.values.front() > detail::kPdGuard * std::max(e.values.back(), 0.0)))
    return std::numeric_limits<double>::infinity();
  return unit_dev;
}

/// dexp at D(S)+S of (Y + dD(S)(Y)), sharing one eigendecomposition.
SymMat offlog_dinv_impl(const SymMat& s, const SymMat& y, const FixedPointConfig& cfg) {
  const SymMat shift = unit_diag_shift(s, cfg);
  const EigDecomp e = sym_eig(s + shift);
  const SymMat h0 = detail::diag_response_matrix(e);
  const std::vector<double> v = detail::dexp_at(e, y).diagonal_vector();
  const std::vector<double> x = detail::solve_diag_response(h0, v);
  SymMat corrected = y;
  for (int i = 0; i < y.dim(); ++i) corrected.set(i, i, y(i, i) - x[i]);
  return detail::dexp_at(e, corrected);
}

/// Log-scaling tangent map evaluated at the scaled point Sigma = D* C D*.
SymMat logscaling_dfwd_at(const SymMat& sigma, const SymMat& x) {
  const int n = sigma.dim();
  std::vector<double> delta(n);
  for (int i = 0; i < n; ++i) delta[i] = std::sqrt(sigma(i, i));

  SymMat dxd(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) dxd.set(i, j, delta[i] * x(i, j) * delta[j]);

  // x0 = -2 Diag((I + Sigma)^{-1} (Delta X Delta) 1)
  SymMat shifted = sigma;
  for (int i = 0; i < n; ++i) shifted.set(i, i, sigma(i, i) + 1.0);
  const std::vector<double> u = kernels::spd_solve(shifted, dxd.row_sums());

  SymMat m = dxd;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      m.set(i, j, dxd(i, j) - (u[i] * sigma(i, j) + sigma(i, j) * u[j]));
  return dlog(sigma, m);
}

SymMat logscaling_dinv_impl(const SymMat& s, const SymMat& y) {
  const int n = s.dim();
  const EigDecomp e = sym_eig(s);
  const SymMat sigma = detail::exp_of(e);
  const SymMat de = detail::dexp_at(e, y);

  std::vector<double> dsq(n), d(n);
  for (int i = 0; i < n; ++i) {
    dsq[i] = sigma(i, i);
    d[i] = std::sqrt(dsq[i]);
  }
  SymMat out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double m = de(i, j) - 0.5 * (de(i, i) / dsq[i] + de(j, j) / dsq[j]) * sigma(i, j);
      out.set(i, j, m / (d[i] * d[j]));
    }
    out.set(i, i, 0.0);  // exact: m_ii = de_ii - de_ii * sigma_ii / dsq_i = 0
  }
  return out;
}

}  // namespace

ChartPtr offlog_chart(int n, const FixedPointConfig& cfg) {
  if (n < 2) throw DimensionMismatch("off-log chart needs n >= 2");
  auto chart = std::make_shared<LeChart>();
  chart->name = "corr-offlog";
  chart->dim_ambient = n;
  chart->model_tag = SubspaceTag::Hollow;
  chart->fwd = [](const SymMat& c) { return off_project(mat_log(c)); };
  chart->inv = [cfg](const SymMat& s) { return mat_exp(s + unit_diag_shift(s, cfg)); };
  chart->dfwd = [](const SymMat& c, const SymMat& x) { return off_project(dlog(c, x)); };
  chart->dinv = [cfg](const SymMat& s, const SymMat& y) { return offlog_dinv_impl(s, y, cfg); };
  chart->membership_residual = corr_membership_residual;
  return chart;
}

ChartPtr logscaling_chart(int n, const NewtonConfig& cfg) {
  if (n < 2) throw DimensionMismatch("log-scaling chart needs n >= 2");
  auto chart = std::make_shared<LeChart>();
  chart->name = "corr-logscaling";
  chart->dim_ambient = n;
  chart->model_tag = SubspaceTag::RowZero;
  chart->fwd = [cfg](const SymMat& c) {
    const SymMat dstar = unit_rowsum_scaling(c, cfg);
    const int m = c.dim();
    SymMat sigma(m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) sigma.set(i, j, dstar(i, i) * c(i, j) * dstar(j, j));
    return mat_log(sigma);
  };
  chart->inv = [](const SymMat& s) { return correlation_rescale(mat_exp(s)); };
  chart->dfwd = [cfg](const SymMat& c, const SymMat& x) {
    const SymMat dstar = unit_rowsum_scaling(c, cfg);
    const int m = c.dim();
    SymMat sigma(m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) sigma.set(i, j, dstar(i, i) * c(i, j) * dstar(j, j));
    return logscaling_dfwd_at(sigma, x);
  };
  chart->dinv = [](const SymMat& s, const SymMat& y) { return logscaling_dinv_impl(s, y); };
  chart->membership_residual = corr_membership_residual;
  return chart;
}

double g_ol(const SymMat& c, const SymMat& delta, const SymMat& xi) {
  const EigDecomp e = sym_eig(c);
  const SymMat a = off_project(detail::dlog_at(e, delta));
  const SymMat b = off_project(detail::dlog_at(e, xi));
  return frobenius(a, b);
}

double g_ls(const SymMat& c, const SymMat& delta, const SymMat& xi, const NewtonConfig& cfg) {
  const SymMat dstar = unit_rowsum_scaling(c, cfg);
  const int n = c.dim();
  SymMat sigma(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) sigma.set(i, j, dstar(i, i) * c(i, j) * dstar(j, j));
  const SymMat a = logscaling_dfwd_at(sigma, delta);
  const SymMat b = logscaling_dfwd_at(sigma, xi);
  return frobenius(a, b);
}

}  // namespace loglie
