#include "loglie/spd.hpp"

#include <cmath>
#include <limits>

#include "loglie/symlin.hpp"

namespace loglie {

ChartPtr spd_chart(int n) {
  if (n < 1) throw DimensionMismatch("spd chart needs n >= 1");
  auto chart = std::make_shared<LeChart>();
  chart->name = "spd-le";
  chart->dim_ambient = n;
  chart->model_tag = SubspaceTag::Full;
  chart->fwd = [](const SymMat& sigma) { return mat_log(sigma); };
  chart->inv = [](const SymMat& s) { return mat_exp(s); };
  chart->dfwd = [](const SymMat& sigma, const SymMat& delta) { return dlog(sigma, delta); };
  chart->dinv = [](const SymMat& s, const SymMat& y) { return dexp(s, y); };
  chart->membership_residual = [](const SymMat& sigma) {
    if (!sigma.is_finite()) return std::numeric_limits<double>::infinity();
    const EigDecomp e = sym_eig(sigma);
    const double lo = e.values.front();
    const double hi = e.values.back();
    if (lo > detail::kPdGuard * std::max(hi, 0.0)) return 0.0;
    return std::numeric_limits<double>::infinity();
  };
  return chart;
}

namespace {
std::pair<SymMat, SymMat> pulled_tangents(const SymMat& sigma, const SymMat& delta,
                                          const SymMat& xi) {
  const EigDecomp e = sym_eig(sigma);
  return {detail::dlog_at(e, delta), detail::dlog_at(e, xi)};
}
}  // namespace

double g_le(const SymMat& sigma, const SymMat& delta, const SymMat& xi) {
  const auto [a, b] = pulled_tangents(sigma, delta, xi);
  return frobenius(a, b);
}

double g_ol_ambient(const SymMat& sigma, const SymMat& delta, const SymMat& xi) {
  const auto [a, b] = pulled_tangents(sigma, delta, xi);
  return frobenius(off_project(a), off_project(b));
}

double g_dl_ambient(const SymMat& sigma, const SymMat& delta, const SymMat& xi) {
  const auto [a, b] = pulled_tangents(sigma, delta, xi);
  return frobenius(diag_project(a), diag_project(b));
}

}  // namespace loglie
