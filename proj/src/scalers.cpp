#include "loglie/scalers.hpp"

#include <cmath>

#include "loglie/kernels.hpp"

namespace loglie {

namespace {

void validate(const FixedPointConfig& cfg) {
  if (!(cfg.eps > 0.0) || cfg.max_iter < 1)
    throw Error("invalid fixed-point config (eps > 0, max_iter >= 1 required)");
}

void validate(const NewtonConfig& cfg) {
  if (!(cfg.tol > 0.0) || cfg.max_iter < 1 || !(cfg.armijo > 0.0 && cfg.armijo < 1.0))
    throw Error("invalid Newton config (tol > 0, max_iter >= 1, armijo in (0,1) required)");
}

}  // namespace

SymMat unit_diag_shift_from(const SymMat& s, std::vector<double> d,
                            const FixedPointConfig& cfg, SolveInfo* info) {
  validate(cfg);
  if (!s.is_finite()) throw NonFinite();
  const int n = s.dim();
  if (static_cast<int>(d.size()) != n) throw DimensionMismatch();

  double step_norm = 0.0;
  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    SymMat a = s;
    for (int i = 0; i < n; ++i) a.set(i, i, s(i, i) + d[i]);
    const std::vector<double> ediag = mat_exp(a).diagonal_vector();

    step_norm = 0.0;
    for (int i = 0; i < n; ++i) {
      const double step = std::log(ediag[i]);
      d[i] -= step;
      step_norm += step * step;
    }
    step_norm = std::sqrt(step_norm);
    if (step_norm <= cfg.eps) {
      if (info) *info = {iter, step_norm};
      SymMat out(n);
      for (int i = 0; i < n; ++i) out.set(i, i, d[i]);
      return out;
    }
  }
  throw NoConvergence("unit-diagonal shift", cfg.max_iter, step_norm);
}

SymMat unit_diag_shift(const SymMat& s, const FixedPointConfig& cfg, SolveInfo* info) {
  return unit_diag_shift_from(s, std::vector<double>(s.dim(), 0.0), cfg, info);
}

namespace detail {

SymMat diag_response_matrix(const EigDecomp& e) {
  return kernels::quadratic_response(e.vectors, exp_dd_matrix(e.values));
}

std::vector<double> solve_diag_response(const SymMat& h0, const std::vector<double>& b) {
  const double cond = kernels::spd_condition(h0);
  if (!(cond < kH0ConditionLimit)) throw SingularH0(cond);
  return kernels::spd_solve(h0, b);
}

}  // namespace detail

SymMat unit_diag_shift_diff(const SymMat& s, const SymMat& y, const FixedPointConfig& cfg) {
  if (s.dim() != y.dim()) throw DimensionMismatch();
  const SymMat shift = unit_diag_shift(s, cfg);
  const EigDecomp e = sym_eig(s + shift);
  const SymMat h0 = detail::diag_response_matrix(e);
  const std::vector<double> v = detail::dexp_at(e, y).diagonal_vector();
  const std::vector<double> x = detail::solve_diag_response(h0, v);
  SymMat out(s.dim());
  for (int i = 0; i < s.dim(); ++i) out.set(i, i, -x[i]);
  return out;
}

namespace {

double scaling_objective(const SymMat& sigma, const std::vector<double>& d) {
  double f = 0.5 * kernels::dot(d, sigma.apply(d));
  for (double di : d) f -= std::log(di);
  return f;
}

std::vector<double> scaling_gradient(const SymMat& sigma, const std::vector<double>& d) {
  std::vector<double> g = sigma.apply(d);
  for (size_t i = 0; i < d.size(); ++i) g[i] -= 1.0 / d[i];
  return g;
}

}  // namespace

SymMat unit_rowsum_scaling_from(const SymMat& sigma, std::vector<double> d,
                                const NewtonConfig& cfg, SolveInfo* info) {
  validate(cfg);
  const int n = sigma.dim();
  if (static_cast<int>(d.size()) != n) throw DimensionMismatch();
  for (double di : d)
    if (!(di > 0.0)) throw Error("row-sum scaling start must be positive");
  detail::require_positive_definite(sym_eig(sigma));

  auto newton_step = [&](const std::vector<double>& g) {
    SymMat hess = sigma;
    for (int i = 0; i < n; ++i) hess.set(i, i, sigma(i, i) + 1.0 / (d[i] * d[i]));
    std::vector<double> p = kernels::spd_solve(hess, g);
    for (double& pi : p) pi = -pi;
    return p;
  };

  double grad_norm = 0.0;
  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    std::vector<double> g = scaling_gradient(sigma, d);
    grad_norm = kernels::norm2(g);
    if (grad_norm <= cfg.tol) {
      // one undamped polish step; quadratic convergence takes the gradient
      // from ~tol to the floating-point floor
      const std::vector<double> p = newton_step(g);
      std::vector<double> polished(n);
      bool positive = true;
      for (int i = 0; i < n; ++i) {
        polished[i] = d[i] + p[i];
        positive = positive && polished[i] > 0.0;
      }
      if (positive) {
        const double polished_norm = kernels::norm2(scaling_gradient(sigma, polished));
        if (polished_norm < grad_norm) {
          d = std::move(polished);
          grad_norm = polished_norm;
        }
      }
      if (info) *info = {iter, grad_norm};
      SymMat out(n);
      for (int i = 0; i < n; ++i) out.set(i, i, d[i]);
      return out;
    }

    const std::vector<double> p = newton_step(g);

    const double f0 = scaling_objective(sigma, d);
    const double slope = kernels::dot(g, p);
    // absolute floor at the objective's floating-point resolution; without it
    // the decrease test rejects the final Newton steps and the gradient
    // stalls just above tol
    const double f_floor = 1e-14 * (1.0 + std::abs(f0));
    double t = 1.0;
    for (;;) {
      bool positive = true;
      std::vector<double> cand(n);
      for (int i = 0; i < n; ++i) {
        cand[i] = d[i] + t * p[i];
        if (!(cand[i] > 0.0)) {
          positive = false;
          break;
        }
      }
      if (positive && scaling_objective(sigma, cand) <= f0 + 1e-4 * t * slope + f_floor) {
        d = std::move(cand);
        break;
      }
      t *= cfg.armijo;
      if (t < 1e-20) throw NoConvergence("row-sum scaling line search", iter, grad_norm);
    }
  }
  throw NoConvergence("row-sum scaling", cfg.max_iter, grad_norm);
}

SymMat unit_rowsum_scaling(const SymMat& sigma, const NewtonConfig& cfg, SolveInfo* info) {
  std::vector<double> d(sigma.dim());
  for (int i = 0; i < sigma.dim(); ++i) {
    if (!(sigma(i, i) > 0.0)) throw NotPositiveDefinite("non-positive diagonal entry");
    d[i] = 1.0 / std::sqrt(sigma(i, i));
  }
  return unit_rowsum_scaling_from(sigma, std::move(d), cfg, info);
}

}  // namespace loglie
