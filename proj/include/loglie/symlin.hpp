#ifndef LOGLIE_SYMLIN_HPP
#define LOGLIE_SYMLIN_HPP

#include <functional>
#include <vector>

#include "loglie/symmat.hpp"

namespace loglie {

/// Orthogonal eigendecomposition A = P diag(values) P^T, eigenvalues ascending.
struct EigDecomp {
  Mat vectors;                 // columns are eigenvectors
  std::vector<double> values;  // ascending

  int dim() const { return static_cast<int>(values.size()); }
};

EigDecomp sym_eig(const SymMat& a);

/// Matrix exponential of a symmetric matrix (result is SPD).
SymMat mat_exp(const SymMat& s);

/// Matrix logarithm of an SPD matrix.
SymMat mat_log(const SymMat& sigma);

/// Directional derivative of exp at S in direction V:
/// P ((P^T V P) .* exp1(delta)) P^T with exp1 the first divided difference.
SymMat dexp(const SymMat& s, const SymMat& v);

/// Directional derivative of log at SPD Sigma in direction W.
SymMat dlog(const SymMat& sigma, const SymMat& w);

/// First divided difference (e^a - e^b)/(a - b), continued by its limit e^a
/// at coincident arguments. Evaluated as e^{(a+b)/2} sinh(h)/h, h=(a-b)/2,
/// which is the same limit but free of cancellation.
double exp_divided_difference(double a, double b);

/// (log a - log b)/(a - b) for a, b > 0, limit 1/a at coincidence.
double log_divided_difference(double a, double b);

namespace detail {

/// f applied to the spectrum: P diag(f(values)) P^T.
SymMat spectral_apply(const EigDecomp& e, const std::function<double(double)>& f);

/// Divided-difference transform P ((P^T V P) .* G) P^T where
/// G_jk = dd(values_j, values_k).
SymMat frechet_apply(const EigDecomp& e, const SymMat& v,
                     const std::function<double(double, double)>& dd);

/// Divided-difference Gram matrices for the spectrum.
Mat exp_dd_matrix(const std::vector<double>& values);
Mat log_dd_matrix(const std::vector<double>& values);

SymMat exp_of(const EigDecomp& e);
SymMat log_of(const EigDecomp& e);
SymMat dexp_at(const EigDecomp& e, const SymMat& v);
SymMat dlog_at(const EigDecomp& e, const SymMat& w);

/// Throws NotPositiveDefinite unless min eigenvalue > 1e-12 * max eigenvalue.
void require_positive_definite(const EigDecomp& e);

inline constexpr double kPdGuard = 1e-12;       // eps_pd, relative to lambda_max
inline constexpr double kExpArgLimit = 709.0;   // beyond this exp overflows

}  // namespace detail

}  // namespace loglie

#endif
