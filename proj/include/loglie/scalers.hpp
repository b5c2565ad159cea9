#ifndef LOGLIE_SCALERS_HPP
#define LOGLIE_SCALERS_HPP

#include <vector>

#include "loglie/symlin.hpp"
#include "loglie/symmat.hpp"

namespace loglie {

/// Stopping rule for the unit-diagonal fixed-point iteration.
struct FixedPointConfig {
  double eps = 1e-12;  // threshold on ||D_k - D_{k-1}||_F
  int max_iter = 200;
};

/// Damped Newton settings for the row-sum scaler.
struct NewtonConfig {
  double tol = 1e-12;   // gradient-norm threshold
  int max_iter = 100;
  double armijo = 0.5;  // backtracking factor in (0,1)
};

struct SolveInfo {
  int iterations = 0;
  double residual = 0.0;
};

/// The unique diagonal D with exp(D + S) unit-diagonal, by the fixed-point
/// iteration D_{k+1} = D_k - log(Diag(exp(D_k + S))) started at D_0 = 0.
/// Accepts any symmetric S (equivariant in the diagonal part).
SymMat unit_diag_shift(const SymMat& s, const FixedPointConfig& cfg = {},
                       SolveInfo* info = nullptr);

/// Directional derivative of S -> unit_diag_shift(S):
/// -Diag((H0)^{-1} diag(dexp_{D(S)+S}(Y))) with H0 the diagonal response
/// matrix of exp at D(S)+S.
SymMat unit_diag_shift_diff(const SymMat& s, const SymMat& y,
                            const FixedPointConfig& cfg = {});

/// The unique positive diagonal D with log(D Sigma D) having zero row sums,
/// i.e. D Sigma D doubly "unit row sum". Damped Newton on the strictly convex
/// objective F(d) = 1/2 d^T Sigma d - sum_i log d_i with positivity clamp.
SymMat unit_rowsum_scaling(const SymMat& sigma, const NewtonConfig& cfg = {},
                           SolveInfo* info = nullptr);

/// Variant with an explicit start (used by the multi-start uniqueness
/// certificates); d0 entries must be positive.
SymMat unit_rowsum_scaling_from(const SymMat& sigma, std::vector<double> d0,
                                const NewtonConfig& cfg = {}, SolveInfo* info = nullptr);

/// Same iteration as unit_diag_shift from an explicit start.
SymMat unit_diag_shift_from(const SymMat& s, std::vector<double> d0,
                            const FixedPointConfig& cfg = {}, SolveInfo* info = nullptr);

namespace detail {

/// H0_il = sum_{j,k} P_ij P_ik P_lj P_lk exp1(delta_j, delta_k) for the
/// eigendecomposition of D(S)+S; symmetric positive-definite.
SymMat diag_response_matrix(const EigDecomp& e);

/// Solves H0 x = b, throwing SingularH0 when cond(H0) exceeds 1e12.
std::vector<double> solve_diag_response(const SymMat& h0, const std::vector<double>& b);

inline constexpr double kH0ConditionLimit = 1e12;

}  // namespace detail

}  // namespace loglie

#endif
