#ifndef LOGLIE_CORR_HPP
#define LOGLIE_CORR_HPP

#include "loglie/group.hpp"
#include "loglie/scalers.hpp"
#include "loglie/symmat.hpp"

namespace loglie {

/// Correlation rescaling Diag(Sigma)^{-1/2} Sigma Diag(Sigma)^{-1/2}.
SymMat correlation_rescale(const SymMat& spd);

/// Off-log chart on Cor+(n): fwd = off(log C), inv = exp(D(S)+S) with D the
/// unit-diagonal shift; model space Hol(n).
ChartPtr offlog_chart(int n, const FixedPointConfig& cfg = {});

/// Log-scaling chart on Cor+(n): fwd = log(D* C D*), inv = correlation
/// rescaling of exp; model space Row0(n).
ChartPtr logscaling_chart(int n, const NewtonConfig& cfg = {});

/// Off-log metric on Cor+ at C for hollow tangents:
/// <off(dlog(C, delta)), off(dlog(C, xi))>.
double g_ol(const SymMat& c, const SymMat& delta, const SymMat& xi);

/// Log-scaling metric on Cor+ at C for hollow tangents (pullback of the
/// Frobenius product on Row0 through the log-scaling tangent map).
double g_ls(const SymMat& c, const SymMat& delta, const SymMat& xi,
            const NewtonConfig& cfg = {});

}  // namespace loglie

#endif
