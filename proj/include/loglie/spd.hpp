#ifndef LOGLIE_SPD_HPP
#define LOGLIE_SPD_HPP

#include "loglie/group.hpp"
#include "loglie/symmat.hpp"

namespace loglie {

/// The exp chart on S+(n): fwd = log, inv = exp, model space S(n).
ChartPtr spd_chart(int n);

/// Log-Euclidean metric at SPD Sigma on ambient symmetric tangents:
/// <dlog(Sigma, delta), dlog(Sigma, xi)>.
double g_le(const SymMat& sigma, const SymMat& delta, const SymMat& xi);

/// Off part of the pulled-back tangents only (degenerate along directions
/// whose dlog image is diagonal).
double g_ol_ambient(const SymMat& sigma, const SymMat& delta, const SymMat& xi);

/// Diagonal part only; g_le = g_ol_ambient + g_dl_ambient.
double g_dl_ambient(const SymMat& sigma, const SymMat& delta, const SymMat& xi);

}  // namespace loglie

#endif
