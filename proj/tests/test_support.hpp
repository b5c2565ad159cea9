#ifndef LOGLIE_TEST_SUPPORT_HPP
#define LOGLIE_TEST_SUPPORT_HPP

#include <cmath>

#include "loglie/rng.hpp"
#include "loglie/symmat.hpp"

namespace loglie::testing {

inline double frob_diff(const SymMat& a, const SymMat& b) {
  return (a - b).frobenius_norm();
}

inline double mat_diff(const Mat& a, const Mat& b) {
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

/// Independent 2x2 symmetric eigendecomposition from the characteristic
/// polynomial; the hand oracle against which sym_eig and the matrix
/// functions built on it are checked.
struct TwoByTwoEig {
  double lo, hi;       // eigenvalues, ascending
  double vlo[2], vhi[2];
};

inline TwoByTwoEig eig2x2(double a, double b, double c) {
  // matrix [[a, c], [c, b]]
  TwoByTwoEig e;
  const double mean = 0.5 * (a + b);
  const double half_gap = 0.5 * (a - b);
  const double radius = std::sqrt(half_gap * half_gap + c * c);
  e.lo = mean - radius;
  e.hi = mean + radius;
  // eigenvector for hi: (c, hi - a) unless degenerate
  double vx = c, vy = e.hi - a;
  double norm = std::sqrt(vx * vx + vy * vy);
  if (norm == 0.0) {
    vx = 1.0;
    vy = 0.0;
    norm = 1.0;
  }
  e.vhi[0] = vx / norm;
  e.vhi[1] = vy / norm;
  e.vlo[0] = -e.vhi[1];
  e.vlo[1] = e.vhi[0];
  return e;
}

/// f of a 2x2 symmetric matrix through the hand eigendecomposition.
template <typename F>
SymMat apply2x2(const SymMat& m, F f) {
  const TwoByTwoEig e = eig2x2(m(0, 0), m(1, 1), m(0, 1));
  const double flo = f(e.lo), fhi = f(e.hi);
  SymMat out(2);
  out.set(0, 0, flo * e.vlo[0] * e.vlo[0] + fhi * e.vhi[0] * e.vhi[0]);
  out.set(0, 1, flo * e.vlo[0] * e.vlo[1] + fhi * e.vhi[0] * e.vhi[1]);
  out.set(1, 1, flo * e.vlo[1] * e.vlo[1] + fhi * e.vhi[1] * e.vhi[1]);
  return out;
}

}  // namespace loglie::testing

#endif
