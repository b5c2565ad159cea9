#ifndef LOGLIE_ISOMETRY_HPP
#define LOGLIE_ISOMETRY_HPP

#include "loglie/scalers.hpp"
#include "loglie/symmat.hpp"

namespace loglie {

/// Helmert contrast matrix: (n-1) x n, orthonormal rows annihilating the
/// all-ones vector.
struct HelmertMat {
  int n = 0;
  Mat b;  // (n-1) x n
};

HelmertMat helmert(int n);

/// Linear isometry S(n-1) -> Hol(n): the diagonal of S fills the first
/// row/column scaled by 1/sqrt(2), the off part of S fills the trailing block.
SymMat hollow_embed(const SymMat& s);

/// Inverse of hollow_embed (index shuffling and the sqrt(2) scaling only).
SymMat hollow_extract(const SymMat& h);

/// Linear isometry S(n-1) -> Row0(n): conjugation by the Helmert matrix,
/// S -> B^T S B.
SymMat rowzero_embed(const SymMat& s);

/// Inverse of rowzero_embed: R -> B R B^T.
SymMat rowzero_extract(const SymMat& r);

/// Integrated isometries between the SPD log-Euclidean structure on
/// S+(n-1) and the two correlation structures on Cor+(n), plus the composite
/// between the two correlation structures. Each is a group isomorphism and a
/// distance-preserving bijection.
SymMat spd_to_corr_offlog(const SymMat& x, const FixedPointConfig& cfg = {});
SymMat corr_offlog_to_spd(const SymMat& c);
SymMat spd_to_corr_logscaling(const SymMat& x);
SymMat corr_logscaling_to_spd(const SymMat& c, const NewtonConfig& cfg = {});
SymMat corr_offlog_to_logscaling(const SymMat& c);
SymMat corr_logscaling_to_offlog(const SymMat& c, const NewtonConfig& newton = {},
                                 const FixedPointConfig& fixed_point = {});

}  // namespace loglie

#endif
