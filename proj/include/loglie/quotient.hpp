#ifndef LOGLIE_QUOTIENT_HPP
#define LOGLIE_QUOTIENT_HPP

#include "loglie/scalers.hpp"
#include "loglie/symmat.hpp"

namespace loglie {

/// A point of S+(n)/Diag+(n) under the log-Euclidean action, stored by its
/// canonical hollow chart value off(log rep). Cosets are equal iff their
/// canon values agree, independent of the representative.
struct Coset {
  SymMat rep;    // some representative (SPD)
  SymMat canon;  // off(log rep), hollow

  int dim() const { return canon.dim(); }
};

/// Quotient projection of an SPD matrix.
Coset project(const SymMat& spd);

double coset_distance(const Coset& a, const Coset& b);
bool coset_equal(const Coset& a, const Coset& b, double tol = kSubspaceTol);

/// The unique section that is both a group isomorphism and an isometric
/// embedding: exp of the canonical hollow value.
SymMat canonical_section(const Coset& c);

/// The section whose image is Cor+(n): exp(D(S) + S) for the canonical value
/// S; a smooth embedding but not horizontal.
SymMat correlation_section(const Coset& c, const FixedPointConfig& cfg = {});

/// Horizontal lift to an arbitrary fiber point p of a quotient tangent given
/// in canonical coordinates (hollow v): dexp(log p, v).
SymMat horizontal_lift(const SymMat& p, const SymMat& v);

/// Quotient metric in canonical coordinates; constant equal to the Frobenius
/// product of the hollow tangents.
double g_quotient(const Coset& c, const SymMat& v, const SymMat& w);

/// Differential of the correlation section at c applied to a hollow tangent,
/// as an ambient tangent at the correlation point.
SymMat correlation_section_differential(const Coset& c, const SymMat& v,
                                        const FixedPointConfig& cfg = {});

/// Pullbacks of the ambient metrics through the correlation section.
double corr_section_pullback_le(const Coset& c, const SymMat& v, const SymMat& w,
                                const FixedPointConfig& cfg = {});
double corr_section_pullback_ol(const Coset& c, const SymMat& v, const SymMat& w,
                                const FixedPointConfig& cfg = {});
double corr_section_pullback_dl(const Coset& c, const SymMat& v, const SymMat& w,
                                const FixedPointConfig& cfg = {});

/// Excess of the induced metric over the quotient metric along the
/// correlation section; nonnegative, and strictly positive for generic
/// nonzero v (the section is not horizontal).
double vertical_defect(const Coset& c, const SymMat& v, const FixedPointConfig& cfg = {});

}  // namespace loglie

#endif
