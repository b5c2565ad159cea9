#include "loglie/quotient.hpp"

#include "loglie/spd.hpp"
#include "loglie/symlin.hpp"

namespace loglie {

Coset project(const SymMat& spd) {
  Coset c;
  c.rep = spd;
  c.canon = off_project(mat_log(spd));
  return c;
}

double coset_distance(const Coset& a, const Coset& b) {
  return (a.canon - b.canon).frobenius_norm();
}

bool coset_equal(const Coset& a, const Coset& b, double tol) {
  return a.canon.dim() == b.canon.dim() && coset_distance(a, b) <= tol;
}

SymMat canonical_section(const Coset& c) { return mat_exp(c.canon); }

SymMat correlation_section(const Coset& c, const FixedPointConfig& cfg) {
  return mat_exp(c.canon + unit_diag_shift(c.canon, cfg));
}

SymMat horizontal_lift(const SymMat& p, const SymMat& v) {
  if (p.dim() != v.dim()) throw DimensionMismatch();
  return dexp(mat_log(p), v);
}

double g_quotient(const Coset& c, const SymMat& v, const SymMat& w) {
  if (v.dim() != c.dim() || w.dim() != c.dim()) throw DimensionMismatch();
  return frobenius(v, w);
}

SymMat correlation_section_differential(const Coset& c, const SymMat& v,
                                        const FixedPointConfig& cfg) {
  // d sigma_corr(v) = dexp at D(S)+S of (v + dD(S)(v)), S the canonical value.
  const SymMat shift = unit_diag_shift(c.canon, cfg);
  const EigDecomp e = sym_eig(c.canon + shift);
  const SymMat h0 = detail::diag_response_matrix(e);
  const std::vector<double> rhs = detail::dexp_at(e, v).diagonal_vector();
  const std::vector<double> x = detail::solve_diag_response(h0, rhs);
  SymMat corrected = v;
  for (int i = 0; i < v.dim(); ++i) corrected.set(i, i, v(i, i) - x[i]);
  return detail::dexp_at(e, corrected);
}

double corr_section_pullback_le(const Coset& c, const SymMat& v, const SymMat& w,
                                const FixedPointConfig& cfg) {
  const SymMat point = correlation_section(c, cfg);
  return g_le(point, correlation_section_differential(c, v, cfg),
              correlation_section_differential(c, w, cfg));
}

double corr_section_pullback_ol(const Coset& c, const SymMat& v, const SymMat& w,
                                const FixedPointConfig& cfg) {
  const SymMat point = correlation_section(c, cfg);
  return g_ol_ambient(point, correlation_section_differential(c, v, cfg),
                      correlation_section_differential(c, w, cfg));
}

double corr_section_pullback_dl(const Coset& c, const SymMat& v, const SymMat& w,
                                const FixedPointConfig& cfg) {
  const SymMat point = correlation_section(c, cfg);
  return g_dl_ambient(point, correlation_section_differential(c, v, cfg),
                      correlation_section_differential(c, w, cfg));
}

double vertical_defect(const Coset& c, const SymMat& v, const FixedPointConfig& cfg) {
  return corr_section_pullback_le(c, v, v, cfg) - g_quotient(c, v, v);
}

}  // namespace loglie
