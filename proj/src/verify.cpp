#include "loglie/verify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>

#include "loglie/corr.hpp"
#include "loglie/group.hpp"
#include "loglie/isometry.hpp"
#include "loglie/kernels.hpp"
#include "loglie/matrix_io.hpp"
#include "loglie/parallel.hpp"
#include "loglie/quotient.hpp"
#include "loglie/rng.hpp"
#include "loglie/scalers.hpp"
#include "loglie/spd.hpp"
#include "loglie/symlin.hpp"

namespace loglie {

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

constexpr double kFdStep = 1e-5;

// ---- shared sampling helpers -------------------------------------------

SymMat sample_point(const LeChart& chart, SplitMix64& rng) {
  return chart.inv(random_model_vector(chart, rng, suite_scale(chart.dim_ambient)));
}

SymMat unit_norm(SymMat m) {
  const double n = m.frobenius_norm();
  return (n > 0.0) ? (1.0 / n) * m : m;
}

SymMat star_raw(const LeChart& chart, const SymMat& a, const SymMat& b) {
  return chart.inv(chart.fwd(a) + chart.fwd(b));
}

double rel(double err, double scale) { return err / (1.0 + scale); }

SymMat scaled_spd(const SymMat& c, const SymMat& dstar) {
  const int n = c.dim();
  SymMat sigma(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) sigma.set(i, j, dstar(i, i) * c(i, j) * dstar(j, j));
  return sigma;
}

// ---- per-check trial bodies --------------------------------------------

double check_roundtrip(const LeChart& chart, SplitMix64& rng) {
  const SymMat x = sample_point(chart, rng);
  const SymMat back = chart.inv(chart.fwd(x));
  return rel((back - x).frobenius_norm(), x.frobenius_norm());
}

double check_group_axioms(const LeChart& chart, SplitMix64& rng) {
  const SymMat a = sample_point(chart, rng);
  const SymMat b = sample_point(chart, rng);
  const SymMat c = sample_point(chart, rng);
  const double scale = 1.0 + std::max({chart.fwd(a).frobenius_norm(),
                                       chart.fwd(b).frobenius_norm(),
                                       chart.fwd(c).frobenius_norm()});
  const SymMat e = chart.inv(SymMat(chart.dim_ambient));

  const double assoc =
      (star_raw(chart, star_raw(chart, a, b), c) - star_raw(chart, a, star_raw(chart, b, c)))
          .frobenius_norm();
  const double comm = (star_raw(chart, a, b) - star_raw(chart, b, a)).frobenius_norm();
  const double ident = (star_raw(chart, e, a) - a).frobenius_norm();
  const SymMat a_inv = chart.inv(-chart.fwd(a));
  const double inver = (star_raw(chart, a, a_inv) - e).frobenius_norm();
  return std::max({assoc, comm, ident, inver}) / scale;
}

double check_dist_biinvariance(const LeChart& chart, SplitMix64& rng) {
  const SymMat a = sample_point(chart, rng);
  const SymMat b = sample_point(chart, rng);
  const SymMat c = sample_point(chart, rng);
  const double d0 = (chart.fwd(a) - chart.fwd(b)).frobenius_norm();
  const double d1 =
      (chart.fwd(star_raw(chart, a, c)) - chart.fwd(star_raw(chart, b, c))).frobenius_norm();
  return rel(std::abs(d1 - d0), d0);
}

double check_geodesic_affinity(const LeChart& chart, SplitMix64& rng) {
  const SymMat a = sample_point(chart, rng);
  const SymMat b = sample_point(chart, rng);
  const double t = -0.5 + 2.0 * rng.next_unit();
  const SymMat va = chart.fwd(a);
  const SymMat vb = chart.fwd(b);
  const SymMat target = (1.0 - t) * va + t * vb;
  const SymMat img = chart.fwd(chart.inv(target));
  return rel((img - target).frobenius_norm(), target.frobenius_norm());
}

double check_inverse_consistency(const LeChart& chart, SplitMix64& rng) {
  // f = group inverse commutes with itself; violation must vanish.
  const SymMat v = random_model_vector(chart, rng, suite_scale(chart.dim_ambient));
  const SymMat x = chart.inv(v);
  const SymMat x_inv = chart.inv(-v);
  auto f = [&](const SymMat& p) { return chart.inv(-chart.fwd(p)); };
  return (chart.fwd(f(x_inv)) + chart.fwd(f(x))).frobenius_norm();
}

double check_shift_equivariance(int n, SplitMix64& rng) {
  const SymMat s = random_symmetric(rng, n, suite_scale(n));
  const SymMat delta = random_diagonal(rng, n, 0.7);
  return (unit_diag_shift(s + delta) + delta - unit_diag_shift(s)).frobenius_norm();
}

double check_shift_of_log(int n, SplitMix64& rng) {
  const ChartPtr chart = offlog_chart(n);
  const SymMat c = sample_point(*chart, rng);
  const SymMat l = mat_log(c);
  return (unit_diag_shift(off_project(l)) - diag_project(l)).frobenius_norm();
}

double check_shift_inverse_relation(int n, SplitMix64& rng) {
  const ChartPtr chart = offlog_chart(n);
  const SymMat c = sample_point(*chart, rng);
  const SymMat l = mat_log(c);
  // D(-off(log C)) + Diag(log C) = D(-log C)
  return (unit_diag_shift(-off_project(l)) + diag_project(l) - unit_diag_shift(-l))
      .frobenius_norm();
}

double check_multistart_shift(int n, SplitMix64& rng) {
  const SymMat s = random_symmetric(rng, n, suite_scale(n));
  const SymMat base = unit_diag_shift(s);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    std::vector<double> d0(n);
    for (int i = 0; i < n; ++i) d0[i] = rng.next_symmetric();
    worst = std::max(worst, (unit_diag_shift_from(s, d0) - base).frobenius_norm());
  }
  return worst;
}

double check_multistart_scaling(int n, SplitMix64& rng) {
  const SymMat sigma = random_spd(rng, n, suite_scale(n));
  const SymMat base = unit_rowsum_scaling(sigma);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    std::vector<double> d0(n);
    for (int i = 0; i < n; ++i) d0[i] = std::exp(rng.next_symmetric());
    worst = std::max(worst, (unit_rowsum_scaling_from(sigma, d0) - base).frobenius_norm());
  }
  return worst;
}

double check_offlog_image_hollow(int n, SplitMix64& rng) {
  const ChartPtr chart = offlog_chart(n);
  return subspace_residual(chart->fwd(sample_point(*chart, rng)), SubspaceTag::Hollow);
}

double check_logscaling_image_rowzero(int n, SplitMix64& rng) {
  const ChartPtr ls = logscaling_chart(n);
  const ChartPtr ol = offlog_chart(n);
  // sample through the other chart so the image test is not a tautology
  return subspace_residual(ls->fwd(sample_point(*ol, rng)), SubspaceTag::RowZero);
}

double check_metric_split(int n, SplitMix64& rng) {
  const SymMat sigma = random_spd(rng, n, suite_scale(n));
  const SymMat delta = random_symmetric(rng, n, 1.0);
  const SymMat xi = random_symmetric(rng, n, 1.0);
  const double le = g_le(sigma, delta, xi);
  const double split = g_ol_ambient(sigma, delta, xi) + g_dl_ambient(sigma, delta, xi);
  return rel(std::abs(le - split), std::abs(le));
}

double check_metric_degeneracy(int n, SplitMix64& rng) {
  const SymMat sigma = random_spd(rng, n, suite_scale(n));
  const SymMat d = unit_norm(random_diagonal(rng, n, 1.0));
  const SymMat delta = dexp(mat_log(sigma), d);  // dlog image is diagonal
  const SymMat xi = unit_norm(random_symmetric(rng, n, 1.0));
  return std::abs(g_ol_ambient(sigma, delta, xi));
}

double check_dexp_fd(int n, SplitMix64& rng) {
  const SymMat s = random_symmetric(rng, n, suite_scale(n));
  const SymMat v = random_symmetric(rng, n, 1.0);
  const SymMat an = dexp(s, v);
  const SymMat fd = (1.0 / (2.0 * kFdStep)) * (mat_exp(s + kFdStep * v) - mat_exp(s - kFdStep * v));
  return rel((an - fd).frobenius_norm(), an.frobenius_norm());
}

double check_dlog_fd(int n, SplitMix64& rng) {
  const SymMat sigma = random_spd(rng, n, suite_scale(n));
  const SymMat w = random_symmetric(rng, n, 1.0);
  const SymMat an = dlog(sigma, w);
  const SymMat fd =
      (1.0 / (2.0 * kFdStep)) * (mat_log(sigma + kFdStep * w) - mat_log(sigma - kFdStep * w));
  return rel((an - fd).frobenius_norm(), an.frobenius_norm());
}

double check_exp_log_mutual_inverse(int n, SplitMix64& rng) {
  const SymMat s = random_symmetric(rng, n, suite_scale(n));
  const SymMat v = random_symmetric(rng, n, 1.0);
  const SymMat sigma = mat_exp(s);
  const double r1 = rel((dlog(sigma, dexp(s, v)) - v).frobenius_norm(), v.frobenius_norm());
  const SymMat w = random_symmetric(rng, n, 1.0);
  const double r2 =
      rel((dexp(s, dlog(sigma, w)) - w).frobenius_norm(), w.frobenius_norm());
  return std::max(r1, r2);
}

double chart_dfwd_fd(const LeChart& chart, const SymMat& point, const SymMat& tangent) {
  const SymMat an = chart.dfwd(point, tangent);
  const SymMat fd = (1.0 / (2.0 * kFdStep)) *
                    (chart.fwd(point + kFdStep * tangent) - chart.fwd(point - kFdStep * tangent));
  return rel((an - fd).frobenius_norm(), an.frobenius_norm());
}

double chart_dinv_fd(const LeChart& chart, const SymMat& value, const SymMat& tangent) {
  const SymMat an = chart.dinv(value, tangent);
  const SymMat fd = (1.0 / (2.0 * kFdStep)) *
                    (chart.inv(value + kFdStep * tangent) - chart.inv(value - kFdStep * tangent));
  return rel((an - fd).frobenius_norm(), an.frobenius_norm());
}

double check_offlog_dfwd_fd(int n, SplitMix64& rng) {
  const ChartPtr chart = offlog_chart(n);
  const SymMat c = sample_point(*chart, rng);
  const SymMat x = random_hollow(rng, n, 1.0);
  return chart_dfwd_fd(*chart, c, x);
}

double check_offlog_dinv_fd(int n, SplitMix64& rng) {
  const ChartPtr chart = offlog_chart(n);
  const SymMat s = random_hollow(rng, n, suite_scale(n));
  const SymMat y = random_hollow(rng, n, 1.0);
  return chart_dinv_fd(*chart, s, y);
}

double check_logscaling_dfwd_fd(int n, SplitMix64& rng) {
  const ChartPtr chart = logscaling_chart(n);
  const SymMat c = sample_point(*offlog_chart(n), rng);
  const SymMat x = random_hollow(rng, n, 1.0);
  return chart_dfwd_fd(*chart, c, x);
}

double check_logscaling_dinv_fd(int n, SplitMix64& rng) {
  const ChartPtr chart = logscaling_chart(n);
  const SymMat s = rowzero_embed(random_symmetric(rng, n - 1, suite_scale(n)));
  const SymMat y = rowzero_embed(random_symmetric(rng, n - 1, 1.0));
  return chart_dinv_fd(*chart, s, y);
}

double chart_tangent_mutual_inverse(const LeChart& chart, const SymMat& point,
                                    const SymMat& ambient, const SymMat& model) {
  const SymMat value = chart.fwd(point);
  const double r1 =
      rel((chart.dinv(value, chart.dfwd(point, ambient)) - ambient).frobenius_norm(),
          ambient.frobenius_norm());
  const SymMat point2 = chart.inv(value);
  const double r2 =
      rel((chart.dfwd(point2, chart.dinv(value, model)) - model).frobenius_norm(),
          model.frobenius_norm());
  return std::max(r1, r2);
}

double check_offlog_tangent_inverse(int n, SplitMix64& rng) {
  const ChartPtr chart = offlog_chart(n);
  const SymMat c = sample_point(*chart, rng);
  return chart_tangent_mutual_inverse(*chart, c, random_hollow(rng, n, 1.0),
                                      random_hollow(rng, n, 1.0));
}

double check_logscaling_tangent_inverse(int n, SplitMix64& rng) {
  const ChartPtr chart = logscaling_chart(n);
  const SymMat c = sample_point(*offlog_chart(n), rng);
  return chart_tangent_mutual_inverse(*chart, c, random_hollow(rng, n, 1.0),
                                      rowzero_embed(random_symmetric(rng, n - 1, 1.0)));
}

// ---- isometries ----------------------------------------------------------

double check_hollow_embed_norm(int n, SplitMix64& rng) {
  const SymMat s = random_symmetric(rng, n - 1, 1.0);
  const SymMat h = hollow_embed(s);
  const double r1 = std::abs(h.frobenius_norm() - s.frobenius_norm());
  const double r2 = (hollow_extract(h) - s).frobenius_norm();
  return std::max(r1, r2);
}

double check_rowzero_embed_norm(int n, SplitMix64& rng) {
  const SymMat s = random_symmetric(rng, n - 1, 1.0);
  const SymMat r = rowzero_embed(s);
  const double r1 = std::abs(r.frobenius_norm() - s.frobenius_norm());
  const double r2 = (rowzero_extract(r) - s).frobenius_norm();
  return std::max(r1, r2);
}

double check_hollow_embed_golden(int, SplitMix64&) {
  // 4x4 source with diagonal 1..4 and upper entries 5..10; the image must
  // carry diag/sqrt(2) in the first row and the off part in the trailing
  // block, entry for entry.
  const SymMat x = SymMat::from_rows({{1, 5, 6, 7}, {5, 2, 8, 9}, {6, 8, 3, 10}, {7, 9, 10, 4}});
  const SymMat img = hollow_embed(x);
  const double sqrt2 = std::sqrt(2.0);
  SymMat expected(5);
  for (int k = 0; k < 4; ++k) expected.set(0, k + 1, x(k, k) / sqrt2);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) expected.set(i + 1, j + 1, x(i, j));
  double worst = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) worst = std::max(worst, std::abs(img(i, j) - expected(i, j)));
  return worst;
}

double check_helmert_identities(int n, SplitMix64&) {
  const HelmertMat h = helmert(n);
  double worst = 0.0;
  for (int r = 0; r < n - 1; ++r) {
    double s = 0.0;
    for (int c = 0; c < n; ++c) s += h.b(r, c);
    worst = std::max(worst, std::abs(s));
  }
  const Mat bbt = kernels::matmul(h.b, h.b.transposed());
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j)
      worst = std::max(worst, std::abs(bbt(i, j) - (i == j ? 1.0 : 0.0)));
  const Mat btb = kernels::matmul(h.b.transposed(), h.b);
  const double offset = 1.0 / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(btb(i, j) - ((i == j ? 1.0 : 0.0) - offset)));
  return worst;
}

double check_isometry_ol_distance(int n, SplitMix64& rng) {
  const SymMat x = random_spd(rng, n - 1, suite_scale(n));
  const SymMat y = random_spd(rng, n - 1, suite_scale(n));
  const double d_src = (mat_log(x) - mat_log(y)).frobenius_norm();
  const ChartPtr chart = offlog_chart(n);
  const double d_tgt =
      (chart->fwd(spd_to_corr_offlog(x)) - chart->fwd(spd_to_corr_offlog(y))).frobenius_norm();
  return rel(std::abs(d_tgt - d_src), d_src);
}

double check_isometry_ol_homomorphism(int n, SplitMix64& rng) {
  const SymMat x = random_spd(rng, n - 1, suite_scale(n));
  const SymMat y = random_spd(rng, n - 1, suite_scale(n));
  const SymMat product = mat_exp(mat_log(x) + mat_log(y));
  const SymMat lhs = spd_to_corr_offlog(product);
  const ChartPtr chart = offlog_chart(n);
  const SymMat rhs = star_raw(*chart, spd_to_corr_offlog(x), spd_to_corr_offlog(y));
  return rel((lhs - rhs).frobenius_norm(), lhs.frobenius_norm());
}

double check_isometry_ls_distance(int n, SplitMix64& rng) {
  const SymMat x = random_spd(rng, n - 1, suite_scale(n));
  const SymMat y = random_spd(rng, n - 1, suite_scale(n));
  const double d_src = (mat_log(x) - mat_log(y)).frobenius_norm();
  const ChartPtr chart = logscaling_chart(n);
  const double d_tgt = (chart->fwd(spd_to_corr_logscaling(x)) -
                        chart->fwd(spd_to_corr_logscaling(y)))
                           .frobenius_norm();
  return rel(std::abs(d_tgt - d_src), d_src);
}

double check_isometry_ls_homomorphism(int n, SplitMix64& rng) {
  const SymMat x = random_spd(rng, n - 1, suite_scale(n));
  const SymMat y = random_spd(rng, n - 1, suite_scale(n));
  const SymMat product = mat_exp(mat_log(x) + mat_log(y));
  const SymMat lhs = spd_to_corr_logscaling(product);
  const ChartPtr chart = logscaling_chart(n);
  const SymMat rhs = star_raw(*chart, spd_to_corr_logscaling(x), spd_to_corr_logscaling(y));
  return rel((lhs - rhs).frobenius_norm(), lhs.frobenius_norm());
}

double check_isometry_composite_distance(int n, SplitMix64& rng) {
  const ChartPtr ol = offlog_chart(n);
  const ChartPtr ls = logscaling_chart(n);
  const SymMat c1 = sample_point(*ol, rng);
  const SymMat c2 = sample_point(*ol, rng);
  const double d_ol = (ol->fwd(c1) - ol->fwd(c2)).frobenius_norm();
  const double d_ls = (ls->fwd(corr_offlog_to_logscaling(c1)) -
                       ls->fwd(corr_offlog_to_logscaling(c2)))
                          .frobenius_norm();
  return rel(std::abs(d_ls - d_ol), d_ol);
}

double check_isometry_composite_roundtrip(int n, SplitMix64& rng) {
  const ChartPtr ol = offlog_chart(n);
  const SymMat c = sample_point(*ol, rng);
  const SymMat back = corr_logscaling_to_offlog(corr_offlog_to_logscaling(c));
  return rel((back - c).frobenius_norm(), c.frobenius_norm());
}

double check_isometry_ol_pushforward_fd(int n, SplitMix64& rng) {
  // d Phi at X vs the finite difference of Phi along X + tV
  const SymMat x = random_spd(rng, n - 1, suite_scale(n));
  const SymMat v = random_symmetric(rng, n - 1, 1.0);
  const ChartPtr chart = offlog_chart(n);
  const SymMat an = chart->dinv(hollow_embed(mat_log(x)), hollow_embed(dlog(x, v)));
  const SymMat fd = (1.0 / (2.0 * kFdStep)) * (spd_to_corr_offlog(x + kFdStep * v) -
                                               spd_to_corr_offlog(x - kFdStep * v));
  return rel((an - fd).frobenius_norm(), an.frobenius_norm());
}

// ---- quotient bundle ------------------------------------------------------

double check_fiber_invariance(int n, SplitMix64& rng) {
  const SymMat sigma = random_spd(rng, n, suite_scale(n));
  const SymMat d = random_positive_diagonal(rng, n, 0.8);
  const SymMat moved = mat_exp(mat_log(sigma) + mat_log(d));
  return (project(moved).canon - project(sigma).canon).frobenius_norm();
}

double check_section_property(int n, SplitMix64& rng) {
  const Coset c = project(random_spd(rng, n, suite_scale(n)));
  const double r1 = (project(canonical_section(c)).canon - c.canon).frobenius_norm();
  const double r2 = (project(correlation_section(c)).canon - c.canon).frobenius_norm();
  return std::max(r1, r2);
}

double check_canonical_isometry(int n, SplitMix64& rng) {
  const Coset c1 = project(random_spd(rng, n, suite_scale(n)));
  const Coset c2 = project(random_spd(rng, n, suite_scale(n)));
  const double dq = coset_distance(c1, c2);
  const double dle =
      (mat_log(canonical_section(c1)) - mat_log(canonical_section(c2))).frobenius_norm();
  return rel(std::abs(dle - dq), dq);
}

double check_lift_horizontal(int n, SplitMix64& rng) {
  const SymMat p = random_spd(rng, n, suite_scale(n));
  const SymMat v = random_hollow(rng, n, 1.0);
  const SymMat pulled = dlog(p, horizontal_lift(p, v));
  return diag_project(pulled).frobenius_norm();
}

double check_lift_projection(int n, SplitMix64& rng) {
  const SymMat p = random_spd(rng, n, suite_scale(n));
  const SymMat v = random_hollow(rng, n, 1.0);
  const SymMat pulled = dlog(p, horizontal_lift(p, v));
  return rel((off_project(pulled) - v).frobenius_norm(), v.frobenius_norm());
}

double check_quotient_metric_vs_lifted(int n, SplitMix64& rng) {
  const Coset c = project(random_spd(rng, n, suite_scale(n)));
  const SymMat v = random_hollow(rng, n, 1.0);
  const SymMat w = random_hollow(rng, n, 1.0);
  const SymMat s = canonical_section(c);
  const double gq = g_quotient(c, v, w);
  const double glift = g_le(s, horizontal_lift(s, v), horizontal_lift(s, w));
  return rel(std::abs(glift - gq), std::abs(gq));
}

double check_gq_equals_ol_pullback(int n, SplitMix64& rng) {
  const Coset c = project(random_spd(rng, n, suite_scale(n)));
  const SymMat v = random_hollow(rng, n, 1.0);
  const SymMat w = random_hollow(rng, n, 1.0);
  const double gq = g_quotient(c, v, w);
  const double pulled = corr_section_pullback_ol(c, v, w);
  return rel(std::abs(pulled - gq), std::abs(gq));
}

double check_defect_identity(int n, SplitMix64& rng) {
  const Coset c = project(random_spd(rng, n, suite_scale(n)));
  const SymMat v = random_hollow(rng, n, 1.0);
  const double le = corr_section_pullback_le(c, v, v);
  const double gq = g_quotient(c, v, v);
  const double dl = corr_section_pullback_dl(c, v, v);
  const double identity = rel(std::abs(le - gq - dl), std::abs(le));
  const double negativity = std::max(0.0, -(le - gq));
  return std::max(identity, negativity);
}

double check_split_orthogonality(int n, SplitMix64& rng) {
  const SymMat sigma = random_spd(rng, n, suite_scale(n));
  const SymMat a = mat_log(sigma);
  const SymMat hol = unit_norm(random_hollow(rng, n, 1.0));
  const SymMat dia = unit_norm(random_diagonal(rng, n, 1.0));
  return std::abs(g_le(sigma, dexp(a, hol), dexp(a, dia)));
}

double check_defect_witness(int n, SplitMix64& rng) {
  const Coset c = project(random_spd(rng, n, suite_scale(n)));
  const SymMat v = unit_norm(random_hollow(rng, n, 1.0));
  return vertical_defect(c, v);
}

// ---- statistics -----------------------------------------------------------

double check_mean_translation(const LeChart& chart, SplitMix64& rng) {
  const int count = 5;
  std::vector<SymMat> points;
  for (int i = 0; i < count; ++i) points.push_back(sample_point(chart, rng));
  const SymMat shift = sample_point(chart, rng);

  std::vector<SymMat> shifted;
  for (const auto& p : points) shifted.push_back(star_raw(chart, p, shift));

  const SymMat mean_plain = chart.inv(mean_of(batch_fwd(chart, points)));
  const SymMat mean_shifted = chart.inv(mean_of(batch_fwd(chart, shifted)));
  return (chart.fwd(mean_shifted) - chart.fwd(star_raw(chart, mean_plain, shift)))
      .frobenius_norm();
}

double check_cov_translation(int n, SplitMix64& rng) {
  const ChartPtr chart = spd_chart(n);
  const int count = 5;
  std::vector<GroupElem> g, h, gs, hs;
  GroupElem a(chart, sample_point(*chart, rng));
  GroupElem b(chart, sample_point(*chart, rng));
  for (int i = 0; i < count; ++i) {
    g.emplace_back(chart, sample_point(*chart, rng));
    h.emplace_back(chart, sample_point(*chart, rng));
    gs.push_back(star(g.back(), a));
    hs.push_back(star(h.back(), b));
  }
  const GeometricCov c0 = geometric_cov(g, h);
  const GeometricCov c1 = geometric_cov(gs, hs);
  double worst = 0.0;
  worst = std::max(worst, (c1.gg - c0.gg).frobenius_norm());
  worst = std::max(worst, (c1.hh - c0.hh).frobenius_norm());
  worst = std::max(worst, (c1.gh - c0.gh).frobenius_norm());
  return worst;
}

double check_cov_psd(int n, SplitMix64& rng) {
  const ChartPtr chart = spd_chart(n);
  const int count = 4;  // fewer samples than model dimension: rank-deficient
  std::vector<GroupElem> g;
  for (int i = 0; i < count; ++i) g.emplace_back(chart, sample_point(*chart, rng));
  const GeometricCov cov = geometric_cov(g, g);
  SymMat sgg = SymMat::symmetrized(cov.gg);
  const EigDecomp e = sym_eig(sgg);
  double trace = 0.0;
  for (int i = 0; i < sgg.dim(); ++i) trace += sgg(i, i);
  if (!(trace > 0.0)) return 0.0;
  return std::max(0.0, -e.values.front() / trace);
}

// ---- registry -------------------------------------------------------------

enum class Over { Dims, Spd, OffLog, LogScaling, AllCharts };

struct CheckSpec {
  const char* id;
  CheckKind kind;
  double Tolerances::*tol;
  bool deterministic;  // no randomness: one evaluation per dimension
  int fixed_dim;       // 0 = run over opts.dims
  Over over;
  std::function<double(int, SplitMix64&)> dim_eval;
  std::function<double(const LeChart&, SplitMix64&)> chart_eval;
};

std::vector<CheckSpec> build_registry() {
  std::vector<CheckSpec> reg;

  auto add_dim = [&](const char* id, double Tolerances::*tol,
                     std::function<double(int, SplitMix64&)> f, CheckKind kind = CheckKind::MaxResidual,
                     bool deterministic = false, int fixed_dim = 0) {
    reg.push_back({id, kind, tol, deterministic, fixed_dim, Over::Dims, std::move(f), nullptr});
  };
  auto add_chart = [&](const char* id, double Tolerances::*tol, Over over,
                       std::function<double(const LeChart&, SplitMix64&)> f) {
    reg.push_back({id, CheckKind::MaxResidual, tol, false, 0, over, nullptr, std::move(f)});
  };

  add_chart("roundtrip/spd-le", &Tolerances::roundtrip, Over::Spd, check_roundtrip);
  add_chart("roundtrip/corr-offlog", &Tolerances::roundtrip_iterative, Over::OffLog,
            check_roundtrip);
  add_chart("roundtrip/corr-logscaling", &Tolerances::roundtrip_iterative, Over::LogScaling,
            check_roundtrip);

  add_chart("group/axioms/spd-le", &Tolerances::group, Over::Spd, check_group_axioms);
  add_chart("group/axioms/corr-offlog", &Tolerances::group, Over::OffLog, check_group_axioms);
  add_chart("group/axioms/corr-logscaling", &Tolerances::group, Over::LogScaling,
            check_group_axioms);
  add_chart("group/dist-biinvariance", &Tolerances::group, Over::AllCharts,
            check_dist_biinvariance);
  add_chart("group/geodesic-affinity", &Tolerances::geodesic_affinity, Over::AllCharts,
            check_geodesic_affinity);
  add_chart("group/inverse-consistency", &Tolerances::group, Over::AllCharts,
            check_inverse_consistency);

  add_dim("scalers/equivariance", &Tolerances::scalers, check_shift_equivariance);
  add_dim("scalers/shift-of-log", &Tolerances::scalers, check_shift_of_log);
  add_dim("scalers/inverse-relation", &Tolerances::scalers, check_shift_inverse_relation);
  add_dim("scalers/multistart-shift", &Tolerances::multistart, check_multistart_shift);
  add_dim("scalers/multistart-scaling", &Tolerances::multistart, check_multistart_scaling);

  add_dim("charts/offlog-image-hollow", &Tolerances::scalers, check_offlog_image_hollow);
  add_dim("charts/logscaling-image-rowzero", &Tolerances::rowzero_image,
          check_logscaling_image_rowzero);

  add_dim("metric/split", &Tolerances::metric_split, check_metric_split);
  add_dim("metric/degeneracy", &Tolerances::degeneracy, check_metric_degeneracy);

  add_dim("tangent/dexp-fd", &Tolerances::tangent_fd, check_dexp_fd);
  add_dim("tangent/dlog-fd", &Tolerances::tangent_fd, check_dlog_fd);
  add_dim("tangent/exp-log-inverse", &Tolerances::tangent_inverse, check_exp_log_mutual_inverse);
  add_dim("tangent/offlog-dfwd-fd", &Tolerances::tangent_fd, check_offlog_dfwd_fd);
  add_dim("tangent/offlog-dinv-fd", &Tolerances::tangent_fd, check_offlog_dinv_fd);
  add_dim("tangent/offlog-inverse", &Tolerances::tangent_inverse, check_offlog_tangent_inverse);
  add_dim("tangent/logscaling-dfwd-fd", &Tolerances::tangent_fd, check_logscaling_dfwd_fd);
  add_dim("tangent/logscaling-dinv-fd", &Tolerances::tangent_fd, check_logscaling_dinv_fd);
  add_dim("tangent/logscaling-inverse", &Tolerances::tangent_inverse,
          check_logscaling_tangent_inverse);

  add_dim("isometry/hollow-embed-norm", &Tolerances::embed_norm, check_hollow_embed_norm);
  add_dim("isometry/rowzero-embed-norm", &Tolerances::embed_norm, check_rowzero_embed_norm);
  add_dim("isometry/hollow-embed-golden", &Tolerances::embed_norm, check_hollow_embed_golden,
          CheckKind::MaxResidual, true, 5);
  add_dim("isometry/helmert-identities", &Tolerances::helmert, check_helmert_identities,
          CheckKind::MaxResidual, true);
  add_dim("isometry/ol-distance", &Tolerances::isometry, check_isometry_ol_distance);
  add_dim("isometry/ol-homomorphism", &Tolerances::isometry, check_isometry_ol_homomorphism);
  add_dim("isometry/ol-pushforward-fd", &Tolerances::tangent_fd, check_isometry_ol_pushforward_fd);
  add_dim("isometry/ls-distance", &Tolerances::isometry, check_isometry_ls_distance);
  add_dim("isometry/ls-homomorphism", &Tolerances::isometry, check_isometry_ls_homomorphism);
  add_dim("isometry/composite-distance", &Tolerances::isometry, check_isometry_composite_distance);
  add_dim("isometry/composite-roundtrip", &Tolerances::isometry,
          check_isometry_composite_roundtrip);

  add_dim("quotient/fiber-invariance", &Tolerances::scalers, check_fiber_invariance);
  add_dim("quotient/section-property", &Tolerances::lift, check_section_property);
  add_dim("quotient/canonical-isometry", &Tolerances::section_isometry, check_canonical_isometry);
  add_dim("quotient/lift-horizontal", &Tolerances::lift, check_lift_horizontal);
  add_dim("quotient/lift-projection", &Tolerances::lift, check_lift_projection);
  add_dim("quotient/metric-vs-lifted", &Tolerances::lift, check_quotient_metric_vs_lifted);
  add_dim("quotient/gq-equals-ol-pullback", &Tolerances::quotient, check_gq_equals_ol_pullback);
  add_dim("quotient/defect-identity", &Tolerances::quotient, check_defect_identity);
  add_dim("quotient/split-orthogonality", &Tolerances::split_cross, check_split_orthogonality);
  add_dim("quotient/defect-witness", &Tolerances::defect_witness, check_defect_witness,
          CheckKind::MinWitness);

  add_chart("stats/mean-translation", &Tolerances::mean_translation, Over::AllCharts,
            check_mean_translation);
  add_dim("stats/cov-translation", &Tolerances::cov_translation, check_cov_translation);
  add_dim("stats/cov-psd", &Tolerances::cov_psd, check_cov_psd);

  return reg;
}

const std::vector<CheckSpec>& registry() {
  static const std::vector<CheckSpec> reg = build_registry();
  return reg;
}

bool selected(const VerifyOptions& opts, const std::string& id) {
  if (opts.only.empty()) return true;
  for (const auto& prefix : opts.only)
    if (id.compare(0, prefix.size(), prefix) == 0) return true;
  return false;
}

double eval_one(const CheckSpec& spec, int n, SplitMix64& rng) {
  if (spec.dim_eval) return spec.dim_eval(n, rng);
  switch (spec.over) {
    case Over::Spd:
      return spec.chart_eval(*spd_chart(n), rng);
    case Over::OffLog:
      return spec.chart_eval(*offlog_chart(n), rng);
    case Over::LogScaling:
      return spec.chart_eval(*logscaling_chart(n), rng);
    case Over::AllCharts: {
      const double a = spec.chart_eval(*spd_chart(n), rng);
      const double b = spec.chart_eval(*offlog_chart(n), rng);
      const double c = spec.chart_eval(*logscaling_chart(n), rng);
      return std::max({a, b, c});
    }
    case Over::Dims:
      break;
  }
  throw Error("check has no evaluator");
}

}  // namespace

std::vector<std::string> all_check_ids() {
  std::vector<std::string> ids;
  for (const auto& spec : registry()) ids.emplace_back(spec.id);
  return ids;
}

VerifyReport run_verify(const VerifyOptions& opts) {
  if (opts.dims.empty()) throw Error("verify needs at least one dimension");
  for (int n : opts.dims)
    if (n < 2) throw Error("verify dimensions must be >= 2");
  if (opts.trials < 1) throw Error("verify needs at least one trial");

  VerifyReport report;
  uint64_t check_index = 0;

  for (const auto& spec : registry()) {
    const uint64_t this_index = check_index++;
    if (!selected(opts, spec.id)) continue;

    const std::vector<int> dims =
        spec.fixed_dim > 0 ? std::vector<int>{spec.fixed_dim} : opts.dims;
    const int trials = spec.deterministic ? 1 : opts.trials;
    const int dim_count = static_cast<int>(dims.size());
    const int total = dim_count * trials;

    std::vector<double> values(static_cast<size_t>(total));
    std::exception_ptr failure;

    const bool par = opts.parallel && parallel::enabled() && total > 1;
#pragma omp parallel for schedule(dynamic) if (par)
    for (int g = 0; g < total; ++g) {
      try {
        const int n = dims[g / trials];
        const int trial = g % trials;
        SplitMix64 rng(fold_seed(fold_seed(fold_seed(opts.seed, this_index),
                                           static_cast<uint64_t>(n)),
                                 static_cast<uint64_t>(trial)));
        values[g] = eval_one(spec, n, rng);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    CheckResult result;
    result.id = spec.id;
    result.kind = spec.kind;
    result.threshold = opts.tol.*spec.tol;
    result.evaluations = total;
    if (spec.kind == CheckKind::MaxResidual) {
      result.value = *std::max_element(values.begin(), values.end());
      result.pass = result.value <= result.threshold;
    } else {
      // witness per dimension is the best trial; the check value is the
      // weakest dimension
      double weakest = std::numeric_limits<double>::infinity();
      for (int d = 0; d < dim_count; ++d) {
        double best = -std::numeric_limits<double>::infinity();
        for (int t = 0; t < trials; ++t) best = std::max(best, values[d * trials + t]);
        weakest = std::min(weakest, best);
      }
      result.value = weakest;
      result.pass = result.value > result.threshold;
    }
    report.checks.push_back(std::move(result));
  }
  return report;
}

std::string report_to_json(const VerifyReport& report, const VerifyOptions& opts) {
  std::string out = "{\n  \"seed\": " + std::to_string(opts.seed);
  out += ",\n  \"trials\": " + std::to_string(opts.trials);
  out += ",\n  \"dims\": [";
  for (size_t i = 0; i < opts.dims.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(opts.dims[i]);
  }
  out += "],\n  \"checks\": [\n";
  for (size_t i = 0; i < report.checks.size(); ++i) {
    const auto& c = report.checks[i];
    out += "    {\"id\": \"" + c.id + "\", \"kind\": \"";
    out += (c.kind == CheckKind::MaxResidual) ? "max_residual" : "min_witness";
    out += "\", \"value\": " + format_double(c.value);
    out += ", \"threshold\": " + format_double(c.threshold);
    out += ", \"evaluations\": " + std::to_string(c.evaluations);
    out += std::string(", \"pass\": ") + (c.pass ? "true" : "false") + "}";
    if (i + 1 < report.checks.size()) out += ",";
    out += "\n";
  }
  out += "  ],\n  \"pass\": ";
  out += report.all_pass() ? "true" : "false";
  out += "\n}\n";
  return out;
}

std::string report_to_text(const VerifyReport& report) {
  std::string out;
  for (const auto& c : report.checks) {
    out += c.pass ? "PASS  " : "FAIL  ";
    out += c.id;
    if (c.id.size() < 36) out += std::string(36 - c.id.size(), ' ');
    out += (c.kind == CheckKind::MaxResidual) ? "  max residual " : "  min witness  ";
    out += format_double(c.value);
    out += (c.kind == CheckKind::MaxResidual) ? "  <= " : "  >  ";
    out += format_double(c.threshold);
    out += "\n";
  }
  return out;
}

}  // namespace loglie
