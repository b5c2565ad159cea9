#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "loglie/corr.hpp"
#include "loglie/quotient.hpp"
#include "loglie/scalers.hpp"
#include "loglie/spd.hpp"
#include "loglie/symlin.hpp"
#include "test_support.hpp"

using namespace loglie;
using namespace loglie::testing;

TEST_CASE("project: diagonal matrices and the identity hit the zero coset") {
  CHECK(project(SymMat::identity(3)).canon.frobenius_norm() <= 1e-15);
  CHECK(project(SymMat::diagonal({0.5, 2.0, 9.0})).canon.frobenius_norm() <= 1e-14);
}

TEST_CASE("project is invariant along the fiber") {
  SplitMix64 rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const SymMat sigma = random_spd(rng, 4, 0.6);
    const SymMat d = random_positive_diagonal(rng, 4, 0.8);
    const SymMat moved = mat_exp(mat_log(sigma) + mat_log(d));
    CHECK(coset_distance(project(moved), project(sigma)) <= 1e-10);
    CHECK(coset_equal(project(moved), project(sigma), 1e-10));
  }
}

TEST_CASE("canonical_section: zero coset, 2x2 closed form, section property") {
  const Coset zero = project(SymMat::identity(2));
  CHECK(frob_diff(canonical_section(zero), SymMat::identity(2)) == 0.0);

  const double s = 0.8;
  SymMat canon(2);
  canon.set(0, 1, s);
  Coset c;
  c.rep = SymMat::identity(2);
  c.canon = canon;
  const SymMat sec = canonical_section(c);
  CHECK(sec(0, 0) == doctest::Approx(std::cosh(s)).epsilon(1e-14));
  CHECK(sec(0, 1) == doctest::Approx(std::sinh(s)).epsilon(1e-14));

  SplitMix64 rng(72);
  for (int trial = 0; trial < 8; ++trial) {
    const Coset coset = project(random_spd(rng, 4, 0.6));
    CHECK(coset_distance(project(canonical_section(coset)), coset) <= 1e-10);
    // diag(log s) == 0: the canonical point lies on the hollow-log slice
    CHECK(diag_project(mat_log(canonical_section(coset))).frobenius_norm() <= 1e-11);
  }
}

TEST_CASE("canonical_section is well-defined across representatives") {
  SplitMix64 rng(73);
  const SymMat sigma = random_spd(rng, 3, 0.6);
  const SymMat d = random_positive_diagonal(rng, 3, 0.8);
  const SymMat other_rep = mat_exp(mat_log(sigma) + mat_log(d));
  CHECK(frob_diff(canonical_section(project(sigma)), canonical_section(project(other_rep))) <=
        1e-10);
}

TEST_CASE("correlation_section: zero coset, 2x2 tanh form, cross-check with the chart") {
  const Coset zero = project(SymMat::identity(2));
  CHECK(frob_diff(correlation_section(zero), SymMat::identity(2)) == 0.0);

  SymMat canon(2);
  canon.set(0, 1, 1.0);
  Coset c;
  c.rep = SymMat::identity(2);
  c.canon = canon;
  const SymMat sec = correlation_section(c);
  CHECK(sec(0, 0) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(sec(0, 1) == doctest::Approx(std::tanh(1.0)).epsilon(1e-11));

  SplitMix64 rng(74);
  const ChartPtr ol = offlog_chart(4);
  for (int trial = 0; trial < 6; ++trial) {
    const Coset coset = project(random_spd(rng, 4, 0.6));
    const SymMat through_section = correlation_section(coset);
    const SymMat through_chart = ol->inv(coset.canon);
    CHECK(frob_diff(through_section, through_chart) <= 1e-11);
    CHECK(coset_distance(project(through_section), coset) <= 1e-9);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(through_section(i, i) - 1.0) <= 1e-10);
  }
}

TEST_CASE("horizontal_lift: identity base point, horizontality, projection") {
  SplitMix64 rng(75);
  const SymMat v0 = random_hollow(rng, 3, 1.0);
  CHECK(frob_diff(horizontal_lift(SymMat::identity(3), v0), v0) <= 1e-14);

  for (int trial = 0; trial < 10; ++trial) {
    const SymMat p = random_spd(rng, 4, 0.6);
    const SymMat v = random_hollow(rng, 4, 1.0);
    const SymMat lift = horizontal_lift(p, v);
    const SymMat pulled = dlog(p, lift);
    CHECK(diag_project(pulled).frobenius_norm() <= 1e-10);
    CHECK(frob_diff(off_project(pulled), v) <= 1e-9);
  }
}

TEST_CASE("g_quotient: constant metric, agreement with lifted g_le") {
  SplitMix64 rng(76);
  const Coset zero = project(SymMat::identity(3));
  const SymMat v = random_hollow(rng, 3, 1.0);
  CHECK(g_quotient(zero, v, v) == doctest::Approx(frobenius(v, v)));

  for (int trial = 0; trial < 8; ++trial) {
    const Coset c = project(random_spd(rng, 3, 0.6));
    const SymMat a = random_hollow(rng, 3, 1.0);
    const SymMat b = random_hollow(rng, 3, 1.0);
    const SymMat s = canonical_section(c);
    const double lifted = g_le(s, horizontal_lift(s, a), horizontal_lift(s, b));
    CHECK(std::abs(g_quotient(c, a, b) - lifted) <= 1e-9 * (1.0 + std::abs(lifted)));

    const double pulled = corr_section_pullback_ol(c, a, b);
    CHECK(std::abs(g_quotient(c, a, b) - pulled) <= 1e-8 * (1.0 + std::abs(pulled)));
  }
}

TEST_CASE("canonical section is an isometry onto its image") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    const Coset c1 = project(random_spd(rng, 4, 0.6));
    const Coset c2 = project(random_spd(rng, 4, 0.6));
    const double dq = coset_distance(c1, c2);
    const double dle =
        (mat_log(canonical_section(c1)) - mat_log(canonical_section(c2))).frobenius_norm();
    CHECK(std::abs(dle - dq) <= 1e-10 * (1.0 + dq));
  }
}

TEST_CASE("vertical defect: zero tangent, identity with the diagonal pullback") {
  SplitMix64 rng(78);
  const Coset c = project(random_spd(rng, 3, 0.6));
  CHECK(vertical_defect(c, SymMat(3)) == 0.0);

  for (int trial = 0; trial < 8; ++trial) {
    const Coset coset = project(random_spd(rng, 3, 0.6));
    const SymMat v = random_hollow(rng, 3, 1.0);
    const double defect = vertical_defect(coset, v);
    const double dl = corr_section_pullback_dl(coset, v, v);
    CHECK(defect >= -1e-12);
    CHECK(std::abs(defect - dl) <= 1e-8 * (1.0 + std::abs(dl)));
  }
}

TEST_CASE("vertical defect at the zero coset matches a finite-difference shift derivative") {
  // at the zero coset, the defect along v equals ||dD(0)(v)||^2; the
  // independent route is the central difference of S -> D(S) at 0
  SplitMix64 rng(79);
  for (int n : {2, 3, 4}) {
    const Coset zero = project(SymMat::identity(n));
    const SymMat v = random_hollow(rng, n, 1.0);
    const double h = 1e-6;
    const SymMat fd =
        (1.0 / (2.0 * h)) * (unit_diag_shift(h * v) - unit_diag_shift((-h) * v));
    const double expected = frobenius(fd, fd);
    CHECK(vertical_defect(zero, v) == doctest::Approx(expected).epsilon(1e-5));
  }
}

TEST_CASE("a positive defect witness exists at random cosets for n=2..6") {
  SplitMix64 rng(80);
  for (int n = 2; n <= 6; ++n) {
    double witness = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const Coset c = project(random_spd(rng, n, suite_scale(n)));
      SymMat v = random_hollow(rng, n, 1.0);
      v *= 1.0 / v.frobenius_norm();
      witness = std::max(witness, vertical_defect(c, v));
    }
    CHECK(witness > 1e-6);
  }
}

TEST_CASE("log-Euclidean metric splits orthogonally in the trivialization") {
  SplitMix64 rng(81);
  for (int trial = 0; trial < 10; ++trial) {
    const SymMat sigma = random_spd(rng, 4, 0.6);
    const SymMat a = mat_log(sigma);
    SymMat hol = random_hollow(rng, 4, 1.0);
    hol *= 1.0 / hol.frobenius_norm();
    SymMat dia = random_diagonal(rng, 4, 1.0);
    dia *= 1.0 / dia.frobenius_norm();
    CHECK(std::abs(g_le(sigma, dexp(a, hol), dexp(a, dia))) <= 1e-11);
  }
}
