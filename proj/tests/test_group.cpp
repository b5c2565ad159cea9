#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "loglie/corr.hpp"
#include "loglie/group.hpp"
#include "loglie/kernels.hpp"
#include "loglie/spd.hpp"
#include "loglie/symlin.hpp"
#include "test_support.hpp"

using namespace loglie;
using namespace loglie::testing;

namespace {
SymMat corr2(double rho) {
  SymMat c(2);
  c.set(0, 0, 1.0);
  c.set(1, 1, 1.0);
  c.set(0, 1, rho);
  return c;
}
}  // namespace

TEST_CASE("star: identity and diagonal SPD case") {
  const ChartPtr chart = spd_chart(2);
  const GroupElem e = identity_elem(chart);
  CHECK(frob_diff(e.value, SymMat::identity(2)) == 0.0);

  const GroupElem a(chart, SymMat::diagonal({4.0, 9.0}));
  const GroupElem b(chart, SymMat::diagonal({0.25, 1.0 / 9.0}));
  CHECK(frob_diff(star(a, b).value, SymMat::identity(2)) <= 1e-14);
  CHECK(frob_diff(star(e, a).value, a.value) <= 1e-14);
}

TEST_CASE("star: off-log tanh addition law at n=2") {
  const ChartPtr chart = offlog_chart(2);
  const GroupElem a(chart, corr2(0.5));
  const GroupElem b(chart, corr2(0.5));
  const GroupElem c = star(a, b);
  CHECK(c.value(0, 1) == doctest::Approx(0.8).epsilon(1e-11));
  CHECK(c.value(0, 0) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("star rejects mismatched charts") {
  const GroupElem a(spd_chart(2), SymMat::identity(2));
  const GroupElem b(offlog_chart(2), SymMat::identity(2));
  CHECK_THROWS_AS(star(a, b), ChartMismatch);
  const GroupElem c(spd_chart(3), SymMat::identity(3));
  CHECK_THROWS_AS(star(a, c), ChartMismatch);
}

TEST_CASE("GroupElem validates membership") {
  CHECK_THROWS_AS(GroupElem(spd_chart(2), SymMat::diagonal({1.0, -1.0})), MembershipViolation);
  // SPD but not unit-diagonal: fine for spd-le, rejected on the corr charts
  const SymMat spd = SymMat::diagonal({2.0, 3.0});
  CHECK_NOTHROW(GroupElem(spd_chart(2), spd));
  CHECK_THROWS_AS(GroupElem(offlog_chart(2), spd), MembershipViolation);
}

TEST_CASE("grp_inverse: SPD group inverse is the matrix inverse") {
  SplitMix64 rng(31);
  const ChartPtr chart = spd_chart(3);
  const SymMat sigma = random_spd(rng, 3, 0.6);
  const SymMat inv = grp_inverse(GroupElem(chart, sigma)).value;
  const Mat prod = kernels::matmul(sigma.to_mat(), inv.to_mat());
  CHECK(mat_diff(prod, Mat::identity(3)) <= 1e-12);
}

TEST_CASE("grp_inverse: off-log negates the correlation at n=2") {
  const ChartPtr chart = offlog_chart(2);
  const GroupElem inv = grp_inverse(GroupElem(chart, corr2(0.6)));
  CHECK(inv.value(0, 1) == doctest::Approx(-0.6).epsilon(1e-11));
}

TEST_CASE("grp_inverse: log-scaling inverse is the rescaled matrix inverse") {
  SplitMix64 rng(32);
  const ChartPtr ls = logscaling_chart(4);
  const ChartPtr ol = offlog_chart(4);
  const SymMat c = ol->inv(random_hollow(rng, 4, 0.5));
  const SymMat lhs = grp_inverse(GroupElem(ls, c)).value;
  // invert through the eigendecomposition, then rescale to unit diagonal
  const EigDecomp e = sym_eig(c);
  const SymMat c_inv = detail::spectral_apply(e, [](double x) { return 1.0 / x; });
  CHECK(frob_diff(lhs, correlation_rescale(c_inv)) <= 1e-9);
}

TEST_CASE("geodesic endpoints, midpoint, extrapolation, symmetry") {
  SplitMix64 rng(33);
  const ChartPtr chart = spd_chart(2);
  const GroupElem a(chart, SymMat::identity(2));
  const GroupElem b(chart, random_spd(rng, 2, 0.8));
  CHECK(frob_diff(geodesic(a, b, 0.0).value, a.value) <= 1e-12);
  CHECK(frob_diff(geodesic(a, b, 1.0).value, b.value) <= 1e-12);

  // midpoint of (I, Sigma) is the SPD square root
  const SymMat mid = geodesic(a, b, 0.5).value;
  const SymMat sqrt_b = detail::spectral_apply(sym_eig(b.value), [](double x) {
    return std::sqrt(x);
  });
  CHECK(frob_diff(mid, sqrt_b) <= 1e-12);

  const GroupElem d(chart, SymMat::diagonal({std::exp(1.0), std::exp(2.0)}));
  const SymMat extrapolated = geodesic(a, d, 2.0).value;
  CHECK(extrapolated(0, 0) == doctest::Approx(std::exp(2.0)).epsilon(1e-12));
  CHECK(extrapolated(1, 1) == doctest::Approx(std::exp(4.0)).epsilon(1e-12));

  for (double t : {0.3, 0.7, 1.4}) {
    CHECK(frob_diff(geodesic(a, b, t).value, geodesic(b, a, 1.0 - t).value) <= 1e-12);
  }
}

TEST_CASE("dist: definitional values and metric axioms") {
  const ChartPtr chart = spd_chart(2);
  SymMat s(2);
  s.set(0, 1, 0.4);
  const GroupElem x(chart, mat_exp(1.5 * s));
  CHECK(dist(GroupElem(chart, SymMat::identity(2)), x) ==
        doctest::Approx(1.5 * s.frobenius_norm()).epsilon(1e-12));

  const ChartPtr ol = offlog_chart(2);
  const double expected = std::sqrt(2.0) * std::atanh(0.5);
  CHECK(dist(GroupElem(ol, corr2(0.5)), identity_elem(ol)) ==
        doctest::Approx(expected).epsilon(1e-11));

  SplitMix64 rng(34);
  const GroupElem p(chart, random_spd(rng, 2, 0.7));
  const GroupElem q(chart, random_spd(rng, 2, 0.7));
  const GroupElem r(chart, random_spd(rng, 2, 0.7));
  CHECK(dist(p, p) == 0.0);
  CHECK(dist(p, q) == doctest::Approx(dist(q, p)));
  CHECK(dist(p, r) <= dist(p, q) + dist(q, r) + 1e-12);
  // translation invariance
  CHECK(std::abs(dist(star(p, r), star(q, r)) - dist(p, q)) <= 1e-10);
}

TEST_CASE("le_mean and le_variance") {
  SplitMix64 rng(35);
  const ChartPtr chart = spd_chart(3);
  const GroupElem a(chart, random_spd(rng, 3, 0.6));

  // {A, A^-1} averages to the identity with variance ||log A||^2
  const std::vector<GroupElem> pair{a, grp_inverse(a)};
  CHECK(frob_diff(le_mean(pair).value, SymMat::identity(3)) <= 1e-11);
  const double lognorm = mat_log(a.value).frobenius_norm();
  CHECK(le_variance(pair) == doctest::Approx(lognorm * lognorm).epsilon(1e-10));

  const std::vector<GroupElem> single{a};
  CHECK(frob_diff(le_mean(single).value, a.value) <= 1e-11);
  CHECK(le_variance(single) <= 1e-20);

  const GroupElem i3(chart, SymMat::identity(3));
  const GroupElem d3(chart, SymMat::diagonal({std::exp(2.0), 1.0, 1.0}));
  const SymMat mean = le_mean({i3, d3}).value;
  CHECK(mean(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK(mean(1, 1) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(le_mean({}), EmptySample);
}

TEST_CASE("le_mean is translation-equivariant") {
  SplitMix64 rng(36);
  for (const ChartPtr& chart : {spd_chart(3), offlog_chart(3)}) {
    std::vector<GroupElem> xs;
    for (int i = 0; i < 4; ++i)
      xs.emplace_back(chart, chart->inv(random_model_vector(*chart, rng, 0.5)));
    const GroupElem c(chart, chart->inv(random_model_vector(*chart, rng, 0.5)));
    std::vector<GroupElem> shifted;
    for (const auto& x : xs) shifted.push_back(star(x, c));
    CHECK(frob_diff(le_mean(shifted).value, star(le_mean(xs), c).value) <= 1e-10);
  }
}

TEST_CASE("geometric_cov: defining cases") {
  SplitMix64 rng(37);
  const ChartPtr chart = spd_chart(2);
  std::vector<GroupElem> g;
  for (int i = 0; i < 6; ++i) g.emplace_back(chart, random_spd(rng, 2, 0.7));

  const GeometricCov cov = geometric_cov(g, g);
  CHECK((cov.gh - cov.gg).frobenius_norm() == 0.0);
  const Mat rho = geometric_corr(cov);
  for (int i = 0; i < rho.rows(); ++i) CHECK(rho(i, i) == doctest::Approx(1.0).epsilon(1e-14));

  // constant samples: zero covariance, and forming rho must fail
  std::vector<GroupElem> constant(4, g.front());
  const GeometricCov zero = geometric_cov(constant, constant);
  CHECK(zero.gg.frobenius_norm() <= 1e-24);
  CHECK_THROWS_AS(geometric_corr(zero), SingularDiag);

  CHECK_THROWS_AS(geometric_cov(g, std::vector<GroupElem>(g.begin(), g.begin() + 2)),
                  LengthMismatch);
}

TEST_CASE("geometric_cov: symmetry, PSD, Cauchy-Schwarz and translation invariance") {
  SplitMix64 rng(38);
  const ChartPtr chart = spd_chart(2);
  std::vector<GroupElem> g, h;
  for (int i = 0; i < 5; ++i) {
    g.emplace_back(chart, random_spd(rng, 2, 0.7));
    h.emplace_back(chart, random_spd(rng, 2, 0.7));
  }
  const GeometricCov cov = geometric_cov(g, h);
  CHECK(mat_diff(cov.gh, geometric_cov(h, g).gh.transposed()) <= 1e-16);

  const SymMat sgg = SymMat::symmetrized(cov.gg);
  const EigDecomp e = sym_eig(sgg);
  double trace = 0.0;
  for (int i = 0; i < sgg.dim(); ++i) trace += sgg(i, i);
  CHECK(e.values.front() >= -1e-10 * trace);

  // Cauchy-Schwarz along random probe vectors
  SplitMix64 probe_rng(39);
  const int d = cov.gg.rows();
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> v(d), w(d);
    for (auto& x : v) x = probe_rng.next_symmetric();
    for (auto& x : w) x = probe_rng.next_symmetric();
    double vgh = 0.0, vgg = 0.0, whh = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        vgh += v[i] * cov.gh(i, j) * w[j];
        vgg += v[i] * cov.gg(i, j) * v[j];
        whh += w[i] * cov.hh(i, j) * w[j];
      }
    CHECK(std::abs(vgh) <= std::sqrt(std::max(vgg, 0.0)) * std::sqrt(std::max(whh, 0.0)) + 1e-12);
  }

  // translation invariance
  const GroupElem a(chart, random_spd(rng, 2, 0.7));
  const GroupElem b(chart, random_spd(rng, 2, 0.7));
  std::vector<GroupElem> gs, hs;
  for (size_t i = 0; i < g.size(); ++i) {
    gs.push_back(star(g[i], a));
    hs.push_back(star(h[i], b));
  }
  const GeometricCov shifted = geometric_cov(gs, hs);
  CHECK((shifted.gh - cov.gh).frobenius_norm() <= 1e-12);
  CHECK((shifted.gg - cov.gg).frobenius_norm() <= 1e-12);
}

TEST_CASE("model_basis is orthonormal for every chart") {
  for (const ChartPtr& chart : {spd_chart(4), offlog_chart(4), logscaling_chart(4)}) {
    const std::vector<SymMat> basis = model_basis(*chart);
    CHECK(static_cast<int>(basis.size()) == chart->model_dim());
    for (size_t i = 0; i < basis.size(); ++i) {
      CHECK(subspace_residual(basis[i], chart->model_tag) <= 1e-14);
      for (size_t j = 0; j <= i; ++j) {
        const double expected = (i == j) ? 1.0 : 0.0;
        CHECK(frobenius(basis[i], basis[j]) == doctest::Approx(expected).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("is_inverse_consistent: identity map, inversion, and a shifted map") {
  const ChartPtr chart = spd_chart(3);
  const auto ident = [](const SymMat& m) { return m; };
  CHECK(is_inverse_consistent(ident, chart, 20, 5).consistent());

  const auto inv_map = [&](const SymMat& m) { return chart->inv(-chart->fwd(m)); };
  CHECK(is_inverse_consistent(inv_map, chart, 20, 5).consistent());

  // translating by a fixed non-identity element breaks the symmetry by
  // exactly twice the chart norm of the shift
  const SymMat shift = SymMat::diagonal({std::exp(0.5), 1.0, 1.0});
  const auto translate = [&](const SymMat& m) {
    return chart->inv(chart->fwd(m) + chart->fwd(shift));
  };
  const InverseConsistencyReport report = is_inverse_consistent(translate, chart, 20, 5);
  CHECK(!report.consistent());
  CHECK(report.max_violation ==
        doctest::Approx(2.0 * chart->fwd(shift).frobenius_norm()).epsilon(1e-9));
}
