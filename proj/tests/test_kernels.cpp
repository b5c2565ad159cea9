#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "loglie/group.hpp"
#include "loglie/kernels.hpp"
#include "loglie/parallel.hpp"
#include "loglie/spd.hpp"
#include "loglie/symlin.hpp"
#include "loglie/verify.hpp"
#include "test_support.hpp"

using namespace loglie;
using namespace loglie::testing;

namespace {
Mat random_mat(SplitMix64& rng, int r, int c) {
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rng.next_symmetric();
  return m;
}

bool bit_equal(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

bool bit_equal(const SymMat& a, const SymMat& b) {
  if (a.dim() != b.dim()) return false;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}
}  // namespace

TEST_CASE("matmul: serial and OpenMP variants are bit-identical") {
  SplitMix64 rng(91);
  for (int size : {3, 17, 64, 96}) {
    const Mat a = random_mat(rng, size, size + 1);
    const Mat b = random_mat(rng, size + 1, size);
    Mat c_serial(size, size), c_omp(size, size);
    kernels::matmul_serial(a.data(), b.data(), c_serial.data(), size, size + 1, size);
    kernels::matmul_omp(a.data(), b.data(), c_omp.data(), size, size + 1, size);
    CHECK(bit_equal(c_serial, c_omp));
  }
}

TEST_CASE("matmul against a plain triple loop") {
  SplitMix64 rng(92);
  const Mat a = random_mat(rng, 4, 6);
  const Mat b = random_mat(rng, 6, 3);
  const Mat c = kernels::matmul(a, b);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 6; ++k) s += a(i, k) * b(k, j);
      CHECK(c(i, j) == doctest::Approx(s).epsilon(1e-15));
    }
  CHECK_THROWS_AS(kernels::matmul(Mat(2, 3), Mat(2, 3)), DimensionMismatch);
}

TEST_CASE("quadratic_response: serial and OpenMP variants are bit-identical") {
  SplitMix64 rng(93);
  for (int n : {4, 12, 24}) {
    const EigDecomp e = sym_eig(random_symmetric(rng, n, 0.7));
    const Mat g = detail::exp_dd_matrix(e.values);
    const SymMat h_serial = kernels::quadratic_response_serial(e.vectors, g);
    const SymMat h_omp = kernels::quadratic_response_omp(e.vectors, g);
    CHECK(bit_equal(h_serial, h_omp));
  }
}

TEST_CASE("quadratic_response against the quadruple-sum definition") {
  SplitMix64 rng(94);
  const int n = 5;
  const EigDecomp e = sym_eig(random_symmetric(rng, n, 0.7));
  const Mat g = detail::exp_dd_matrix(e.values);
  const SymMat h = kernels::quadratic_response(e.vectors, g);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          s += e.vectors(i, j) * e.vectors(i, k) * e.vectors(l, j) * e.vectors(l, k) * g(j, k);
      CHECK(h(i, l) == doctest::Approx(s).epsilon(1e-13));
    }
}

TEST_CASE("cholesky solve on a known SPD system") {
  const SymMat a = SymMat::from_rows({{4, 2, 0}, {2, 5, 1}, {0, 1, 6}});
  const std::vector<double> x = kernels::spd_solve(a, {2.0, -1.0, 3.0});
  const std::vector<double> back = a.apply(x);
  CHECK(back[0] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(back[1] == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(back[2] == doctest::Approx(3.0).epsilon(1e-13));
  CHECK_THROWS_AS(kernels::spd_solve(SymMat::diagonal({1.0, -1.0}), {1.0, 1.0}),
                  NotPositiveDefinite);
}

TEST_CASE("spd_condition") {
  CHECK(kernels::spd_condition(SymMat::identity(4)) == doctest::Approx(1.0));
  CHECK(kernels::spd_condition(SymMat::diagonal({1.0, 1e-13})) >= 1e12);
  CHECK(std::isinf(kernels::spd_condition(SymMat::diagonal({1.0, -1.0}))));
}

TEST_CASE("batch_fwd and mean_of match per-sample evaluation with parallel on and off") {
  SplitMix64 rng(95);
  const ChartPtr chart = spd_chart(4);
  std::vector<SymMat> points;
  for (int i = 0; i < 24; ++i) points.push_back(random_spd(rng, 4, 0.6));

  parallel::set_enabled(false);
  const std::vector<SymMat> images_serial = batch_fwd(*chart, points);
  const SymMat mean_serial = mean_of(images_serial);
  parallel::set_enabled(true);
  const std::vector<SymMat> images_par = batch_fwd(*chart, points);
  const SymMat mean_par = mean_of(images_par);

  REQUIRE(images_serial.size() == images_par.size());
  for (size_t i = 0; i < images_serial.size(); ++i)
    CHECK(bit_equal(images_serial[i], images_par[i]));
  CHECK(bit_equal(mean_serial, mean_par));

  for (size_t i = 0; i < points.size(); ++i)
    CHECK(bit_equal(images_serial[i], chart->fwd(points[i])));
}

TEST_CASE("verify results are identical with parallel on and off") {
  VerifyOptions opts;
  opts.dims = {2, 3};
  opts.trials = 3;
  opts.seed = 123;
  opts.only = {"roundtrip/", "scalers/equivariance", "metric/split", "quotient/defect-witness"};

  opts.parallel = false;
  const VerifyReport serial = run_verify(opts);
  opts.parallel = true;
  const VerifyReport par = run_verify(opts);

  REQUIRE(serial.checks.size() == par.checks.size());
  for (size_t i = 0; i < serial.checks.size(); ++i) {
    CHECK(serial.checks[i].id == par.checks[i].id);
    CHECK(serial.checks[i].value == par.checks[i].value);  // bitwise
    CHECK(serial.checks[i].pass == par.checks[i].pass);
  }
  CHECK(report_to_json(serial, opts) == report_to_json(par, opts));
}

TEST_CASE("batch_fwd propagates evaluation errors") {
  const ChartPtr chart = spd_chart(2);
  std::vector<SymMat> points(12, SymMat::identity(2));
  points[7] = SymMat::diagonal({1.0, -1.0});  // not SPD
  parallel::set_enabled(true);
  CHECK_THROWS_AS(batch_fwd(*chart, points), NotPositiveDefinite);
}
