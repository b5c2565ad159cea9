// Serial vs OpenMP kernel comparison. Run: ./bench_kernels
// The variants compute identical bits; only wall time differs.

#include <benchmark/benchmark.h>

#include "loglie/group.hpp"
#include "loglie/kernels.hpp"
#include "loglie/parallel.hpp"
#include "loglie/rng.hpp"
#include "loglie/spd.hpp"
#include "loglie/symlin.hpp"

using namespace loglie;

namespace {

Mat random_mat(SplitMix64& rng, int r, int c) {
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rng.next_symmetric();
  return m;
}

void bm_matmul_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SplitMix64 rng(1);
  const Mat a = random_mat(rng, n, n);
  const Mat b = random_mat(rng, n, n);
  Mat c(n, n);
  for (auto _ : state) {
    kernels::matmul_serial(a.data(), b.data(), c.data(), n, n, n);
    benchmark::DoNotOptimize(c.data());
  }
}

void bm_matmul_omp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SplitMix64 rng(1);
  const Mat a = random_mat(rng, n, n);
  const Mat b = random_mat(rng, n, n);
  Mat c(n, n);
  for (auto _ : state) {
    kernels::matmul_omp(a.data(), b.data(), c.data(), n, n, n);
    benchmark::DoNotOptimize(c.data());
  }
}

void bm_quadratic_response_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SplitMix64 rng(2);
  const EigDecomp e = sym_eig(random_symmetric(rng, n, 0.5));
  const Mat g = detail::exp_dd_matrix(e.values);
  for (auto _ : state) {
    SymMat h = kernels::quadratic_response_serial(e.vectors, g);
    benchmark::DoNotOptimize(h.data());
  }
}

void bm_quadratic_response_omp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SplitMix64 rng(2);
  const EigDecomp e = sym_eig(random_symmetric(rng, n, 0.5));
  const Mat g = detail::exp_dd_matrix(e.values);
  for (auto _ : state) {
    SymMat h = kernels::quadratic_response_omp(e.vectors, g);
    benchmark::DoNotOptimize(h.data());
  }
}

void bm_batch_log_serial(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  SplitMix64 rng(3);
  const ChartPtr chart = spd_chart(8);
  std::vector<SymMat> points;
  for (int i = 0; i < count; ++i) points.push_back(random_spd(rng, 8, 0.5));
  parallel::set_enabled(false);
  for (auto _ : state) {
    auto images = batch_fwd(*chart, points);
    benchmark::DoNotOptimize(images.data());
  }
  parallel::set_enabled(true);
}

void bm_batch_log_omp(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  SplitMix64 rng(3);
  const ChartPtr chart = spd_chart(8);
  std::vector<SymMat> points;
  for (int i = 0; i < count; ++i) points.push_back(random_spd(rng, 8, 0.5));
  parallel::set_enabled(true);
  for (auto _ : state) {
    auto images = batch_fwd(*chart, points);
    benchmark::DoNotOptimize(images.data());
  }
}

}  // namespace

BENCHMARK(bm_matmul_serial)->Arg(64)->Arg(256);
BENCHMARK(bm_matmul_omp)->Arg(64)->Arg(256);
BENCHMARK(bm_quadratic_response_serial)->Arg(32)->Arg(96);
BENCHMARK(bm_quadratic_response_omp)->Arg(32)->Arg(96);
BENCHMARK(bm_batch_log_serial)->Arg(512);
BENCHMARK(bm_batch_log_omp)->Arg(512);

BENCHMARK_MAIN();
