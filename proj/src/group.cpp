#include "loglie/group.hpp"

#include <cmath>
#include <exception>
#include <utility>

#include "loglie/isometry.hpp"
#include "loglie/parallel.hpp"
#include "loglie/rng.hpp"

namespace loglie {

int LeChart::model_dim() const {
  const int n = dim_ambient;
  switch (model_tag) {
    case SubspaceTag::Full: return n * (n + 1) / 2;
    case SubspaceTag::Hollow: return n * (n - 1) / 2;
    case SubspaceTag::RowZero: return n * (n - 1) / 2;
    case SubspaceTag::Diagonal: return n;
  }
  return 0;
}

GroupElem::GroupElem(ChartPtr chart_in, SymMat value_in)
    : chart(std::move(chart_in)), value(std::move(value_in)) {
  if (!chart) throw Error("GroupElem requires a chart");
  if (value.dim() != chart->dim_ambient)
    throw DimensionMismatch("point dimension does not match chart");
  const double r = chart->membership_residual(value);
  if (!(r <= kMembershipTol))
    throw MembershipViolation("point is not on the " + chart->name + " manifold (residual " +
                              std::to_string(r) + ")");
}

namespace {
void require_same_chart(const GroupElem& a, const GroupElem& b) {
  if (a.chart->name != b.chart->name || a.chart->dim_ambient != b.chart->dim_ambient)
    throw ChartMismatch();
}
}  // namespace

GroupElem identity_elem(ChartPtr chart) {
  SymMat zero(chart->dim_ambient);
  SymMat e = chart->inv(zero);
  return GroupElem(std::move(chart), std::move(e));
}

GroupElem star(const GroupElem& a, const GroupElem& b) {
  require_same_chart(a, b);
  return GroupElem(a.chart, a.chart->inv(a.chart->fwd(a.value) + a.chart->fwd(b.value)));
}

GroupElem grp_inverse(const GroupElem& a) {
  return GroupElem(a.chart, a.chart->inv(-a.chart->fwd(a.value)));
}

GroupElem geodesic(const GroupElem& a, const GroupElem& b, double t) {
  require_same_chart(a, b);
  const SymMat va = a.chart->fwd(a.value);
  const SymMat vb = b.chart->fwd(b.value);
  return GroupElem(a.chart, a.chart->inv((1.0 - t) * va + t * vb));
}

double dist(const GroupElem& a, const GroupElem& b) {
  require_same_chart(a, b);
  return (a.chart->fwd(a.value) - b.chart->fwd(b.value)).frobenius_norm();
}

std::vector<SymMat> batch_fwd(const LeChart& chart, const std::vector<SymMat>& points) {
  const int count = static_cast<int>(points.size());
  std::vector<SymMat> images(count);
  if (parallel::enabled() && count >= 8) {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
      try {
        images[i] = chart.fwd(points[i]);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (int i = 0; i < count; ++i) images[i] = chart.fwd(points[i]);
  }
  return images;
}

SymMat mean_of(const std::vector<SymMat>& mats) {
  if (mats.empty()) throw EmptySample();
  const int n = mats.front().dim();
  const int count = static_cast<int>(mats.size());
  const double inv_count = 1.0 / count;
  SymMat mean(n);
  const int entries = n * (n + 1) / 2;
  const bool par = parallel::enabled() && static_cast<long>(entries) * count >= 16384;
#pragma omp parallel for schedule(static) collapse(1) if (par)
  for (int idx = 0; idx < entries; ++idx) {
    int i = 0;
    int rem = idx;
    while (rem >= n - i) {
      rem -= n - i;
      ++i;
    }
    const int j = i + rem;
    double s = 0.0;
    for (int k = 0; k < count; ++k) s += mats[k](i, j);
    mean.set(i, j, s * inv_count);
  }
  return mean;
}

GroupElem le_mean(const std::vector<GroupElem>& samples) {
  if (samples.empty()) throw EmptySample();
  const ChartPtr chart = samples.front().chart;
  std::vector<SymMat> points;
  points.reserve(samples.size());
  for (const auto& s : samples) {
    require_same_chart(samples.front(), s);
    points.push_back(s.value);
  }
  return GroupElem(chart, chart->inv(mean_of(batch_fwd(*chart, points))));
}

double le_variance(const std::vector<GroupElem>& samples) {
  if (samples.empty()) throw EmptySample();
  const ChartPtr chart = samples.front().chart;
  std::vector<SymMat> points;
  points.reserve(samples.size());
  for (const auto& s : samples) {
    require_same_chart(samples.front(), s);
    points.push_back(s.value);
  }
  const std::vector<SymMat> images = batch_fwd(*chart, points);
  const SymMat mean = mean_of(images);
  double var = 0.0;
  for (const auto& img : images) {
    const double d = (img - mean).frobenius_norm();
    var += d * d;
  }
  return var / static_cast<double>(images.size());
}

std::vector<SymMat> model_basis(const LeChart& chart) {
  const int n = chart.dim_ambient;
  std::vector<SymMat> basis;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  auto full_basis = [&](int m) {
    std::vector<SymMat> b;
    for (int k = 0; k < m; ++k) {
      SymMat e(m);
      e.set(k, k, 1.0);
      b.push_back(e);
    }
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        SymMat e(m);
        e.set(i, j, inv_sqrt2);
        b.push_back(e);
      }
    return b;
  };

  switch (chart.model_tag) {
    case SubspaceTag::Full:
      basis = full_basis(n);
      break;
    case SubspaceTag::Hollow:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          SymMat e(n);
          e.set(i, j, inv_sqrt2);
          basis.push_back(e);
        }
      break;
    case SubspaceTag::RowZero:
      for (const auto& e : full_basis(n - 1)) basis.push_back(rowzero_embed(e));
      break;
    case SubspaceTag::Diagonal:
      for (int k = 0; k < n; ++k) {
        SymMat e(n);
        e.set(k, k, 1.0);
        basis.push_back(e);
      }
      break;
  }
  return basis;
}

std::vector<double> vectorize(const std::vector<SymMat>& basis, const SymMat& model_value) {
  std::vector<double> v(basis.size());
  for (size_t k = 0; k < basis.size(); ++k) v[k] = frobenius(basis[k], model_value);
  return v;
}

GeometricCov geometric_cov(const std::vector<GroupElem>& g, const std::vector<GroupElem>& h) {
  if (g.empty() || h.empty()) throw EmptySample();
  if (g.size() != h.size()) throw LengthMismatch();
  require_same_chart(g.front(), h.front());

  const ChartPtr chart = g.front().chart;
  const std::vector<SymMat> basis = model_basis(*chart);
  const int d = static_cast<int>(basis.size());
  const int count = static_cast<int>(g.size());

  auto deviations = [&](const std::vector<GroupElem>& samples) {
    std::vector<SymMat> points;
    points.reserve(samples.size());
    for (const auto& s : samples) {
      require_same_chart(samples.front(), s);
      points.push_back(s.value);
    }
    const std::vector<SymMat> images = batch_fwd(*chart, points);
    const SymMat mean = mean_of(images);
    std::vector<std::vector<double>> dev(images.size());
    for (size_t i = 0; i < images.size(); ++i) dev[i] = vectorize(basis, images[i] - mean);
    return dev;
  };

  const auto dev_g = deviations(g);
  const auto dev_h = deviations(h);

  auto accumulate = [&](const std::vector<std::vector<double>>& a,
                        const std::vector<std::vector<double>>& b) {
    Mat out(d, d);
    const bool par = parallel::enabled() && static_cast<long>(d) * d * count >= 16384;
#pragma omp parallel for schedule(static) collapse(2) if (par)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double s = 0.0;
        for (int i = 0; i < count; ++i) s += a[i][j] * b[i][k];
        out(j, k) = s / count;
      }
    return out;
  };

  GeometricCov cov;
  cov.gg = accumulate(dev_g, dev_g);
  cov.hh = accumulate(dev_h, dev_h);
  cov.gh = accumulate(dev_g, dev_h);
  return cov;
}

Mat geometric_corr(const GeometricCov& cov) {
  const int d = cov.gg.rows();
  std::vector<double> sg(d), sh(d);
  double max_diag = 0.0;
  for (int i = 0; i < d; ++i)
    max_diag = std::max({max_diag, cov.gg(i, i), cov.hh(i, i)});
  for (int i = 0; i < d; ++i) {
    const double a = cov.gg(i, i);
    const double b = cov.hh(i, i);
    if (!(a > 1e-15 * (1.0 + max_diag)) || !(b > 1e-15 * (1.0 + max_diag)))
      throw SingularDiag();
    sg[i] = 1.0 / std::sqrt(a);
    sh[i] = 1.0 / std::sqrt(b);
  }
  Mat rho(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho(i, j) = sg[i] * cov.gh(i, j) * sh[j];
  return rho;
}

SymMat random_model_vector(const LeChart& chart, SplitMix64& rng, double scale) {
  const int n = chart.dim_ambient;
  switch (chart.model_tag) {
    case SubspaceTag::Full: return random_symmetric(rng, n, scale);
    case SubspaceTag::Hollow: return random_hollow(rng, n, scale);
    case SubspaceTag::RowZero: return rowzero_embed(random_symmetric(rng, n - 1, scale));
    case SubspaceTag::Diagonal: return random_diagonal(rng, n, scale);
  }
  throw Error("unknown model tag");
}

InverseConsistencyReport is_inverse_consistent(const std::function<SymMat(const SymMat&)>& f,
                                               ChartPtr chart, int trials, uint64_t seed) {
  InverseConsistencyReport report;
  report.trials = trials;
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng(fold_seed(seed, static_cast<uint64_t>(t)));
    const SymMat v = random_model_vector(*chart, rng, suite_scale(chart->dim_ambient));
    const SymMat x = chart->inv(v);
    const SymMat x_inv = chart->inv(-v);
    const double violation = (chart->fwd(f(x_inv)) + chart->fwd(f(x))).frobenius_norm();
    report.max_violation = std::max(report.max_violation, violation);
  }
  return report;
}

}  // namespace loglie
