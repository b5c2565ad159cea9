#ifndef LOGLIE_GROUP_HPP
#define LOGLIE_GROUP_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "loglie/rng.hpp"
#include "loglie/symmat.hpp"

namespace loglie {

/// A log-Euclidean chart: the global diffeomorphism phi onto a flat model
/// space together with its inverse and both tangent maps. Everything in the
/// group layer is generic over this descriptor.
struct LeChart {
  std::string name;       // "spd-le", "corr-offlog", "corr-logscaling"
  int dim_ambient = 0;    // n
  SubspaceTag model_tag = SubspaceTag::Full;

  std::function<SymMat(const SymMat&)> fwd;  // phi
  std::function<SymMat(const SymMat&)> inv;  // phi^{-1} = exp_G
  // (point, ambient tangent) -> model tangent
  std::function<SymMat(const SymMat&, const SymMat&)> dfwd;
  // (chart value, model tangent) -> ambient tangent at inv(chart value)
  std::function<SymMat(const SymMat&, const SymMat&)> dinv;
  // 0 on the manifold; used to validate GroupElem values
  std::function<double(const SymMat&)> membership_residual;

  int model_dim() const;
};

using ChartPtr = std::shared_ptr<const LeChart>;

inline constexpr double kMembershipTol = 1e-8;

/// A manifold point tagged with its chart; membership is validated on
/// construction.
struct GroupElem {
  ChartPtr chart;
  SymMat value;

  GroupElem(ChartPtr chart, SymMat value);
};

GroupElem identity_elem(ChartPtr chart);
GroupElem star(const GroupElem& a, const GroupElem& b);
GroupElem grp_inverse(const GroupElem& a);
GroupElem geodesic(const GroupElem& a, const GroupElem& b, double t);
double dist(const GroupElem& a, const GroupElem& b);

GroupElem le_mean(const std::vector<GroupElem>& samples);
double le_variance(const std::vector<GroupElem>& samples);

/// Chart images of a batch of points; the samples are independent, so this
/// is evaluated in parallel when enabled.
std::vector<SymMat> batch_fwd(const LeChart& chart, const std::vector<SymMat>& points);

/// Entrywise mean of equally sized matrices, accumulated in sample order per
/// entry (deterministic under parallelism).
SymMat mean_of(const std::vector<SymMat>& mats);

/// Orthonormal basis of the chart's model space, in the pinned order:
/// Full: E_kk ascending, then (E_ij+E_ji)/sqrt2 for i<j lexicographic;
/// Hollow: the off-diagonal family only;
/// RowZero: Helmert conjugates of the Full basis of S(n-1);
/// Diagonal: E_kk ascending.
std::vector<SymMat> model_basis(const LeChart& chart);

std::vector<double> vectorize(const std::vector<SymMat>& basis, const SymMat& model_value);

struct GeometricCov {
  Mat gg, hh, gh;  // model-space covariance blocks; gh = hg^T
};

GeometricCov geometric_cov(const std::vector<GroupElem>& g, const std::vector<GroupElem>& h);

/// rho = Dgg^{-1/2} Sigma_gh Dhh^{-1/2}; throws SingularDiag on a
/// rank-deficient diagonal.
Mat geometric_corr(const GeometricCov& cov);

/// Draws a random tangent in the chart's model space (entry scale `scale`);
/// composing with chart.inv yields random manifold points.
SymMat random_model_vector(const LeChart& chart, SplitMix64& rng, double scale);

struct InverseConsistencyReport {
  double max_violation = 0.0;
  int trials = 0;
  bool consistent(double tol = 1e-9) const { return max_violation <= tol; }
};

/// Samples random elements and checks that f commutes with group inversion:
/// ||phi(f(x^-1)) + phi(f(x))|| over `trials` draws.
InverseConsistencyReport is_inverse_consistent(
    const std::function<SymMat(const SymMat&)>& f, ChartPtr chart, int trials, uint64_t seed);

}  // namespace loglie

#endif
