#ifndef LOGLIE_KERNELS_HPP
#define LOGLIE_KERNELS_HPP

#include <vector>

#include "loglie/symmat.hpp"

// Dense kernels. Each parallel variant computes every output element with the
// exact arithmetic order of its serial reference, so the two are bit-identical
// and the serial build is the test oracle for the OpenMP build.
namespace loglie::kernels {

/// c = a * b with a: r x k, b: k x c (row-major).
void matmul_serial(const double* a, const double* b, double* c, int r, int k, int cols);
void matmul_omp(const double* a, const double* b, double* c, int r, int k, int cols);
void matmul(const double* a, const double* b, double* c, int r, int k, int cols);

Mat matmul(const Mat& a, const Mat& b);

/// a * b * a^T for square a, b (the congruence step of spectral transforms).
Mat sandwich(const Mat& a, const Mat& b);

/// H_il = sum_{j,k} P_ij P_ik P_lj P_lk G_jk, i.e. u^T G u with u_j = P_ij P_lj.
/// G is the divided-difference Gram matrix of the spectrum.
SymMat quadratic_response_serial(const Mat& p, const Mat& g);
SymMat quadratic_response_omp(const Mat& p, const Mat& g);
SymMat quadratic_response(const Mat& p, const Mat& g);

/// Cyclic Jacobi diagonalization. On return `vectors` holds eigenvectors in
/// columns and `values` the eigenvalues, ascending. Deterministic.
void jacobi_eigensymmetric(const SymMat& a, Mat& vectors, std::vector<double>& values);

/// In-place lower Cholesky of an SPD matrix stored densely; returns false on
/// a non-positive pivot.
bool cholesky_factor(std::vector<double>& a, int n);

/// Solves L L^T x = b given the factor from cholesky_factor.
std::vector<double> cholesky_solve(const std::vector<double>& l, int n, std::vector<double> b);

/// Solves A x = b for SPD A; throws NotPositiveDefinite on factor failure.
std::vector<double> spd_solve(const SymMat& a, const std::vector<double>& b);

/// lambda_max / lambda_min via Jacobi; +inf for a non-positive spectrum.
double spd_condition(const SymMat& a);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);

}  // namespace loglie::kernels

#endif
