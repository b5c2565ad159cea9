#ifndef LOGLIE_SYMMAT_HPP
#define LOGLIE_SYMMAT_HPP

#include <cstddef>
#include <vector>

#include "loglie/errors.hpp"

namespace loglie {

/// Model subspaces of S(n) used as chart codomains.
enum class SubspaceTag { Full, Hollow, RowZero, Diagonal };

const char* to_string(SubspaceTag tag);

/// Dense row-major matrix, the workhorse for non-symmetric intermediates
/// (eigenvector frames, Helmert blocks, covariance matrices).
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  Mat transposed() const;
  double frobenius_norm() const;

  Mat& operator+=(const Mat& other);
  Mat& operator-=(const Mat& other);
  Mat& operator*=(double s);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(double s, Mat a);

/// Dense symmetric matrix with exactly mirrored storage: set(i,j) writes both
/// triangles, so entries[i][j] == entries[j][i] holds bit-for-bit.
class SymMat {
 public:
  SymMat() = default;
  explicit SymMat(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {
    if (n < 1) throw DimensionMismatch("SymMat dimension must be >= 1");
  }

  static SymMat identity(int n);
  static SymMat diagonal(const std::vector<double>& d);

  /// Builds from dense rows, symmetrizing via (A + A^T)/2. Asymmetry beyond
  /// 1e-8 relative is rejected rather than silently averaged.
  static SymMat from_rows(const std::vector<std::vector<double>>& rows);
  static SymMat from_mat(const Mat& m);

  /// Symmetrizes without the asymmetry gate; for internal products known to
  /// be symmetric up to roundoff.
  static SymMat symmetrized(const Mat& m);

  int dim() const { return n_; }

  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  void set(int i, int j, double v) {
    a_[static_cast<size_t>(i) * n_ + j] = v;
    a_[static_cast<size_t>(j) * n_ + i] = v;
  }

  const double* data() const { return a_.data(); }

  Mat to_mat() const;

  bool is_finite() const;
  double frobenius_norm() const;
  double max_abs() const;
  std::vector<double> diagonal_vector() const;
  std::vector<double> row_sums() const;

  /// y = A x.
  std::vector<double> apply(const std::vector<double>& x) const;

  SymMat& operator+=(const SymMat& other);
  SymMat& operator-=(const SymMat& other);
  SymMat& operator*=(double s);

 private:
  int n_ = 0;
  std::vector<double> a_;
};

SymMat operator+(SymMat a, const SymMat& b);
SymMat operator-(SymMat a, const SymMat& b);
SymMat operator*(double s, SymMat a);
SymMat operator-(SymMat a);

/// Frobenius inner product tr(AB) = sum_ij A_ij B_ij.
double frobenius(const SymMat& a, const SymMat& b);

/// Off-diagonal part: diagonal set to zero.
SymMat off_project(const SymMat& a);

/// Diagonal part: off-diagonal set to zero.
SymMat diag_project(const SymMat& a);

/// Exact-arithmetic residual from the given model subspace
/// (0 for Full; max |diag| for Hollow; max |row sum| for RowZero; ...).
double subspace_residual(const SymMat& a, SubspaceTag tag);

bool in_subspace(const SymMat& a, SubspaceTag tag, double tol);

inline constexpr double kSubspaceTol = 1e-10;   // tau_sub
inline constexpr double kSymmetryTol = 1e-8;    // relative gate in from_rows

}  // namespace loglie

#endif
