#include "loglie/symmat.hpp"

#include <cmath>
#include <cstdlib>

namespace loglie {

const char* to_string(SubspaceTag tag) {
  switch (tag) {
    case SubspaceTag::Full: return "full";
    case SubspaceTag::Hollow: return "hollow";
    case SubspaceTag::RowZero: return "row-zero";
    case SubspaceTag::Diagonal: return "diagonal";
  }
  return "?";
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::transposed() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Mat::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

Mat& Mat::operator+=(const Mat& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionMismatch();
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
  return *this;
}

Mat& Mat::operator-=(const Mat& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionMismatch();
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
  return *this;
}

Mat& Mat::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator*(double s, Mat a) { return a *= s; }

SymMat SymMat::identity(int n) {
  SymMat m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMat SymMat::diagonal(const std::vector<double>& d) {
  SymMat m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m.set(i, i, d[i]);
  return m;
}

SymMat SymMat::from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n < 1) throw DimensionMismatch("empty matrix");
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != n) throw DimensionMismatch("matrix is not square");
  SymMat m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double x = rows[i][j];
      const double y = rows[j][i];
      const double scale = std::max({1.0, std::abs(x), std::abs(y)});
      if (std::abs(x - y) > kSymmetryTol * scale)
        throw NotSymmetric("entries (" + std::to_string(i) + "," + std::to_string(j) +
                           ") differ beyond the symmetry tolerance");
      m.set(i, j, 0.5 * (x + y));
    }
  }
  return m;
}

SymMat SymMat::from_mat(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("matrix is not square");
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return from_rows(rows);
}

SymMat SymMat::symmetrized(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("matrix is not square");
  SymMat s(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i; j < m.cols(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

Mat SymMat::to_mat() const {
  Mat m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

bool SymMat::is_finite() const {
  for (double v : a_)
    if (!std::isfinite(v)) return false;
  return true;
}

double SymMat::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double SymMat::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> SymMat::diagonal_vector() const {
  std::vector<double> d(n_);
  for (int i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

std::vector<double> SymMat::row_sums() const {
  std::vector<double> r(n_, 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[i] += (*this)(i, j);
  return r;
}

std::vector<double> SymMat::apply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_) throw DimensionMismatch();
  std::vector<double> y(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

SymMat& SymMat::operator+=(const SymMat& other) {
  if (n_ != other.n_) throw DimensionMismatch();
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
  return *this;
}

SymMat& SymMat::operator-=(const SymMat& other) {
  if (n_ != other.n_) throw DimensionMismatch();
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= other.a_[i];
  return *this;
}

SymMat& SymMat::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
SymMat operator*(double s, SymMat a) { return a *= s; }
SymMat operator-(SymMat a) { return a *= -1.0; }

double frobenius(const SymMat& a, const SymMat& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("frobenius: dimensions differ");
  const int n = a.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += a(i, j) * b(i, j);
  return s;
}

SymMat off_project(const SymMat& a) {
  SymMat m = a;
  for (int i = 0; i < a.dim(); ++i) m.set(i, i, 0.0);
  return m;
}

SymMat diag_project(const SymMat& a) {
  SymMat m(a.dim());
  for (int i = 0; i < a.dim(); ++i) m.set(i, i, a(i, i));
  return m;
}

double subspace_residual(const SymMat& a, SubspaceTag tag) {
  double r = 0.0;
  switch (tag) {
    case SubspaceTag::Full:
      return 0.0;
    case SubspaceTag::Hollow:
      for (int i = 0; i < a.dim(); ++i) r = std::max(r, std::abs(a(i, i)));
      return r;
    case SubspaceTag::RowZero:
      for (double s : a.row_sums()) r = std::max(r, std::abs(s));
      return r;
    case SubspaceTag::Diagonal:
      for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) r = std::max(r, std::abs(a(i, j)));
      return r;
  }
  return r;
}

bool in_subspace(const SymMat& a, SubspaceTag tag, double tol) {
  return subspace_residual(a, tag) <= tol;
}

}  // namespace loglie
