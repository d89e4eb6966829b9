#pragma once

#include <cmath>
#include <vector>

#include "error.hpp"

namespace weakf {

using Vec = std::vector<double>;

/// Dense row-major matrix. Charts here never exceed a dozen dimensions, so
/// everything below favors robustness over speed.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

/// Rank-3 array, t(i,j,k).
class Ten3 {
 public:
  Ten3() = default;
  Ten3(int d0, int d1, int d2, double fill = 0.0)
      : d_{d0, d1, d2}, a_(static_cast<size_t>(d0) * d1 * d2, fill) {}

  double& operator()(int i, int j, int k) {
    return a_[(static_cast<size_t>(i) * d_[1] + j) * d_[2] + k];
  }
  double operator()(int i, int j, int k) const {
    return a_[(static_cast<size_t>(i) * d_[1] + j) * d_[2] + k];
  }
  int dim(int axis) const { return d_[axis]; }
  const std::vector<double>& data() const { return a_; }

 private:
  int d_[3] = {0, 0, 0};
  std::vector<double> a_;
};

/// Rank-4 array, t(i,j,k,l).
class Ten4 {
 public:
  Ten4() = default;
  Ten4(int d0, int d1, int d2, int d3, double fill = 0.0)
      : d_{d0, d1, d2, d3}, a_(static_cast<size_t>(d0) * d1 * d2 * d3, fill) {}

  double& operator()(int i, int j, int k, int l) {
    return a_[((static_cast<size_t>(i) * d_[1] + j) * d_[2] + k) * d_[3] + l];
  }
  double operator()(int i, int j, int k, int l) const {
    return a_[((static_cast<size_t>(i) * d_[1] + j) * d_[2] + k) * d_[3] + l];
  }
  int dim(int axis) const { return d_[axis]; }

 private:
  int d_[4] = {0, 0, 0, 0};
  std::vector<double> a_;
};

Mat identity_matrix(int n);

/// Inverse via Gaussian elimination with partial pivoting. Throws
/// Error(singular_matrix) when a pivot drops below 1e-12 relative to the
/// largest entry of the input.
Mat inverse(const Mat& m);

/// Absolute pivot magnitudes of the row-echelon reduction, sorted descending.
/// Used for numeric rank estimation.
Vec elimination_pivots(const Mat& m);

/// Pivots of the LDL^T factorization without permutation; all positive iff
/// the matrix is positive definite. Returns false (and the offending pivot
/// through *min_pivot) when a pivot is <= 0 or the factorization breaks down.
bool positive_definite(const Mat& m, double* min_pivot = nullptr);

double max_abs(const Mat& m);
double max_abs(const Vec& v);

inline Vec matvec(const Mat& m, const Vec& x) {
  Vec r(m.rows(), 0.0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r[i] += m(i, j) * x[j];
  return r;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace weakf
