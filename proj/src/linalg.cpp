#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace weakf {

Mat identity_matrix(int n) {
  Mat m(n, n, 0.0);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double max_abs(const Mat& m) {
  double r = 0.0;
  for (double x : m.data()) r = std::max(r, std::fabs(x));
  return r;
}

double max_abs(const Vec& v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::fabs(x));
  return r;
}

Mat inverse(const Mat& m) {
  const int n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::bad_argument, "inverse: matrix not square");
  const double threshold = 1e-12 * std::max(1.0, max_abs(m));

  Mat a = m;
  Mat inv = identity_matrix(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (std::fabs(a(piv, col)) < threshold)
      throw Error(ErrorKind::singular_matrix, "singular matrix: pivot below threshold");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const double d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = a(r, col);
      if (factor == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= factor * a(col, j);
        inv(r, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

Vec elimination_pivots(const Mat& m) {
  Mat a = m;
  const int rows = a.rows(), cols = a.cols();
  Vec pivots;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = row;
    for (int r = row + 1; r < rows; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    const double p = std::fabs(a(piv, col));
    if (piv != row)
      for (int j = 0; j < cols; ++j) std::swap(a(piv, j), a(row, j));
    if (p == 0.0) continue;
    pivots.push_back(p);
    for (int r = row + 1; r < rows; ++r) {
      const double factor = a(r, col) / a(row, col);
      if (factor == 0.0) continue;
      for (int j = col; j < cols; ++j) a(r, j) -= factor * a(row, j);
    }
    ++row;
  }
  // pad with exact zeros so callers can index pivot k of a rank-deficient map
  while (static_cast<int>(pivots.size()) < std::min(rows, cols)) pivots.push_back(0.0);
  std::sort(pivots.rbegin(), pivots.rend());
  return pivots;
}

bool positive_definite(const Mat& m, double* min_pivot) {
  const int n = m.rows();
  Mat l = identity_matrix(n);
  Vec d(n, 0.0);
  double mn = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double dj = m(j, j);
    for (int k = 0; k < j; ++k) dj -= l(j, k) * l(j, k) * d[k];
    d[j] = dj;
    mn = std::min(mn, dj);
    if (!(dj > 0.0)) {
      if (min_pivot) *min_pivot = mn;
      return false;
    }
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k) * d[k];
      l(i, j) = s / dj;
    }
  }
  if (min_pivot) *min_pivot = mn;
  return true;
}

}  // namespace weakf
