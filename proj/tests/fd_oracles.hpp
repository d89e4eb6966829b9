#pragma once

// Test-only finite-difference oracles. These deliberately go through
// Expr::eval (plain values) so they stay independent of the jet propagation
// and of the connection code they are used to check.

#include <cmath>

#include "expr.hpp"
#include "fields.hpp"
#include "linalg.hpp"

namespace weakf::testing {

inline double fd_partial(const Expr& e, Vec pt, int k, double h = 1e-4) {
  pt[k] += h;
  const double up = e.eval(pt);
  pt[k] -= 2.0 * h;
  const double dn = e.eval(pt);
  return (up - dn) / (2.0 * h);
}

inline double fd_second(const Expr& e, Vec pt, int k, int l, double h = 1e-4) {
  if (k == l) {
    const double mid = e.eval(pt);
    pt[k] += h;
    const double up = e.eval(pt);
    pt[k] -= 2.0 * h;
    const double dn = e.eval(pt);
    return (up - 2.0 * mid + dn) / (h * h);
  }
  Vec p = pt;
  p[k] += h; p[l] += h;
  const double pp = e.eval(p);
  p[l] -= 2.0 * h;
  const double pm = e.eval(p);
  p[k] -= 2.0 * h;
  const double mm = e.eval(p);
  p[l] += 2.0 * h;
  const double mp = e.eval(p);
  return (pp - pm - mp + mm) / (4.0 * h * h);
}

inline double fd_metric_partial(const MetricField& g, const Vec& pt, int i, int j, int a,
                                double h = 1e-5) {
  return fd_partial(g.at(i, j), pt, a, h);
}

/// Koszul formula with coordinate fields (whose brackets vanish):
/// 2 g(nabla_{d_i} d_j, d_k) = d_i g_jk + d_j g_ik - d_k g_ij,
/// metric partials by central differences.
inline Ten3 fd_christoffel(const MetricField& g, const Vec& pt, double h = 1e-5) {
  const int d = g.d;
  Mat gv(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gv(i, j) = g.at(i, j).eval(pt);
  const Mat ginv = inverse(gv);
  Ten3 out(d, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const double rhs = fd_metric_partial(g, pt, j, k, i, h) +
                           fd_metric_partial(g, pt, i, k, j, h) -
                           fd_metric_partial(g, pt, i, j, k, h);
        // 2 g(nabla_i d_j, d_k) = rhs  =>  Gamma^m_ij = 1/2 g^mk rhs_k
        out(k, i, j) = rhs;  // temporarily store the lowered form
      }
  Ten3 gamma(d, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int m = 0; m < d; ++m) {
        double s = 0.0;
        for (int k = 0; k < d; ++k) s += ginv(m, k) * out(k, i, j);
        gamma(m, i, j) = 0.5 * s;
      }
  return gamma;
}

/// Sectional curvature with every derivative taken by central differences:
/// Gamma from fd_christoffel, dGamma by differencing fd_christoffel.
inline double fd_sectional(const MetricField& g, const Vec& pt, const Vec& X, const Vec& Y,
                           double h = 1e-4) {
  const int d = g.d;
  const Ten3 gamma = fd_christoffel(g, pt, h);
  std::vector<Ten3> dgamma;  // dgamma[m](l,i,j) = d_m Gamma^l_ij
  for (int m = 0; m < d; ++m) {
    Vec up = pt, dn = pt;
    up[m] += h;
    dn[m] -= h;
    const Ten3 gu = fd_christoffel(g, up, h);
    const Ten3 gd = fd_christoffel(g, dn, h);
    Ten3 diff(d, d, d);
    for (int l = 0; l < d; ++l)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) diff(l, i, j) = (gu(l, i, j) - gd(l, i, j)) / (2.0 * h);
    dgamma.push_back(diff);
  }
  Mat gv(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gv(i, j) = g.at(i, j).eval(pt);

  // R(X,Y)Y then K
  Vec r(d, 0.0);
  for (int l = 0; l < d; ++l) {
    double s = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double rr = dgamma[i](l, j, k) - dgamma[j](l, i, k);
          for (int m = 0; m < d; ++m)
            rr += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
          s += rr * X[i] * Y[j] * Y[k];
        }
    r[l] = s;
  }
  double rx = 0.0, xx = 0.0, yy = 0.0, xy = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      rx += gv(i, j) * r[i] * X[j];
      xx += gv(i, j) * X[i] * X[j];
      yy += gv(i, j) * Y[i] * Y[j];
      xy += gv(i, j) * X[i] * Y[j];
    }
  return rx / (xx * yy - xy * xy);
}

}  // namespace weakf::testing
