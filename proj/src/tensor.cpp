#include "tensor.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace weakf {

FieldJet apply_endo(const EndoJet& T, const FieldJet& X) {
  const int d = T.dim();
  FieldJet out;
  out.v.assign(d, 0.0);
  out.J = Mat(d, d);
  for (int i = 0; i < d; ++i) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += T.m(i, j) * X.v[j];
    out.v[i] = s;
    for (int a = 0; a < d; ++a) {
      double t = 0.0;
      for (int j = 0; j < d; ++j) t += T.dm(i, j, a) * X.v[j] + T.m(i, j) * X.J(j, a);
      out.J(i, a) = t;
    }
  }
  return out;
}

Vec apply_matrix(const Mat& T, const Vec& x) { return matvec(T, x); }

Vec bracket(const FieldJet& X, const FieldJet& Y) {
  const int d = static_cast<int>(X.v.size());
  Vec out(d, 0.0);
  for (int k = 0; k < d; ++k) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) s += X.v[a] * Y.J(k, a) - Y.v[a] * X.J(k, a);
    out[k] = s;
  }
  return out;
}

ScalarJet metric_pair(const MetricJets& M, const FieldJet& A, const FieldJet& B) {
  const int d = M.dim();
  ScalarJet s;
  s.d.assign(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      s.v += M.g(i, j) * A.v[i] * B.v[j];
      for (int a = 0; a < d; ++a)
        s.d[a] += M.dg(i, j, a) * A.v[i] * B.v[j] +
                  M.g(i, j) * (A.J(i, a) * B.v[j] + A.v[i] * B.J(j, a));
    }
  return s;
}

double metric_pair_value(const Mat& g, const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) s += g(i, j) * a[i] * b[j];
  return s;
}

ScalarJet form_apply(const FieldJet& w, const FieldJet& X) {
  const int d = static_cast<int>(w.v.size());
  ScalarJet s;
  s.d.assign(d, 0.0);
  for (int k = 0; k < d; ++k) {
    s.v += w.v[k] * X.v[k];
    for (int a = 0; a < d; ++a) s.d[a] += w.J(k, a) * X.v[k] + w.v[k] * X.J(k, a);
  }
  return s;
}

double directional(const Vec& along, const ScalarJet& s) { return dot(along, s.d); }

Vec covariant_deriv(const MetricJets& M, const FieldJet& X, const FieldJet& Y) {
  const int d = M.dim();
  Vec out(d, 0.0);
  for (int k = 0; k < d; ++k) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) {
      s += X.v[a] * Y.J(k, a);
      for (int b = 0; b < d; ++b) s += M.gamma(k, a, b) * X.v[a] * Y.v[b];
    }
    out[k] = s;
  }
  return out;
}

Vec endo_cov_apply(const MetricJets& M, const EndoJet& T, const FieldJet& X, const FieldJet& Y) {
  const Vec a = covariant_deriv(M, X, apply_endo(T, Y));
  const Vec b = apply_matrix(T.m, covariant_deriv(M, X, Y));
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Ten3 endo_covariant(const MetricJets& M, const EndoJet& T) {
  const int d = M.dim();
  Ten3 out(d, d, d);
  for (int a = 0; a < d; ++a)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = T.dm(i, j, a);
        for (int k = 0; k < d; ++k) s += M.gamma(i, a, k) * T.m(k, j) - T.m(i, k) * M.gamma(k, a, j);
        out(i, j, a) = s;
      }
  return out;
}

Ten4 christoffel_derivative(const MetricJets& M) {
  const int d = M.dim();
  // d_m g^{kl} = -g^{ka} (d_m g_ab) g^{bl}
  Ten3 dginv(d, d, d, 0.0);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      for (int m = 0; m < d; ++m) {
        double s = 0.0;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) s += M.ginv(k, a) * M.dg(a, b, m) * M.ginv(b, l);
        dginv(k, l, m) = -s;
      }
  Ten4 out(d, d, d, d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int m = 0; m < d; ++m) {
          double s = 0.0;
          for (int l = 0; l < d; ++l) {
            const double c = M.dg(j, l, i) + M.dg(i, l, j) - M.dg(i, j, l);
            const double dc = M.ddg(j, l, i, m) + M.ddg(i, l, j, m) - M.ddg(i, j, l, m);
            s += dginv(k, l, m) * c + M.ginv(k, l) * dc;
          }
          out(k, i, j, m) = 0.5 * s;
        }
  return out;
}

Vec riemann_apply(const MetricJets& M, const Ten4& dgamma, const Vec& X, const Vec& Y,
                  const Vec& Z) {
  const int d = M.dim();
  Vec out(d, 0.0);
  for (int l = 0; l < d; ++l) {
    double s = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double r = dgamma(l, j, k, i) - dgamma(l, i, k, j);
          for (int m = 0; m < d; ++m)
            r += M.gamma(l, i, m) * M.gamma(m, j, k) - M.gamma(l, j, m) * M.gamma(m, i, k);
          s += r * X[i] * Y[j] * Z[k];
        }
    out[l] = s;
  }
  return out;
}

double sectional(const MetricJets& M, const Ten4& dgamma, const Vec& X, const Vec& Y) {
  const double xx = metric_pair_value(M.g, X, X);
  const double yy = metric_pair_value(M.g, Y, Y);
  const double xy = metric_pair_value(M.g, X, Y);
  const double denom = xx * yy - xy * xy;
  if (denom < 1e-10)
    throw Error(ErrorKind::degenerate_plane, "sectional curvature of a degenerate plane");
  const Vec r = riemann_apply(M, dgamma, X, Y, Y);
  return metric_pair_value(M.g, r, X) / denom;
}

Vec lie_endo(const EndoJet& T, const FieldJet& Z, const FieldJet& X) {
  const Vec a = bracket(Z, apply_endo(T, X));
  const Vec b = apply_matrix(T.m, bracket(Z, X));
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

double lie_form(const FieldJet& w, const FieldJet& Z, const FieldJet& X) {
  return directional(Z.v, form_apply(w, X)) - dot(w.v, bracket(Z, X));
}

double lie_metric_bracket(const MetricJets& M, const FieldJet& Z, const FieldJet& X,
                          const FieldJet& Y) {
  return directional(Z.v, metric_pair(M, X, Y)) -
         metric_pair_value(M.g, bracket(Z, X), Y.v) -
         metric_pair_value(M.g, X.v, bracket(Z, Y));
}

double lie_metric_nabla(const MetricJets& M, const FieldJet& Z, const FieldJet& X,
                        const FieldJet& Y) {
  return metric_pair_value(M.g, covariant_deriv(M, X, Z), Y.v) +
         metric_pair_value(M.g, covariant_deriv(M, Y, Z), X.v);
}

double d_one_form(const FieldJet& w, const FieldJet& A, const FieldJet& B) {
  return 0.5 * (directional(A.v, form_apply(w, B)) - directional(B.v, form_apply(w, A)) -
                dot(w.v, bracket(A, B)));
}

double d_two_form(const MetricJets& M, const EndoJet& f, const FieldJet& A, const FieldJet& B,
                  const FieldJet& C) {
  const FieldJet fA = apply_endo(f, A);
  const FieldJet fB = apply_endo(f, B);
  const FieldJet fC = apply_endo(f, C);
  const double field_terms = directional(A.v, metric_pair(M, B, fC)) +
                             directional(B.v, metric_pair(M, C, fA)) +
                             directional(C.v, metric_pair(M, A, fB));
  const double bracket_terms = metric_pair_value(M.g, bracket(A, B), fC.v) +
                               metric_pair_value(M.g, bracket(C, A), fB.v) +
                               metric_pair_value(M.g, bracket(B, C), fA.v);
  return (field_terms - bracket_terms) / 3.0;
}

Vec nijenhuis_jet(const EndoJet& T, const FieldJet& A, const FieldJet& B) {
  const int d = T.dim();
  const FieldJet TA = apply_endo(T, A);
  const FieldJet TB = apply_endo(T, B);
  const Vec ab = bracket(A, B);
  const Vec t2ab = apply_matrix(T.m, apply_matrix(T.m, ab));
  const Vec tatb = bracket(TA, TB);
  const Vec t_tab = apply_matrix(T.m, bracket(TA, B));
  const Vec t_atb = apply_matrix(T.m, bracket(A, TB));
  Vec out(d);
  for (int i = 0; i < d; ++i) out[i] = t2ab[i] + tatb[i] - t_tab[i] - t_atb[i];
  return out;
}

Vec nijenhuis_nabla_jet(const MetricJets& M, const EndoJet& T, const FieldJet& A,
                        const FieldJet& B) {
  const int d = T.dim();
  const FieldJet TA = apply_endo(T, A);
  const FieldJet TB = apply_endo(T, B);
  // (T nabla_B T - nabla_{TB} T) A
  const Vec t1 = apply_matrix(T.m, endo_cov_apply(M, T, B, A));
  const Vec t2 = endo_cov_apply(M, T, TB, A);
  // (T nabla_A T - nabla_{TA} T) B
  const Vec t3 = apply_matrix(T.m, endo_cov_apply(M, T, A, B));
  const Vec t4 = endo_cov_apply(M, T, TA, B);
  Vec out(d);
  for (int i = 0; i < d; ++i) out[i] = (t1[i] - t2[i]) - (t3[i] - t4[i]);
  return out;
}

double totally_geodesic_residual_at(const MetricJets& M, const std::vector<FieldJet>& span,
                                    const std::vector<FieldJet>& orth) {
  const double gmax = std::max(1.0, max_abs(M.g));
  double worst = 0.0;
  for (size_t x = 0; x < span.size(); ++x)
    for (size_t y = x; y < span.size(); ++y) {
      const Vec a = covariant_deriv(M, span[x], span[y]);
      const Vec b = covariant_deriv(M, span[y], span[x]);
      Vec sum(a.size());
      for (size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
      for (const FieldJet& z : orth) {
        const double raw = std::fabs(metric_pair_value(M.g, sum, z.v));
        const double scale = std::max(1.0, gmax * max_abs(sum) * max_abs(z.v));
        worst = std::max(worst, raw / scale);
      }
    }
  return worst;
}

// --- chart-level wrappers ----------------------------------------------------

Mat metric_inverse(const MetricField& g, const Point& pt) { return eval_metric(g, pt).ginv; }

Ten3 christoffel(const MetricField& g, const Point& pt) { return eval_metric(g, pt).gamma; }

Vec covariant_derivative_vector(const MetricField& g, const VectorField& X, const VectorField& Y,
                                const Point& pt) {
  return covariant_deriv(eval_metric(g, pt), eval_jet(X, pt), eval_jet(Y, pt));
}

Vec covariant_derivative_endomorphism(const MetricField& g, const EndomorphismField& T,
                                      const VectorField& X, const VectorField& Y,
                                      const Point& pt) {
  return endo_cov_apply(eval_metric(g, pt), eval_jet(T, pt), eval_jet(X, pt), eval_jet(Y, pt));
}

Vec lie_bracket(const VectorField& X, const VectorField& Y, const Point& pt) {
  return bracket(eval_jet(X, pt), eval_jet(Y, pt));
}

Vec lie_derivative_endomorphism(const VectorField& Z, const EndomorphismField& T,
                                const VectorField& X, const Point& pt) {
  return lie_endo(eval_jet(T, pt), eval_jet(Z, pt), eval_jet(X, pt));
}

double lie_derivative_one_form(const VectorField& Z, const OneFormField& w, const VectorField& X,
                               const Point& pt) {
  return lie_form(eval_jet(w, pt), eval_jet(Z, pt), eval_jet(X, pt));
}

double lie_derivative_metric(const MetricField& g, const VectorField& Z, const VectorField& X,
                             const VectorField& Y, const Point& pt) {
  return lie_metric_nabla(eval_metric(g, pt), eval_jet(Z, pt), eval_jet(X, pt), eval_jet(Y, pt));
}

double lie_derivative_metric_bracket(const MetricField& g, const VectorField& Z,
                                     const VectorField& X, const VectorField& Y, const Point& pt) {
  MetricJets M = eval_metric(g, pt);
  return lie_metric_bracket(M, eval_jet(Z, pt), eval_jet(X, pt), eval_jet(Y, pt));
}

double exterior_derivative_one_form(const OneFormField& w, const VectorField& X,
                                    const VectorField& Y, const Point& pt) {
  return d_one_form(eval_jet(w, pt), eval_jet(X, pt), eval_jet(Y, pt));
}

double exterior_derivative_two_form(const MetricField& g, const EndomorphismField& f,
                                    const VectorField& X, const VectorField& Y,
                                    const VectorField& Z, const Point& pt) {
  return d_two_form(eval_metric(g, pt), eval_jet(f, pt), eval_jet(X, pt), eval_jet(Y, pt),
                    eval_jet(Z, pt));
}

Vec nijenhuis(const EndomorphismField& T, const VectorField& X, const VectorField& Y,
              const Point& pt) {
  return nijenhuis_jet(eval_jet(T, pt), eval_jet(X, pt), eval_jet(Y, pt));
}

Vec nijenhuis_nabla(const MetricField& g, const EndomorphismField& T, const VectorField& X,
                    const VectorField& Y, const Point& pt) {
  return nijenhuis_nabla_jet(eval_metric(g, pt), eval_jet(T, pt), eval_jet(X, pt),
                             eval_jet(Y, pt));
}

double sectional_curvature(const MetricField& g, const VectorField& X, const VectorField& Y,
                           const Point& pt) {
  MetricJets M = eval_metric(g, pt);
  const Ten4 dgamma = christoffel_derivative(M);
  return sectional(M, dgamma, eval_values(X, pt), eval_values(Y, pt));
}

double totally_geodesic_residual(const MetricField& g, const std::vector<VectorField>& span,
                                 const std::vector<VectorField>& orth,
                                 const std::vector<Point>& samples) {
  double worst = 0.0;
  for (const Point& pt : samples) {
    MetricJets M = eval_metric(g, pt);
    std::vector<FieldJet> sj, oj;
    sj.reserve(span.size());
    oj.reserve(orth.size());
    for (const VectorField& f : span) sj.push_back(eval_jet(f, pt));
    for (const VectorField& f : orth) oj.push_back(eval_jet(f, pt));
    worst = std::max(worst, totally_geodesic_residual_at(M, sj, oj));
  }
  return worst;
}

}  // namespace weakf
