#include "structure.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "sweep.hpp"

namespace weakf {

Vec StructurePointData::eta_values(const Vec& x) const {
  Vec out(p, 0.0);
  for (int i = 0; i < p; ++i) out[i] = dot(eta[i].v, x);
  return out;
}

double StructurePointData::eta_bar(const Vec& x) const {
  double s = 0.0;
  for (int i = 0; i < p; ++i) s += dot(eta[i].v, x);
  return s;
}

FieldJet StructurePointData::horizontal(const FieldJet& X) const {
  FieldJet out = X;
  for (int i = 0; i < p; ++i) {
    const ScalarJet s = form_apply(eta[i], X);
    for (int k = 0; k < dim; ++k) {
      out.v[k] -= s.v * xi[i].v[k];
      for (int a = 0; a < dim; ++a)
        out.J(k, a) -= s.d[a] * xi[i].v[k] + s.v * xi[i].J(k, a);
    }
  }
  return out;
}

Vec StructurePointData::horizontal_values(const Vec& x) const {
  Vec out = x;
  for (int i = 0; i < p; ++i) {
    const double s = dot(eta[i].v, x);
    for (int k = 0; k < dim; ++k) out[k] -= s * xi[i].v[k];
  }
  return out;
}

Vec StructurePointData::vertical_values(const Vec& x) const {
  Vec out(dim, 0.0);
  for (int i = 0; i < p; ++i) {
    const double s = dot(eta[i].v, x);
    for (int k = 0; k < dim; ++k) out[k] += s * xi[i].v[k];
  }
  return out;
}

Vec StructurePointData::xi_bar_values() const {
  Vec out(dim, 0.0);
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < dim; ++k) out[k] += xi[i].v[k];
  return out;
}

StructurePointData structure_at(const FramedWeakFStructure& S, const Point& pt) {
  StructurePointData d;
  d.dim = S.dim();
  d.n = S.n;
  d.p = S.p;
  d.point = pt;
  d.M = eval_metric(S.g, pt);
  d.f = eval_jet(S.f, pt);
  d.Q = eval_jet(S.Q, pt);
  d.Qt = d.Q;
  for (int i = 0; i < d.dim; ++i) d.Qt.m(i, i) -= 1.0;
  d.xi.reserve(S.p);
  d.eta.reserve(S.p);
  for (int i = 0; i < S.p; ++i) {
    d.xi.push_back(eval_jet(S.xi[i], pt));
    d.eta.push_back(eval_jet(S.eta[i], pt));
  }
  return d;
}

Vec n1_tensor(const StructurePointData& D, const FieldJet& X, const FieldJet& Y) {
  Vec out = nijenhuis_jet(D.f, X, Y);
  for (int i = 0; i < D.p; ++i) {
    const double de = d_one_form(D.eta[i], X, Y);
    for (int k = 0; k < D.dim; ++k) out[k] += 2.0 * de * D.xi[i].v[k];
  }
  return out;
}

double n2_tensor(const StructurePointData& D, int i, const FieldJet& X, const FieldJet& Y) {
  const FieldJet fX = apply_endo(D.f, X);
  const FieldJet fY = apply_endo(D.f, Y);
  return 2.0 * d_one_form(D.eta[i], fX, Y) - 2.0 * d_one_form(D.eta[i], fY, X);
}

Vec n3_tensor(const StructurePointData& D, int i, const FieldJet& X) {
  return lie_endo(D.f, D.xi[i], X);
}

double n4_tensor(const StructurePointData& D, int i, int j, const FieldJet& X) {
  return 2.0 * d_one_form(D.eta[j], D.xi[i], X);
}

double n5_tensor(const StructurePointData& D, const FieldJet& X, const FieldJet& Y,
                 const FieldJet& Z) {
  const FieldJet fY = apply_endo(D.f, Y);
  const FieldJet fZ = apply_endo(D.f, Z);
  const FieldJet QtY = apply_endo(D.Qt, Y);
  const FieldJet QtZ = apply_endo(D.Qt, Z);
  const FieldJet Xtop = D.horizontal(X);

  const double t1 = directional(fZ.v, metric_pair(D.M, Xtop, QtY));
  const double t2 = -directional(fY.v, metric_pair(D.M, Xtop, QtZ));
  const double t3 =
      metric_pair_value(D.M.g, D.horizontal_values(bracket(X, fZ)), QtY.v);
  const double t4 =
      -metric_pair_value(D.M.g, D.horizontal_values(bracket(X, fY)), QtZ.v);

  const Vec u1 = D.horizontal_values(bracket(Y, fZ));
  const Vec u2 = D.horizontal_values(bracket(Z, fY));
  const Vec u3 = apply_matrix(D.f.m, bracket(Y, Z));
  Vec u(D.dim);
  for (int k = 0; k < D.dim; ++k) u[k] = u1[k] - u2[k] - u3[k];
  const double t5 = metric_pair_value(D.M.g, u, apply_matrix(D.Qt.m, X.v));

  return t1 + t2 + t3 + t4 + t5;
}

double fundamental_form_at(const StructurePointData& D, const Vec& X, const Vec& Y) {
  return metric_pair_value(D.M.g, X, apply_matrix(D.f.m, Y));
}

Mat h_matrix(const StructurePointData& D, int i) {
  const int d = D.dim;
  Mat h(d, d);
  Vec e(d, 0.0);
  for (int a = 0; a < d; ++a) {
    e[a] = 1.0;
    const Vec col = n3_tensor(D, i, constant_jet(e));
    for (int k = 0; k < d; ++k) h(k, a) = 0.5 * col[k];
    e[a] = 0.0;
  }
  return h;
}

Mat h_adjoint_matrix(const StructurePointData& D, int i) {
  // g(h* X, Y) = g(X, h Y)  =>  h* = g^{-1} h^T g
  const Mat h = h_matrix(D, i);
  const int d = D.dim;
  Mat out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      double s = 0.0;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) s += D.M.ginv(r, a) * h(b, a) * D.M.g(b, c);
      out(r, c) = s;
    }
  return out;
}

// --- chart-level wrappers ------------------------------------------------------

Vec N1(const FramedWeakFStructure& S, const VectorField& X, const VectorField& Y,
       const Point& pt) {
  return n1_tensor(structure_at(S, pt), eval_jet(X, pt), eval_jet(Y, pt));
}

double N2(const FramedWeakFStructure& S, int i, const VectorField& X, const VectorField& Y,
          const Point& pt) {
  return n2_tensor(structure_at(S, pt), i, eval_jet(X, pt), eval_jet(Y, pt));
}

Vec N3(const FramedWeakFStructure& S, int i, const VectorField& X, const Point& pt) {
  return n3_tensor(structure_at(S, pt), i, eval_jet(X, pt));
}

double N4(const FramedWeakFStructure& S, int i, int j, const VectorField& X, const Point& pt) {
  return n4_tensor(structure_at(S, pt), i, j, eval_jet(X, pt));
}

double N5(const FramedWeakFStructure& S, const VectorField& X, const VectorField& Y,
          const VectorField& Z, const Point& pt) {
  return n5_tensor(structure_at(S, pt), eval_jet(X, pt), eval_jet(Y, pt), eval_jet(Z, pt));
}

double fundamental_form(const FramedWeakFStructure& S, const VectorField& X, const VectorField& Y,
                        const Point& pt) {
  const StructurePointData d = structure_at(S, pt);
  return fundamental_form_at(d, eval_values(X, pt), eval_values(Y, pt));
}

Vec h_tensor(const FramedWeakFStructure& S, int i, const VectorField& X, const Point& pt) {
  const StructurePointData d = structure_at(S, pt);
  return apply_matrix(h_matrix(d, i), eval_values(X, pt));
}

Vec h_adjoint(const FramedWeakFStructure& S, int i, const VectorField& X, const Point& pt) {
  const StructurePointData d = structure_at(S, pt);
  return apply_matrix(h_adjoint_matrix(d, i), eval_values(X, pt));
}

// --- sweeps ---------------------------------------------------------------------

SamplePlan make_sample_plan(const Box& box, const SweepConfig& cfg) {
  SamplePlan plan;
  SampleStream rng(cfg.seed);
  const int dim = box.dim();
  plan.points.reserve(cfg.samples);
  plan.combos.reserve(cfg.samples);
  for (int s = 0; s < cfg.samples; ++s) {
    plan.points.push_back(rng.point_in(box));
    std::vector<Vec> combos;
    combos.reserve(cfg.combos);
    for (int c = 0; c < cfg.combos; ++c) combos.push_back(rng.coefficients(dim));
    plan.combos.push_back(std::move(combos));
  }
  return plan;
}

std::vector<FieldJet> probe_pool(int dim, const std::vector<Vec>& combos) {
  std::vector<FieldJet> pool;
  pool.reserve(dim + combos.size());
  Vec e(dim, 0.0);
  for (int a = 0; a < dim; ++a) {
    e[a] = 1.0;
    pool.push_back(constant_jet(e));
    e[a] = 0.0;
  }
  for (const Vec& c : combos) pool.push_back(constant_jet(c));
  return pool;
}

std::vector<VerificationReport> validate_axioms(const FramedWeakFStructure& S,
                                                const SweepConfig& cfg) {
  const int dim = S.dim();
  const SamplePlan plan = make_sample_plan(S.box, cfg);

  ResidualTracker f_cubed, q_fixes_kernel, f_squared, dual_frame, compatible_metric;
  ResidualTracker rank_f, q_nonsingular, f_kills_xi, eta_kills_image, qf_commute;
  ResidualTracker f_skew, q_self_adjoint, metric_dual, metric_positive;
  ResidualTracker image_invariant, metric_splitting;

  for (size_t sidx = 0; sidx < plan.points.size(); ++sidx) {
    const Point& pt = plan.points[sidx];
    const StructurePointData D = structure_at(S, pt);
    const std::vector<FieldJet> pool = probe_pool(dim, plan.combos[sidx]);

    const double fmag = std::max(1.0, max_abs(D.f.m));
    const double qmag = std::max(1.0, max_abs(D.Q.m));
    const double gmag = std::max(1.0, max_abs(D.M.g));

    // rank f = 2n and nonsingular Q, via elimination pivots
    {
      const Vec fpiv = elimination_pivots(D.f.m);
      const double top = std::max(fpiv[0], 1e-300);
      double r = fpiv[2 * S.n] / top;  // must be ~0
      if (2 * S.n > 0 && fpiv[2 * S.n - 1] / top < 1e-6) r = std::max(r, 1.0);  // rank deficit
      rank_f.add(r, 1.0, pt);

      const Vec qpiv = elimination_pivots(D.Q.m);
      q_nonsingular.add(qpiv[dim - 1] / std::max(qpiv[0], 1e-300) < 1e-12 ? 1.0 : 0.0, 1.0, pt);

      double min_pivot = 0.0;
      metric_positive.add(positive_definite(D.M.g, &min_pivot) ? 0.0 : 1.0, 1.0, pt);
    }

    for (int i = 0; i < S.p; ++i) {
      // Q xi_i = xi_i
      track_eq(q_fixes_kernel, apply_matrix(D.Q.m, D.xi[i].v), D.xi[i].v, pt);
      // f xi_i = 0
      track_zero(f_kills_xi, apply_matrix(D.f.m, D.xi[i].v),
                 fmag * std::max(1.0, max_abs(D.xi[i].v)), pt);
      // eta^i(xi_j) = delta_ij
      for (int j = 0; j < S.p; ++j)
        track_eq(dual_frame, dot(D.eta[i].v, D.xi[j].v), i == j ? 1.0 : 0.0, pt);
    }

    for (const FieldJet& X : pool) {
      const Vec fX = apply_matrix(D.f.m, X.v);
      const Vec QX = apply_matrix(D.Q.m, X.v);

      // f^3 X = -f Q X
      const Vec f3 = apply_matrix(D.f.m, apply_matrix(D.f.m, fX));
      Vec mfq = apply_matrix(D.f.m, QX);
      for (double& v : mfq) v = -v;
      track_eq(f_cubed, f3, mfq, pt);

      // f^2 X = -Q X + sum eta^i(X) xi_i
      const Vec f2 = apply_matrix(D.f.m, fX);
      Vec rhs(dim);
      for (int k = 0; k < dim; ++k) rhs[k] = -QX[k];
      for (int i = 0; i < S.p; ++i) {
        const double s = dot(D.eta[i].v, X.v);
        for (int k = 0; k < dim; ++k) rhs[k] += s * D.xi[i].v[k];
      }
      track_eq(f_squared, f2, rhs, pt);

      // [Q, f] X = 0
      const Vec qf = apply_matrix(D.Q.m, fX);
      const Vec fq = apply_matrix(D.f.m, QX);
      track_eq(qf_commute, qf, fq, pt);

      // eta^i(f X) = 0
      for (int i = 0; i < S.p; ++i)
        track_zero(eta_kills_image, dot(D.eta[i].v, fX),
                   std::max(1.0, max_abs(D.eta[i].v)) * std::max(1.0, max_abs(fX)), pt);

      // g(X, xi_i) = eta^i(X)
      for (int i = 0; i < S.p; ++i)
        track_eq(metric_dual, metric_pair_value(D.M.g, X.v, D.xi[i].v), dot(D.eta[i].v, X.v), pt);

      // eta^i(f X_top) = 0: f(TM) is f-invariant
      const Vec xtop = D.horizontal_values(X.v);
      const Vec fxtop = apply_matrix(D.f.m, xtop);
      for (int i = 0; i < S.p; ++i)
        track_zero(image_invariant, dot(D.eta[i].v, fxtop), fmag, pt);

      for (const FieldJet& Y : pool) {
        const Vec fY = apply_matrix(D.f.m, Y.v);
        const Vec QY = apply_matrix(D.Q.m, Y.v);

        // g(fX, fY) = g(X, QY) - sum eta^i(X) eta^i(QY)
        double rhs2 = metric_pair_value(D.M.g, X.v, QY);
        for (int i = 0; i < S.p; ++i) rhs2 -= dot(D.eta[i].v, X.v) * dot(D.eta[i].v, QY);
        track_eq(compatible_metric, metric_pair_value(D.M.g, fX, fY), rhs2, pt);

        // skewness of f and self-adjointness of Q
        track_zero(f_skew,
                   metric_pair_value(D.M.g, fX, Y.v) + metric_pair_value(D.M.g, X.v, fY),
                   gmag * fmag, pt);
        track_zero(q_self_adjoint,
                   metric_pair_value(D.M.g, QX, Y.v) - metric_pair_value(D.M.g, X.v, QY),
                   gmag * qmag, pt);

        // g(X,Z) = Phi(fX,Z) + sum eta^i(X) eta^i(Z) - g(X_top, Qt Z)
        double rhs3 = metric_pair_value(D.M.g, fX, apply_matrix(D.f.m, Y.v));
        for (int i = 0; i < S.p; ++i) rhs3 += dot(D.eta[i].v, X.v) * dot(D.eta[i].v, Y.v);
        rhs3 -= metric_pair_value(D.M.g, xtop, apply_matrix(D.Qt.m, Y.v));
        track_eq(metric_splitting, metric_pair_value(D.M.g, X.v, Y.v), rhs3, pt);
      }
    }

    for (ResidualTracker* t :
         {&f_cubed, &q_fixes_kernel, &f_squared, &dual_frame, &compatible_metric, &rank_f,
          &q_nonsingular, &f_kills_xi, &eta_kills_image, &qf_commute, &f_skew, &q_self_adjoint,
          &metric_dual, &metric_positive, &image_invariant, &metric_splitting})
      t->count_sample();
  }

  return {
      f_cubed.report("axiom-f-cubed-plus-fQ", cfg.tol),
      q_fixes_kernel.report("axiom-Q-fixes-kernel", cfg.tol),
      f_squared.report("axiom-f-squared-splitting", cfg.tol),
      dual_frame.report("axiom-dual-frame", cfg.tol),
      compatible_metric.report("axiom-compatible-metric", cfg.tol),
      rank_f.report("axiom-rank-f", cfg.tol),
      q_nonsingular.report("axiom-Q-nonsingular", cfg.tol),
      f_kills_xi.report("axiom-f-kills-xi", cfg.tol),
      eta_kills_image.report("axiom-eta-annihilates-image", cfg.tol),
      qf_commute.report("axiom-Qf-commute", cfg.tol),
      f_skew.report("axiom-f-skew-adjoint", cfg.tol),
      q_self_adjoint.report("axiom-Q-self-adjoint", cfg.tol),
      metric_dual.report("axiom-metric-dual-frame", cfg.tol),
      metric_positive.report("axiom-metric-positive", cfg.tol),
      image_invariant.report("axiom-image-f-invariant", cfg.tol),
      metric_splitting.report("identity-metric-splitting", cfg.tol),
  };
}

StructureClass classify(const FramedWeakFStructure& S, const SweepConfig& cfg) {
  StructureClass out;

  const std::vector<VerificationReport> axioms = validate_axioms(S, cfg);
  for (const auto& r : axioms) out.axiom_residual = std::max(out.axiom_residual, r.max_residual);
  out.valid = out.axiom_residual < cfg.tol;
  if (!out.valid) return out;  // classification refused

  const int dim = S.dim();
  const SamplePlan plan = make_sample_plan(S.box, cfg);
  ResidualTracker n1_t, dphi_t, deta_phi_t, deta_t;

  for (size_t sidx = 0; sidx < plan.points.size(); ++sidx) {
    const Point& pt = plan.points[sidx];
    const StructurePointData D = structure_at(S, pt);
    const std::vector<FieldJet> pool = probe_pool(dim, plan.combos[sidx]);
    const double fmag = std::max(1.0, max_abs(D.f.m));
    const double gmag = std::max(1.0, max_abs(D.M.g));

    for (size_t x = 0; x < pool.size(); ++x) {
      for (size_t y = x + 1; y < pool.size(); ++y) {
        const FieldJet& X = pool[x];
        const FieldJet& Y = pool[y];
        track_zero(n1_t, n1_tensor(D, X, Y), fmag * fmag, pt);
        const double phi = fundamental_form_at(D, X.v, Y.v);
        for (int i = 0; i < S.p; ++i) {
          const double de = d_one_form(D.eta[i], X, Y);
          deta_t.add(de, 1.0, pt);
          deta_phi_t.add(de - phi, operand_scale({de, phi}), pt);
        }
        for (size_t z = y + 1; z < pool.size(); ++z)
          track_zero(dphi_t, d_two_form(D.M, D.f, X, Y, pool[z]), gmag * fmag, pt);
      }
    }
    for (ResidualTracker* t : {&n1_t, &dphi_t, &deta_phi_t, &deta_t}) t->count_sample();
  }

  out.n1_residual = n1_t.max_residual();
  out.dphi_residual = dphi_t.max_residual();
  out.deta_minus_phi_residual = deta_phi_t.max_residual();
  out.deta_residual = deta_t.max_residual();

  out.normal = out.n1_residual < cfg.tol;
  out.weak_K = out.normal && out.dphi_residual < cfg.tol;
  out.weak_almost_S = out.deta_minus_phi_residual < cfg.tol;
  out.weak_S = out.weak_almost_S && out.normal;
  out.weak_almost_C = out.dphi_residual < cfg.tol && out.deta_residual < cfg.tol;
  out.weak_C = out.weak_almost_C && out.normal;
  return out;
}

// --- product extension -----------------------------------------------------------

ProductExtension product_extension(const FramedWeakFStructure& S) {
  const int d = S.dim();
  const int dbar = d + S.p;

  ProductExtension ext;
  ext.dim = dbar;
  ext.coords = S.coords;
  for (int i = 0; i < S.p; ++i) {
    std::string name = "t" + std::to_string(i + 1);
    while (std::find(ext.coords.begin(), ext.coords.end(), name) != ext.coords.end())
      name = "t" + name;
    ext.coords.push_back(name);
  }

  const Expr zero = Expr::constant(0.0, dbar);
  ext.fbar.d = dbar;
  ext.fbar.comp.assign(static_cast<size_t>(dbar) * dbar, zero);
  ext.Qbar.d = dbar;
  ext.Qbar.comp.assign(static_cast<size_t>(dbar) * dbar, zero);

  // fbar(X, sum a^i d_i) = (fX - sum a^i xi_i, sum eta^j(X) d_j)
  // Qbar(X, sum a^i d_i) = (QX, sum a^i d_i)
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      ext.fbar.at(i, j) = S.f.at(i, j).with_dim(dbar);
      ext.Qbar.at(i, j) = S.Q.at(i, j).with_dim(dbar);
    }
  for (int i = 0; i < S.p; ++i)
    for (int k = 0; k < d; ++k) {
      ext.fbar.at(k, d + i) = Expr::unary(ExprOp::negate, S.xi[i].comp[k].with_dim(dbar));
      ext.fbar.at(d + i, k) = S.eta[i].comp[k].with_dim(dbar);
    }
  for (int i = 0; i < S.p; ++i) ext.Qbar.at(d + i, d + i) = Expr::constant(1.0, dbar);

  ext.box = S.box;
  for (int i = 0; i < S.p; ++i) ext.box.range.push_back({-1.0, 1.0});
  return ext;
}

}  // namespace weakf
