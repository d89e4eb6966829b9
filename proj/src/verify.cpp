#include "verify.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "sweep.hpp"

namespace weakf {

namespace {

/// Everything the theorem sweeps reuse at one sample point.
struct PointCtx {
  StructurePointData D;
  std::vector<FieldJet> pool;
  std::vector<FieldJet> fpool;  // f applied to each probe
  Ten3 covf;                    // (nabla_a f)^i_j

  /// (nabla_X f)Y from the covariant derivative tensor; tensorial, so values
  /// of X and Y suffice.
  Vec nabla_f(const Vec& x, const Vec& y) const {
    const int d = D.dim;
    Vec out(d, 0.0);
    for (int i = 0; i < d; ++i) {
      double s = 0.0;
      for (int a = 0; a < d; ++a)
        for (int j = 0; j < d; ++j) s += covf(i, j, a) * x[a] * y[j];
      out[i] = s;
    }
    return out;
  }

  double g(const Vec& a, const Vec& b) const { return metric_pair_value(D.M.g, a, b); }
  double eta(int i, const Vec& x) const { return dot(D.eta[i].v, x); }
  double eta_bar(const Vec& x) const { return D.eta_bar(x); }
};

PointCtx make_ctx(const FramedWeakFStructure& S, const Point& pt, const std::vector<Vec>& combos) {
  PointCtx c{structure_at(S, pt), {}, {}, {}};
  c.pool = probe_pool(c.D.dim, combos);
  c.fpool.reserve(c.pool.size());
  for (const FieldJet& v : c.pool) c.fpool.push_back(apply_endo(c.D.f, v));
  c.covf = endo_covariant(c.D.M, c.D.f);
  return c;
}

double max_abs3(const Ten3& t) {
  double r = 0.0;
  for (double v : t.data()) r = std::max(r, std::fabs(v));
  return r;
}

HypothesisStatus gate(const StructureClass& cls, bool flag) {
  if (!cls.valid) return HypothesisStatus::invalid_structure;
  return flag ? HypothesisStatus::satisfied : HypothesisStatus::vacuous;
}

// -----------------------------------------------------------------------------
// master-3.1: the expansion of 2 g((nabla_X f)Y, Z) into dPhi, N^(1), N^(2),
// d(eta) and N^(5) terms, plus the pairing (nabla_X Phi)(Z,Y) = g((nabla_X f)Y, Z).
// Fully general: requires only a valid structure.
CheckReport check_master_formula(const FramedWeakFStructure& S, const StructureClass& cls,
                                 const SweepConfig& cfg) {
  CheckReport out;
  out.check_id = "master-3.1";
  out.status = gate(cls, true);
  if (out.status != HypothesisStatus::satisfied) return out;

  const SamplePlan plan = make_sample_plan(S.box, cfg);
  ResidualTracker expansion, pairing;

  for (size_t sp = 0; sp < plan.points.size(); ++sp) {
    const Point& pt = plan.points[sp];
    const PointCtx c = make_ctx(S, pt, plan.combos[sp]);
    const StructurePointData& D = c.D;
    const size_t np = c.pool.size();

    for (size_t yi = 0; yi < np; ++yi) {
      const FieldJet& Y = c.pool[yi];
      const FieldJet& fY = c.fpool[yi];
      for (size_t zi = 0; zi < np; ++zi) {
        const FieldJet& Z = c.pool[zi];
        const FieldJet& fZ = c.fpool[zi];
        const Vec n1yz = n1_tensor(D, Y, Z);
        Vec n2yz(S.p);
        for (int i = 0; i < S.p; ++i) n2yz[i] = n2_tensor(D, i, Y, Z);

        for (size_t xi = 0; xi < np; ++xi) {
          const FieldJet& X = c.pool[xi];
          const FieldJet& fX = c.fpool[xi];

          const Vec w = c.nabla_f(X.v, Y.v);
          const double lhs = 2.0 * c.g(w, Z.v);

          const double t_dphi1 = 3.0 * d_two_form(D.M, D.f, X, fY, fZ);
          const double t_dphi2 = -3.0 * d_two_form(D.M, D.f, X, Y, Z);
          const double t_n1 = c.g(n1yz, fX.v);
          double t_sum = 0.0;
          for (int i = 0; i < S.p; ++i)
            t_sum += n2yz[i] * c.eta(i, X.v) +
                     2.0 * d_one_form(D.eta[i], fY, X) * c.eta(i, Z.v) -
                     2.0 * d_one_form(D.eta[i], fZ, X) * c.eta(i, Y.v);
          const double t_n5 = n5_tensor(D, X, Y, Z);
          const double rhs = t_dphi1 + t_dphi2 + t_n1 + t_sum + t_n5;

          expansion.add(lhs - rhs,
                        operand_scale({lhs, rhs, t_dphi1, t_dphi2, t_n1, t_sum, t_n5}), pt);

          // (nabla_X Phi)(Z,Y) = X(Phi(Z,Y)) - Phi(nabla_X Z, Y) - Phi(Z, nabla_X Y)
          const double xphi = directional(X.v, metric_pair(D.M, Z, fY));
          const double p1 = fundamental_form_at(D, covariant_deriv(D.M, X, Z), Y.v);
          const double p2 = fundamental_form_at(D, Z.v, covariant_deriv(D.M, X, Y));
          track_eq(pairing, xphi - p1 - p2, c.g(w, Z.v), pt);
        }
      }
    }
    expansion.count_sample();
    pairing.count_sample();
  }

  out.identities.push_back(expansion.report("covariant-f-expansion", cfg.tol));
  out.identities.push_back(pairing.report("nabla-phi-pairing", cfg.tol));
  return out;
}

// -----------------------------------------------------------------------------
// normal-2.1: consequences of normality.
CheckReport check_normal_consequences(const FramedWeakFStructure& S, const StructureClass& cls,
                                      const SweepConfig& cfg) {
  CheckReport out;
  out.check_id = "normal-2.1";
  out.status = gate(cls, cls.normal);
  if (out.status != HypothesisStatus::satisfied) return out;

  const SamplePlan plan = make_sample_plan(S.box, cfg);
  ResidualTracker n3_t, n4_t, n2_form, xi_sym, kernel_tg;

  for (size_t sp = 0; sp < plan.points.size(); ++sp) {
    const Point& pt = plan.points[sp];
    const PointCtx c = make_ctx(S, pt, plan.combos[sp]);
    const StructurePointData& D = c.D;
    const double fmag = std::max(1.0, max_abs(D.f.m));

    for (size_t xi = 0; xi < c.pool.size(); ++xi) {
      const FieldJet& X = c.pool[xi];
      for (int i = 0; i < S.p; ++i) {
        track_zero(n3_t, n3_tensor(D, i, X), fmag, pt);
        for (int j = 0; j < S.p; ++j) track_zero(n4_t, n4_tensor(D, i, j, X), 1.0, pt);
      }
      for (size_t yi = 0; yi < c.pool.size(); ++yi) {
        const FieldJet QtXtop = apply_endo(D.Qt, D.horizontal(X));
        const Vec br = bracket(QtXtop, c.fpool[yi]);
        for (int i = 0; i < S.p; ++i)
          track_eq(n2_form, n2_tensor(D, i, X, c.pool[yi]), c.eta(i, br), pt);
      }
    }
    for (int i = 0; i < S.p; ++i)
      for (int j = i; j < S.p; ++j) {
        const Vec a = covariant_deriv(D.M, D.xi[i], D.xi[j]);
        const Vec b = covariant_deriv(D.M, D.xi[j], D.xi[i]);
        Vec sum(a.size());
        for (size_t k = 0; k < a.size(); ++k) sum[k] = a[k] + b[k];
        track_zero(xi_sym, sum, operand_scale({max_abs(a), max_abs(b)}), pt);
      }
    {
      std::vector<FieldJet> orth;
      Vec e(D.dim, 0.0);
      for (int a = 0; a < D.dim; ++a) {
        e[a] = 1.0;
        orth.push_back(D.horizontal(constant_jet(e)));
        e[a] = 0.0;
      }
      kernel_tg.add(totally_geodesic_residual_at(D.M, D.xi, orth), 1.0, pt);
    }
    for (ResidualTracker* t : {&n3_t, &n4_t, &n2_form, &xi_sym, &kernel_tg}) t->count_sample();
  }

  out.identities = {n3_t.report("n3-vanishes", cfg.tol), n4_t.report("n4-vanishes", cfg.tol),
                    n2_form.report("n2-bracket-form", cfg.tol),
                    xi_sym.report("xi-symmetrized-derivative", cfg.tol),
                    kernel_tg.report("kernel-totally-geodesic", cfg.tol)};
  return out;
}

// -----------------------------------------------------------------------------
// weak-K: Killing characteristic fields, integrable kernel, and the
// weak-K form of the covariant derivative of f.
CheckReport check_weak_K(const FramedWeakFStructure& S, const StructureClass& cls,
                         const SweepConfig& cfg) {
  CheckReport out;
  out.check_id = "weak-K";
  out.status = gate(cls, cls.weak_K);
  if (out.status != HypothesisStatus::satisfied) return out;

  const SamplePlan plan = make_sample_plan(S.box, cfg);
  ResidualTracker killing, nabla_xi, integrable, cov_f, cov_f_xi;

  for (size_t sp = 0; sp < plan.points.size(); ++sp) {
    const Point& pt = plan.points[sp];
    const PointCtx c = make_ctx(S, pt, plan.combos[sp]);
    const StructurePointData& D = c.D;
    const size_t np = c.pool.size();
    const double gmag = std::max(1.0, max_abs(D.M.g));

    for (int k = 0; k < S.p; ++k)
      for (int j = 0; j < S.p; ++j)
        track_zero(nabla_xi, covariant_deriv(D.M, D.xi[k], D.xi[j]), 1.0, pt);

    for (int i = 0; i < S.p; ++i)
      for (int j = i + 1; j < S.p; ++j) {
        const Vec br = bracket(D.xi[i], D.xi[j]);
        for (size_t xi = 0; xi < np; ++xi)
          track_zero(integrable, c.g(br, c.fpool[xi].v), gmag, pt);
      }

    for (size_t yi = 0; yi < np; ++yi) {
      const FieldJet& Y = c.pool[yi];
      const FieldJet& fY = c.fpool[yi];
      for (int i = 0; i < S.p; ++i)
        for (size_t zi = 0; zi < np; ++zi)
          track_zero(killing, lie_metric_nabla(D.M, D.xi[i], Y, c.pool[zi]), gmag, pt);

      const FieldJet QtYtop = apply_endo(D.Qt, D.horizontal(Y));
      for (size_t zi = 0; zi < np; ++zi) {
        const FieldJet& Z = c.pool[zi];
        const FieldJet& fZ = c.fpool[zi];
        const Vec brYZ = bracket(QtYtop, fZ);

        // the xi-direction specialization
        for (int i = 0; i < S.p; ++i) {
          const double lhs = 2.0 * c.g(c.nabla_f(D.xi[i].v, Y.v), Z.v);
          const double rhs = c.eta(i, brYZ) + n5_tensor(D, D.xi[i], Y, Z);
          track_eq(cov_f_xi, lhs, rhs, pt);
        }

        for (size_t xi = 0; xi < np; ++xi) {
          const FieldJet& X = c.pool[xi];
          const double lhs = 2.0 * c.g(c.nabla_f(X.v, Y.v), Z.v);
          double sum = 0.0;
          for (int i = 0; i < S.p; ++i)
            sum += 2.0 * d_one_form(D.eta[i], fY, X) * c.eta(i, Z.v) -
                   2.0 * d_one_form(D.eta[i], fZ, X) * c.eta(i, Y.v) +
                   c.eta(i, brYZ) * c.eta(i, X.v);
          const double t_n5 = n5_tensor(D, X, Y, Z);
          cov_f.add(lhs - (sum + t_n5), operand_scale({lhs, sum, t_n5}), pt);
        }
      }
    }
    for (ResidualTracker* t : {&killing, &nabla_xi, &integrable, &cov_f, &cov_f_xi})
      t->count_sample();
  }

  out.identities = {killing.report("xi-killing", cfg.tol), nabla_xi.report("nabla-xi-xi", cfg.tol),
                    integrable.report("kernel-integrable", cfg.tol),
                    cov_f.report("covariant-f-weak-k", cfg.tol),
                    cov_f_xi.report("covariant-f-weak-k-xi", cfg.tol)};
  return out;
}

// -----------------------------------------------------------------------------
// almost-S
CheckReport check_almost_S(const FramedWeakFStructure& S, const StructureClass& cls,
                           const SweepConfig& cfg) {
  CheckReport out;
  out.check_id = "almost-S";
  out.status = gate(cls, cls.weak_almost_S);
  if (out.status != HypothesisStatus::satisfied) return out;

  const SamplePlan plan = make_sample_plan(S.box, cfg);
  ResidualTracker n2_t, n4_t, n3_mag, killing_mag, cov_f, cov_f_xi, nabla_xi, plane_k, vertical;

  for (size_t sp = 0; sp < plan.points.size(); ++sp) {
    const Point& pt = plan.points[sp];
    const PointCtx c = make_ctx(S, pt, plan.combos[sp]);
    const StructurePointData& D = c.D;
    const size_t np = c.pool.size();
    const double gmag = std::max(1.0, max_abs(D.M.g));
    const double fmag = std::max(1.0, max_abs(D.f.m));

    for (int i = 0; i < S.p; ++i)
      for (int j = 0; j < S.p; ++j)
        track_zero(nabla_xi, covariant_deriv(D.M, D.xi[i], D.xi[j]), 1.0, pt);

    if (S.p >= 2) {
      const Ten4 dgamma = christoffel_derivative(D.M);
      for (int i = 0; i < S.p; ++i)
        for (int j = i + 1; j < S.p; ++j)
          track_zero(plane_k, sectional(D.M, dgamma, D.xi[i].v, D.xi[j].v), 1.0, pt);
    }

    for (size_t xi = 0; xi < np; ++xi) {
      const FieldJet& X = c.pool[xi];
      for (int i = 0; i < S.p; ++i) {
        track_zero(n3_mag, n3_tensor(D, i, X), fmag, pt);
        const Vec nx = covariant_deriv(D.M, X, D.xi[i]);
        for (int k = 0; k < S.p; ++k) track_zero(vertical, c.g(nx, D.xi[k].v), gmag, pt);
      }
      for (size_t yi = 0; yi < np; ++yi) {
        const FieldJet& Y = c.pool[yi];
        for (int i = 0; i < S.p; ++i) {
          track_zero(n2_t, n2_tensor(D, i, X, Y), 1.0, pt);
          for (int j = 0; j < S.p; ++j) track_zero(n4_t, n4_tensor(D, i, j, X), 1.0, pt);
          track_zero(killing_mag, lie_metric_nabla(D.M, D.xi[i], X, Y), gmag, pt);
          // the xi-direction form of the covariant derivative of f
          track_eq(cov_f_xi, 2.0 * c.g(c.nabla_f(D.xi[i].v, X.v), Y.v),
                   n5_tensor(D, D.xi[i], X, Y), pt);
        }
      }
    }

    for (size_t yi = 0; yi < np; ++yi) {
      const FieldJet& Y = c.pool[yi];
      const FieldJet& fY = c.fpool[yi];
      for (size_t zi = 0; zi < np; ++zi) {
        const FieldJet& Z = c.pool[zi];
        const FieldJet& fZ = c.fpool[zi];
        const Vec n1yz = n1_tensor(D, Y, Z);
        for (size_t xi = 0; xi < np; ++xi) {
          const FieldJet& X = c.pool[xi];
          const FieldJet& fX = c.fpool[xi];
          const double lhs = 2.0 * c.g(c.nabla_f(X.v, Y.v), Z.v);
          const double t1 = c.g(n1yz, fX.v);
          const double t2 = 2.0 * c.g(fX.v, fY.v) * c.eta_bar(Z.v) -
                            2.0 * c.g(fX.v, fZ.v) * c.eta_bar(Y.v);
          const double t3 = n5_tensor(D, X, Y, Z);
          cov_f.add(lhs - (t1 + t2 + t3), operand_scale({lhs, t1, t2, t3}), pt);
        }
      }
    }

    for (ResidualTracker* t :
         {&n2_t, &n4_t, &n3_mag, &killing_mag, &cov_f, &cov_f_xi, &nabla_xi, &plane_k, &vertical})
      t->count_sample();
  }

  // The theorem asserts the equivalence "N^(3)_i = 0 iff xi_i is Killing";
  // both magnitudes are reported side by side and pass iff their
  // threshold status agrees.
  const bool n3_zero = n3_mag.max_residual() < cfg.tol;
  const bool killing_zero = killing_mag.max_residual() < cfg.tol;
  VerificationReport n3_rep = n3_mag.report("n3-magnitude", cfg.tol);
  VerificationReport kil_rep = killing_mag.report("xi-killing-magnitude", cfg.tol);
  n3_rep.pass = kil_rep.pass = (n3_zero == killing_zero);

  out.identities = {n2_t.report("n2-vanishes", cfg.tol), n4_t.report("n4-vanishes", cfg.tol),
                    n3_rep, kil_rep, cov_f.report("covariant-f-almost-s", cfg.tol),
                    cov_f_xi.report("covariant-f-xi-direction", cfg.tol),
                    nabla_xi.report("nabla-xi-xi", cfg.tol),
                    vertical.report("nabla-xi-vertical", cfg.tol)};
  if (S.p >= 2) out.identities.push_back(plane_k.report("kernel-plane-curvature", cfg.tol));
  return out;
}

// -----------------------------------------------------------------------------
// h-identities: the tensor h_i = 1/2 L_{xi_i} f and its conjugate.
CheckReport check_h_identities(const FramedWeakFStructure& S, const StructureClass& cls,
                               const SweepConfig& cfg) {
  CheckReport out;
  out.check_id = "h-identities";
  out.status = gate(cls, cls.weak_almost_S);
  if (out.status != HypothesisStatus::satisfied) return out;

  const SamplePlan plan = make_sample_plan(S.box, cfg);
  ResidualTracker conj_diff, q_pairing, anticomm, kills_xi, conj_sym, d_eta_form;

  for (size_t sp = 0; sp < plan.points.size(); ++sp) {
    const Point& pt = plan.points[sp];
    const PointCtx c = make_ctx(S, pt, plan.combos[sp]);
    const StructurePointData& D = c.D;
    const size_t np = c.pool.size();

    std::vector<Mat> h(S.p), hstar(S.p);
    for (int i = 0; i < S.p; ++i) {
      h[i] = h_matrix(D, i);
      hstar[i] = h_adjoint_matrix(D, i);
    }

    for (int i = 0; i < S.p; ++i)
      for (int j = 0; j < S.p; ++j)
        track_zero(kills_xi, apply_matrix(h[i], D.xi[j].v),
                   operand_scale({max_abs3(D.f.dm)}), pt);

    for (size_t xi = 0; xi < np; ++xi) {
      const FieldJet& X = c.pool[xi];
      const FieldJet& fX = c.fpool[xi];
      for (int i = 0; i < S.p; ++i) {
        // anticommutator of h_i with f against the lie derivative of Qt
        const Vec hf = apply_matrix(h[i], fX.v);
        const Vec fh = apply_matrix(D.f.m, apply_matrix(h[i], X.v));
        Vec lhs(hf.size());
        for (size_t k = 0; k < hf.size(); ++k) lhs[k] = hf[k] + fh[k];
        Vec rhs = lie_endo(D.Qt, D.xi[i], X);
        for (double& v : rhs) v *= -0.5;
        track_eq(anticomm, lhs, rhs, pt);
      }
      for (size_t yi = 0; yi < np; ++yi) {
        const FieldJet& Y = c.pool[yi];
        const FieldJet& fY = c.fpool[yi];
        for (int i = 0; i < S.p; ++i) {
          // conjugate difference against N^(5)
          Vec diff(D.dim);
          const Vec hx = apply_matrix(h[i], X.v);
          const Vec hsx = apply_matrix(hstar[i], X.v);
          for (int k = 0; k < D.dim; ++k) diff[k] = hx[k] - hsx[k];
          track_eq(conj_diff, c.g(diff, Y.v), 0.5 * n5_tensor(D, D.xi[i], X, Y), pt);

          // pairing of Q nabla_X xi with (f + h_i f)
          const Vec nx = covariant_deriv(D.M, X, D.xi[i]);
          const double lhs = c.g(apply_matrix(D.Q.m, nx), Y.v);
          Vec fy_plus_hfy = apply_matrix(h[i], fY.v);
          for (int k = 0; k < D.dim; ++k) fy_plus_hfy[k] += fY.v[k];
          const double rhs = c.g(fy_plus_hfy, apply_matrix(D.Q.m, X.v)) -
                             0.5 * n5_tensor(D, X, D.xi[i], fY);
          track_eq(q_pairing, lhs, rhs, pt);

          // the d(eta) convention cross-check
          const Vec ny = covariant_deriv(D.M, Y, D.xi[i]);
          track_eq(d_eta_form, 2.0 * d_one_form(D.eta[i], X, Y),
                   c.g(nx, Y.v) - c.g(ny, X.v), pt);

          if (cls.weak_S) {
            // symmetry of the conjugate pair through f
            const double l =
                n5_tensor(D, Y, D.xi[i], fX) - n5_tensor(D, X, D.xi[i], fY);
            const Vec a = apply_matrix(hstar[i], fX.v);
            Vec hsf_plus_fh(D.dim);
            const Vec b = apply_matrix(D.f.m, apply_matrix(h[i], fX.v));
            for (int k = 0; k < D.dim; ++k) hsf_plus_fh[k] = a[k] + b[k];
            track_eq(conj_sym, l, 2.0 * c.g(hsf_plus_fh, fY.v), pt);
          }
        }
      }
    }
    for (ResidualTracker* t :
         {&conj_diff, &q_pairing, &anticomm, &kills_xi, &conj_sym, &d_eta_form})
      t->count_sample();
  }

  out.identities = {conj_diff.report("h-conjugate-difference", cfg.tol),
                    q_pairing.report("q-nabla-xi-pairing", cfg.tol),
                    anticomm.report("h-f-anticommutator", cfg.tol),
                    kills_xi.report("h-kills-xi", cfg.tol),
                    d_eta_form.report("d-eta-from-nabla-xi", cfg.tol)};
  if (cls.weak_S) out.identities.push_back(conj_sym.report("h-conjugate-f-symmetry", cfg.tol));
  return out;
}

// -----------------------------------------------------------------------------
// weak-S, including the rigidity witness Q = id on f(TM).
CheckReport check_weak_S(const FramedWeakFStructure& S, const StructureClass& cls,
                         const SweepConfig& cfg) {
  CheckReport out;
  out.check_id = "weak-S";
  out.status = gate(cls, cls.weak_S);
  if (out.status != HypothesisStatus::satisfied) return out;

  const SamplePlan plan = make_sample_plan(S.box, cfg);
  ResidualTracker cov_f, cov_f_vec, rigidity, h_zero, killing, kernel_tg, image_tg;

  for (size_t sp = 0; sp < plan.points.size(); ++sp) {
    const Point& pt = plan.points[sp];
    const PointCtx c = make_ctx(S, pt, plan.combos[sp]);
    const StructurePointData& D = c.D;
    const size_t np = c.pool.size();
    const double gmag = std::max(1.0, max_abs(D.M.g));
    const Vec xibar = D.xi_bar_values();

    for (int i = 0; i < S.p; ++i) {
      track_zero(h_zero, Vec(h_matrix(D, i).data()), std::max(1.0, max_abs(D.f.m)), pt);
      for (size_t xi = 0; xi < np; ++xi)
        for (size_t yi = xi; yi < np; ++yi)
          track_zero(killing, lie_metric_nabla(D.M, D.xi[i], c.pool[xi], c.pool[yi]), gmag, pt);
    }

    std::vector<FieldJet> horiz;
    {
      Vec e(D.dim, 0.0);
      for (int a = 0; a < D.dim; ++a) {
        e[a] = 1.0;
        horiz.push_back(D.horizontal(constant_jet(e)));
        e[a] = 0.0;
      }
    }
    kernel_tg.add(totally_geodesic_residual_at(D.M, D.xi, horiz), 1.0, pt);
    image_tg.add(totally_geodesic_residual_at(D.M, horiz, D.xi), 1.0, pt);

    for (size_t xi = 0; xi < np; ++xi) {
      const FieldJet& X = c.pool[xi];
      const FieldJet& fX = c.fpool[xi];

      // rigidity: Q acts as the identity on f(TM)
      const Vec xtop = D.horizontal_values(X.v);
      track_eq(rigidity, apply_matrix(D.Q.m, xtop), xtop, pt);

      for (size_t yi = 0; yi < np; ++yi) {
        const FieldJet& Y = c.pool[yi];
        const FieldJet& fY = c.fpool[yi];
        const Vec w = c.nabla_f(X.v, Y.v);

        // vector form: (nabla_X f)Y = g(fX,fY) xi_bar + eta_bar(Y) f^2 X + 1/2 N5(X,Y,.)#
        Vec cov(D.dim);
        {
          Vec e(D.dim, 0.0);
          for (int a = 0; a < D.dim; ++a) {
            e[a] = 1.0;
            cov[a] = n5_tensor(D, X, Y, constant_jet(e));
            e[a] = 0.0;
          }
        }
        const Vec raised = apply_matrix(D.M.ginv, cov);
        const double gff = c.g(fX.v, fY.v);
        const double ebY = c.eta_bar(Y.v);
        const Vec f2x = apply_matrix(D.f.m, fX.v);
        Vec rhs_vec(D.dim);
        for (int k = 0; k < D.dim; ++k)
          rhs_vec[k] = gff * xibar[k] + ebY * f2x[k] + 0.5 * raised[k];
        track_eq(cov_f_vec, w, rhs_vec, pt);

        for (size_t zi = 0; zi < np; ++zi) {
          const FieldJet& Z = c.pool[zi];
          const FieldJet& fZ = c.fpool[zi];
          const double lhs = c.g(w, Z.v);
          const double t1 = c.g(apply_matrix(D.Q.m, X.v), Y.v) * c.eta_bar(Z.v) -
                            c.g(apply_matrix(D.Q.m, X.v), Z.v) * c.eta_bar(Y.v);
          const double t2 = 0.5 * n5_tensor(D, X, Y, Z);
          double t3 = 0.0;
          for (int j = 0; j < S.p; ++j)
            t3 += c.eta(j, X.v) *
                  (c.eta_bar(Y.v) * c.eta(j, Z.v) - c.eta(j, Y.v) * c.eta_bar(Z.v));
          cov_f.add(lhs - (t1 + t2 + t3), operand_scale({lhs, t1, t2, t3}), pt);
          (void)fZ;
        }
      }
    }
    for (ResidualTracker* t :
         {&cov_f, &cov_f_vec, &rigidity, &h_zero, &killing, &kernel_tg, &image_tg})
      t->count_sample();
  }

  out.identities = {cov_f.report("covariant-f-weak-s", cfg.tol),
                    cov_f_vec.report("covariant-f-weak-s-vector", cfg.tol),
                    rigidity.report("rigidity-q-restricted-identity", cfg.tol),
                    h_zero.report("h-vanishes", cfg.tol),
                    killing.report("xi-killing", cfg.tol),
                    kernel_tg.report("kernel-totally-geodesic", cfg.tol),
                    image_tg.report("image-totally-geodesic", cfg.tol)};
  return out;
}

// -----------------------------------------------------------------------------
// weak-C: the almost-C consequences plus, under normality, the N^(5)
// characterization of the covariant derivative of f.
CheckReport check_weak_C(const FramedWeakFStructure& S, const StructureClass& cls,
                         const SweepConfig& cfg) {
  CheckReport out;
  out.check_id = "weak-C";
  out.status = gate(cls, cls.weak_almost_C);
  if (out.status != HypothesisStatus::satisfied) return out;

  const SamplePlan plan = make_sample_plan(S.box, cfg);
  ResidualTracker n2_t, n4_t, pure_nijenhuis, xi_comm, cov_f, cyclic, f_cyclic, q_pairing;

  for (size_t sp = 0; sp < plan.points.size(); ++sp) {
    const Point& pt = plan.points[sp];
    const PointCtx c = make_ctx(S, pt, plan.combos[sp]);
    const StructurePointData& D = c.D;
    const size_t np = c.pool.size();

    for (int i = 0; i < S.p; ++i)
      for (int j = i + 1; j < S.p; ++j)
        track_zero(xi_comm, bracket(D.xi[i], D.xi[j]),
                   operand_scale({max_abs(D.xi[i].v), max_abs(D.xi[j].v)}), pt);

    for (size_t xi = 0; xi < np; ++xi) {
      const FieldJet& X = c.pool[xi];
      for (int i = 0; i < S.p; ++i)
        for (int j = 0; j < S.p; ++j) track_zero(n4_t, n4_tensor(D, i, j, X), 1.0, pt);
      for (size_t yi = 0; yi < np; ++yi) {
        const FieldJet& Y = c.pool[yi];
        for (int i = 0; i < S.p; ++i) track_zero(n2_t, n2_tensor(D, i, X, Y), 1.0, pt);
        track_eq(pure_nijenhuis, n1_tensor(D, X, Y), nijenhuis_jet(D.f, X, Y), pt);

        if (cls.weak_C) {
          for (int i = 0; i < S.p; ++i) {
            const FieldJet& fY = c.fpool[yi];
            const Vec nx = covariant_deriv(D.M, X, D.xi[i]);
            track_eq(q_pairing, c.g(nx, apply_matrix(D.Q.m, Y.v)),
                     -0.5 * n5_tensor(D, X, D.xi[i], fY), pt);
          }
          for (size_t zi = 0; zi < np; ++zi) {
            const FieldJet& Z = c.pool[zi];
            const double n5xyz = n5_tensor(D, X, Y, Z);
            track_eq(cov_f, 2.0 * c.g(c.nabla_f(X.v, Y.v), Z.v), n5xyz, pt);

            const double a = n5xyz;
            const double b = n5_tensor(D, Y, Z, X);
            const double cc = n5_tensor(D, Z, X, Y);
            cyclic.add(a + b + cc, operand_scale({a, b, cc}), pt);

            const double fa = n5_tensor(D, c.fpool[xi], Y, Z);
            const double fb = n5_tensor(D, c.fpool[yi], Z, X);
            const double fc = n5_tensor(D, c.fpool[zi], X, Y);
            f_cyclic.add(fa + fb + fc, operand_scale({fa, fb, fc}), pt);
          }
        }
      }
    }
    for (ResidualTracker* t :
         {&n2_t, &n4_t, &pure_nijenhuis, &xi_comm, &cov_f, &cyclic, &f_cyclic, &q_pairing})
      t->count_sample();
  }

  out.identities = {n2_t.report("n2-vanishes", cfg.tol), n4_t.report("n4-vanishes", cfg.tol),
                    pure_nijenhuis.report("n1-pure-nijenhuis", cfg.tol),
                    xi_comm.report("xi-commute", cfg.tol)};
  if (cls.weak_C) {
    out.identities.push_back(cov_f.report("covariant-f-weak-c", cfg.tol));
    out.identities.push_back(cyclic.report("n5-cyclic", cfg.tol));
    out.identities.push_back(f_cyclic.report("n5-f-cyclic", cfg.tol));
    out.identities.push_back(q_pairing.report("nabla-xi-q-pairing", cfg.tol));
  }
  return out;
}

// -----------------------------------------------------------------------------
// parallel-f: measures the hypotheses nabla f = 0 and vertical-commuting
// characteristic fields, then asserts the weak-C conclusions.
CheckReport check_parallel_f(const FramedWeakFStructure& S, const StructureClass& cls,
                             const SweepConfig& cfg) {
  CheckReport out;
  out.check_id = "parallel-f";
  out.status = gate(cls, true);
  if (out.status != HypothesisStatus::satisfied) return out;

  const SamplePlan plan = make_sample_plan(S.box, cfg);
  ResidualTracker hyp_parallel, hyp_vertical, phi_closed, eta_closed, n1_zero, n5_zero, commute;

  for (size_t sp = 0; sp < plan.points.size(); ++sp) {
    const Point& pt = plan.points[sp];
    const PointCtx c = make_ctx(S, pt, plan.combos[sp]);
    const StructurePointData& D = c.D;
    const size_t np = c.pool.size();
    const double fmag = std::max(1.0, max_abs(D.f.m));

    hyp_parallel.add(max_abs3(c.covf), fmag * std::max(1.0, max_abs3(D.M.gamma)), pt);
    for (int i = 0; i < S.p; ++i)
      for (int j = i + 1; j < S.p; ++j) {
        const Vec br = bracket(D.xi[i], D.xi[j]);
        for (int k = 0; k < S.p; ++k) track_zero(hyp_vertical, c.eta(k, br), 1.0, pt);
      }

    for (size_t xi = 0; xi < np; ++xi) {
      const FieldJet& X = c.pool[xi];
      const FieldJet& fX = c.fpool[xi];
      for (int i = 0; i < S.p; ++i) {
        const Vec a = covariant_deriv(D.M, fX, D.xi[i]);
        const Vec b = apply_matrix(D.f.m, covariant_deriv(D.M, X, D.xi[i]));
        Vec diff(D.dim);
        for (int k = 0; k < D.dim; ++k) diff[k] = a[k] - b[k];
        track_zero(commute, diff, operand_scale({max_abs(a), max_abs(b)}), pt);
      }
      for (size_t yi = 0; yi < np; ++yi) {
        const FieldJet& Y = c.pool[yi];
        for (int i = 0; i < S.p; ++i)
          track_zero(eta_closed, d_one_form(D.eta[i], X, Y), 1.0, pt);
        track_zero(n1_zero, n1_tensor(D, X, Y), fmag * fmag, pt);
        for (size_t zi = 0; zi < np; ++zi) {
          track_zero(phi_closed, d_two_form(D.M, D.f, X, Y, c.pool[zi]),
                     fmag * std::max(1.0, max_abs(D.M.g)), pt);
          track_zero(n5_zero, n5_tensor(D, X, Y, c.pool[zi]), fmag, pt);
        }
      }
    }
    for (ResidualTracker* t :
         {&hyp_parallel, &hyp_vertical, &phi_closed, &eta_closed, &n1_zero, &n5_zero, &commute})
      t->count_sample();
  }

  const bool hyp_ok =
      hyp_parallel.max_residual() < cfg.tol && hyp_vertical.max_residual() < cfg.tol;
  out.status = hyp_ok ? HypothesisStatus::satisfied : HypothesisStatus::vacuous;

  out.identities = {hyp_parallel.report("hypothesis-f-parallel", cfg.tol),
                    hyp_vertical.report("hypothesis-xi-brackets-vertical", cfg.tol)};
  if (hyp_ok) {
    out.identities.push_back(phi_closed.report("phi-closed", cfg.tol));
    out.identities.push_back(eta_closed.report("eta-closed", cfg.tol));
    out.identities.push_back(n1_zero.report("n1-vanishes", cfg.tol));
    out.identities.push_back(n5_zero.report("n5-vanishes", cfg.tol));
    out.identities.push_back(commute.report("nabla-xi-f-commute", cfg.tol));
  }
  return out;
}

using CheckFn = CheckReport (*)(const FramedWeakFStructure&, const StructureClass&,
                                const SweepConfig&);

struct CheckEntry {
  const char* id;
  CheckFn fn;
};

constexpr CheckEntry kChecks[] = {
    {"master-3.1", check_master_formula}, {"normal-2.1", check_normal_consequences},
    {"weak-K", check_weak_K},             {"almost-S", check_almost_S},
    {"h-identities", check_h_identities}, {"weak-S", check_weak_S},
    {"weak-C", check_weak_C},             {"parallel-f", check_parallel_f},
};

}  // namespace

std::vector<std::string> theorem_ids() {
  std::vector<std::string> ids;
  for (const CheckEntry& e : kChecks) ids.push_back(e.id);
  return ids;
}

CheckReport verify_master_formula(const FramedWeakFStructure& S, const SweepConfig& cfg) {
  return check_master_formula(S, classify(S, cfg), cfg);
}
CheckReport verify_normal_consequences(const FramedWeakFStructure& S, const SweepConfig& cfg) {
  return check_normal_consequences(S, classify(S, cfg), cfg);
}
CheckReport verify_weak_K(const FramedWeakFStructure& S, const SweepConfig& cfg) {
  return check_weak_K(S, classify(S, cfg), cfg);
}
CheckReport verify_almost_S(const FramedWeakFStructure& S, const SweepConfig& cfg) {
  return check_almost_S(S, classify(S, cfg), cfg);
}
CheckReport verify_h_identities(const FramedWeakFStructure& S, const SweepConfig& cfg) {
  return check_h_identities(S, classify(S, cfg), cfg);
}
CheckReport verify_weak_S(const FramedWeakFStructure& S, const SweepConfig& cfg) {
  return check_weak_S(S, classify(S, cfg), cfg);
}
CheckReport verify_weak_C(const FramedWeakFStructure& S, const SweepConfig& cfg) {
  return check_weak_C(S, classify(S, cfg), cfg);
}
CheckReport verify_parallel_f(const FramedWeakFStructure& S, const SweepConfig& cfg) {
  return check_parallel_f(S, classify(S, cfg), cfg);
}

RunReport run_checks(const FramedWeakFStructure& S, const std::string& theorem,
                     const SweepConfig& cfg) {
  RunReport r;
  r.command = "check";
  r.structure_name = S.name;
  r.samples = cfg.samples;
  r.seed = cfg.seed;
  r.tolerance = cfg.tol;

  const StructureClass cls = classify(S, cfg);
  r.classification = cls;
  r.summary = class_summary(cls);

  bool found = false;
  for (const CheckEntry& e : kChecks) {
    if (theorem == "all" || theorem == e.id) {
      r.checks.push_back(e.fn(S, cls, cfg));
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::unknown_name, "unknown theorem id '" + theorem + "'");

  r.passed = cls.valid;
  for (const CheckReport& c : r.checks)
    if (!c.passed()) r.passed = false;
  return r;
}

RunReport run_validate(const FramedWeakFStructure& S, const SweepConfig& cfg) {
  RunReport r;
  r.command = "validate";
  r.structure_name = S.name;
  r.samples = cfg.samples;
  r.seed = cfg.seed;
  r.tolerance = cfg.tol;

  CheckReport axioms;
  axioms.check_id = "axioms";
  axioms.status = HypothesisStatus::satisfied;
  axioms.identities = validate_axioms(S, cfg);
  r.passed = axioms.passed();
  r.summary = r.passed ? "all structure axioms hold" : "structure axioms violated";
  r.checks.push_back(std::move(axioms));
  return r;
}

RunReport run_classify(const FramedWeakFStructure& S, const SweepConfig& cfg) {
  RunReport r;
  r.command = "classify";
  r.structure_name = S.name;
  r.samples = cfg.samples;
  r.seed = cfg.seed;
  r.tolerance = cfg.tol;
  const StructureClass cls = classify(S, cfg);
  r.classification = cls;
  r.summary = class_summary(cls);
  r.passed = cls.valid;
  return r;
}

}  // namespace weakf
