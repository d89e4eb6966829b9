#include "fields.hpp"

#include "error.hpp"

namespace weakf {

namespace {

FieldJet eval_component_jets(const std::vector<Expr>& comp, const Point& pt) {
  const int d = static_cast<int>(pt.size());
  FieldJet out;
  out.v.assign(comp.size(), 0.0);
  out.J = Mat(static_cast<int>(comp.size()), d);
  Vec grad;
  for (size_t k = 0; k < comp.size(); ++k) {
    comp[k].eval_jet1(pt, out.v[k], grad);
    for (int a = 0; a < d; ++a) out.J(static_cast<int>(k), a) = grad[a];
  }
  return out;
}

}  // namespace

FieldJet eval_jet(const VectorField& f, const Point& pt) { return eval_component_jets(f.comp, pt); }

FieldJet eval_jet(const OneFormField& f, const Point& pt) { return eval_component_jets(f.comp, pt); }

EndoJet eval_jet(const EndomorphismField& f, const Point& pt) {
  const int d = f.d;
  EndoJet out;
  out.m = Mat(d, d);
  out.dm = Ten3(d, d, d);
  double v;
  Vec grad;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      f.at(i, j).eval_jet1(pt, v, grad);
      out.m(i, j) = v;
      for (int a = 0; a < d; ++a) out.dm(i, j, a) = grad[a];
    }
  return out;
}

MetricJets eval_metric(const MetricField& g, const Point& pt) {
  const int d = g.d;
  MetricJets out;
  out.g = Mat(d, d);
  out.dg = Ten3(d, d, d);
  out.ddg = Ten4(d, d, d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Jet2 jet = g.at(i, j).eval_jet2(pt);
      out.g(i, j) = jet.value;
      for (int a = 0; a < d; ++a) {
        out.dg(i, j, a) = jet.grad[a];
        for (int b = 0; b < d; ++b) out.ddg(i, j, a, b) = jet.hess(a, b);
      }
    }
  out.ginv = inverse(out.g);

  // gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij)
  out.gamma = Ten3(d, d, d);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double s = 0.0;
        for (int l = 0; l < d; ++l)
          s += out.ginv(k, l) * (out.dg(j, l, i) + out.dg(i, l, j) - out.dg(i, j, l));
        out.gamma(k, i, j) = 0.5 * s;
        out.gamma(k, j, i) = out.gamma(k, i, j);
      }
  return out;
}

Vec eval_values(const VectorField& f, const Point& pt) {
  Vec v(f.comp.size());
  for (size_t k = 0; k < f.comp.size(); ++k) v[k] = f.comp[k].eval(pt);
  return v;
}

FieldJet constant_jet(const Vec& coeffs) {
  FieldJet out;
  out.v = coeffs;
  out.J = Mat(static_cast<int>(coeffs.size()), static_cast<int>(coeffs.size()));
  return out;
}

}  // namespace weakf
