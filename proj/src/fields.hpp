#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "expr.hpp"
#include "linalg.hpp"

namespace weakf {

using Point = Vec;

/// Per-coordinate sampling intervals.
struct Box {
  std::vector<std::array<double, 2>> range;
  int dim() const { return static_cast<int>(range.size()); }
};

/// Contravariant vector field, one component expression per coordinate.
struct VectorField {
  std::vector<Expr> comp;
  int dim() const { return static_cast<int>(comp.size()); }
};

/// Covariant one-form field.
struct OneFormField {
  std::vector<Expr> comp;
  int dim() const { return static_cast<int>(comp.size()); }
};

/// Mixed (1,1)-tensor field; comp(i,j) is the row-i (upper index),
/// column-j (lower index) entry, so (T v)^i = T^i_j v^j.
struct EndomorphismField {
  int d = 0;
  std::vector<Expr> comp;  // row-major, d*d
  const Expr& at(int i, int j) const { return comp[static_cast<size_t>(i) * d + j]; }
  Expr& at(int i, int j) { return comp[static_cast<size_t>(i) * d + j]; }
  int dim() const { return d; }
};

/// Symmetric (0,2)-tensor field.
struct MetricField {
  int d = 0;
  std::vector<Expr> comp;  // row-major, d*d
  const Expr& at(int i, int j) const { return comp[static_cast<size_t>(i) * d + j]; }
  Expr& at(int i, int j) { return comp[static_cast<size_t>(i) * d + j]; }
  int dim() const { return d; }
};

// --- pointwise jets ---------------------------------------------------------
// Numeric data of a field at one point: component values plus first partials.
// All higher-level tensor operations are contractions of these.

/// v[k] with J(k,a) = d_a v[k]. Used for both vectors and one-forms.
struct FieldJet {
  Vec v;
  Mat J;
};

/// Scalar with first partials.
struct ScalarJet {
  double v = 0.0;
  Vec d;
};

/// m(i,j) with dm(i,j,a) = d_a m(i,j).
struct EndoJet {
  Mat m;
  Ten3 dm;
  int dim() const { return m.rows(); }
};

/// Metric data at a point: value, inverse, first and second partials and the
/// Christoffel symbols gamma(k,i,j) of the Levi-Civita connection.
struct MetricJets {
  Mat g;
  Mat ginv;
  Ten3 dg;    // dg(i,j,a) = d_a g_ij
  Ten4 ddg;   // ddg(i,j,a,b) = d_a d_b g_ij
  Ten3 gamma; // gamma(k,i,j), symmetric in (i,j)
  int dim() const { return g.rows(); }
};

FieldJet eval_jet(const VectorField& f, const Point& pt);
FieldJet eval_jet(const OneFormField& f, const Point& pt);
EndoJet eval_jet(const EndomorphismField& f, const Point& pt);
MetricJets eval_metric(const MetricField& g, const Point& pt);

Vec eval_values(const VectorField& f, const Point& pt);

/// Constant-coefficient field jet (vanishing partials); probe vectors in
/// "for all X" sweeps are of this form.
FieldJet constant_jet(const Vec& coeffs);

// --- deterministic sampling --------------------------------------------------

/// Seeded 64-bit linear congruential stream. Sample k of a given seed does
/// not depend on how many samples are drawn in total, so residual maxima are
/// monotone in the sample count.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : s_(seed) {}

  double uniform01() {
    s_ = s_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(s_ >> 11) * 0x1.0p-53;
  }

  /// Uniform in [lo, hi) per coordinate.
  Point point_in(const Box& box) {
    Point p(box.range.size());
    for (size_t i = 0; i < box.range.size(); ++i)
      p[i] = box.range[i][0] + uniform01() * (box.range[i][1] - box.range[i][0]);
    return p;
  }

  /// Probe coefficients, uniform in [-1, 1].
  Vec coefficients(int dim) {
    Vec c(dim);
    for (int i = 0; i < dim; ++i) c[i] = 2.0 * uniform01() - 1.0;
    return c;
  }

 private:
  std::uint64_t s_;
};

}  // namespace weakf
