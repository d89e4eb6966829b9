#pragma once

#include <string>
#include <vector>

#include "report.hpp"
#include "tensor.hpp"

namespace weakf {

/// The structure tuple (f, Q, xi_1..xi_p, eta^1..eta^p, g) on a chart of
/// dimension 2n + p, together with its sampling box. Immutable once built;
/// all evaluations are pure.
struct FramedWeakFStructure {
  std::string name;
  int n = 0;  // half-rank of f
  int p = 0;  // kernel dimension
  std::vector<std::string> coords;
  EndomorphismField f;
  EndomorphismField Q;
  std::vector<VectorField> xi;
  std::vector<OneFormField> eta;
  MetricField g;
  Box box;

  int dim() const { return 2 * n + p; }
};

/// Structure data evaluated at a single point: metric jets (with Christoffel
/// symbols), endomorphism jets and frame jets. Identity sweeps build one of
/// these per sample and then work purely numerically.
struct StructurePointData {
  int dim = 0, n = 0, p = 0;
  Point point;
  MetricJets M;
  EndoJet f;
  EndoJet Q;
  EndoJet Qt;  // Q - id, the deviation from a classical structure
  std::vector<FieldJet> xi;
  std::vector<FieldJet> eta;

  FieldJet apply_f(const FieldJet& X) const { return apply_endo(f, X); }

  /// eta^i(x) for all i (values).
  Vec eta_values(const Vec& x) const;
  double eta_bar(const Vec& x) const;  // sum_i eta^i(x)

  /// Projection onto f(TM): X - sum_i eta^i(X) xi_i, with partials.
  FieldJet horizontal(const FieldJet& X) const;
  /// Same projection, values only.
  Vec horizontal_values(const Vec& x) const;
  /// Kernel part sum_i eta^i(x) xi_i (values).
  Vec vertical_values(const Vec& x) const;
  /// xi_bar = sum_i xi_i (values).
  Vec xi_bar_values() const;
};

StructurePointData structure_at(const FramedWeakFStructure& S, const Point& pt);

// --- the tensors N^(1)..N^(5) and h ------------------------------------------

/// N^(1) = [f,f] + 2 sum_i d(eta^i) (x) xi_i; vanishing means normal.
Vec n1_tensor(const StructurePointData& D, const FieldJet& X, const FieldJet& Y);

/// N^(2)_i(X,Y) = 2 d(eta^i)(fX, Y) - 2 d(eta^i)(fY, X).
double n2_tensor(const StructurePointData& D, int i, const FieldJet& X, const FieldJet& Y);

/// N^(3)_i = L_{xi_i} f applied to X.
Vec n3_tensor(const StructurePointData& D, int i, const FieldJet& X);

/// N^(4)_ij(X) = 2 d(eta^j)(xi_i, X).
double n4_tensor(const StructurePointData& D, int i, int j, const FieldJet& X);

/// The trilinear tensor coupling the covariant derivative of f to Qt = Q - id:
/// N^(5)(X,Y,Z) = (fZ)(g(X^T, Qt Y)) - (fY)(g(X^T, Qt Z))
///              + g([X,fZ]^T, Qt Y) - g([X,fY]^T, Qt Z)
///              + g([Y,fZ]^T - [Z,fY]^T - f[Y,Z], Qt X),
/// skew-symmetric in (Y, Z) and identically zero when Q = id.
double n5_tensor(const StructurePointData& D, const FieldJet& X, const FieldJet& Y,
                 const FieldJet& Z);

/// Phi(X,Y) = g(X, fY) (values).
double fundamental_form_at(const StructurePointData& D, const Vec& X, const Vec& Y);

/// h_i = 1/2 L_{xi_i} f as a matrix, and its g-adjoint.
Mat h_matrix(const StructurePointData& D, int i);
Mat h_adjoint_matrix(const StructurePointData& D, int i);

// --- chart-level wrappers matching the module operations ---------------------

Vec N1(const FramedWeakFStructure& S, const VectorField& X, const VectorField& Y, const Point& pt);
double N2(const FramedWeakFStructure& S, int i, const VectorField& X, const VectorField& Y,
          const Point& pt);
Vec N3(const FramedWeakFStructure& S, int i, const VectorField& X, const Point& pt);
double N4(const FramedWeakFStructure& S, int i, int j, const VectorField& X, const Point& pt);
double N5(const FramedWeakFStructure& S, const VectorField& X, const VectorField& Y,
          const VectorField& Z, const Point& pt);
double fundamental_form(const FramedWeakFStructure& S, const VectorField& X, const VectorField& Y,
                        const Point& pt);
Vec h_tensor(const FramedWeakFStructure& S, int i, const VectorField& X, const Point& pt);
Vec h_adjoint(const FramedWeakFStructure& S, int i, const VectorField& X, const Point& pt);

// --- sweeps -------------------------------------------------------------------

struct SweepConfig {
  int samples = 100;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  int combos = 4;  // pseudo-random constant-coefficient probes per point
};

/// Deterministic sample points with their probe coefficient sets; sample k
/// depends only on the seed, not on the total count.
struct SamplePlan {
  std::vector<Point> points;
  std::vector<std::vector<Vec>> combos;  // per point
};
SamplePlan make_sample_plan(const Box& box, const SweepConfig& cfg);

/// Probe pool at a point: the coordinate frame plus the plan's random
/// constant-coefficient combinations.
std::vector<FieldJet> probe_pool(int dim, const std::vector<Vec>& combos);

/// One report per structure axiom, swept over samples and probes.
std::vector<VerificationReport> validate_axioms(const FramedWeakFStructure& S,
                                                const SweepConfig& cfg);

/// Classification by residuals; classification of a structure whose axioms
/// fail is refused (valid = false, all flags false).
StructureClass classify(const FramedWeakFStructure& S, const SweepConfig& cfg);

// --- product extension ---------------------------------------------------------

/// The pair (fbar, Qbar) on the chart of M x R^p with fbar^2 = -Qbar;
/// [fbar,fbar] = 0 is an equivalent expression of normality.
struct ProductExtension {
  int dim = 0;  // 2n + 2p
  std::vector<std::string> coords;
  EndomorphismField fbar;
  EndomorphismField Qbar;
  Box box;
};
ProductExtension product_extension(const FramedWeakFStructure& S);

}  // namespace weakf
