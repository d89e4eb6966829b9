#pragma once

#include <vector>

#include "fields.hpp"

namespace weakf {

// --- jet-level kernels -------------------------------------------------------
// Everything the geometry needs reduces to contractions of field jets; higher
// modules evaluate structure fields once per sample point and then work with
// these.

/// (T X) with first partials: d_a(TX)^i = d_aT^i_j X^j + T^i_j d_aX^j.
FieldJet apply_endo(const EndoJet& T, const FieldJet& X);

Vec apply_matrix(const Mat& T, const Vec& x);

/// [X,Y]^k = X^a d_a Y^k - Y^a d_a X^k (values only).
Vec bracket(const FieldJet& X, const FieldJet& Y);

/// g(A,B) with first partials.
ScalarJet metric_pair(const MetricJets& M, const FieldJet& A, const FieldJet& B);

double metric_pair_value(const Mat& g, const Vec& a, const Vec& b);

/// w(X) = w_k X^k with first partials.
ScalarJet form_apply(const FieldJet& w, const FieldJet& X);

/// Directional derivative of a scalar jet along a vector value.
double directional(const Vec& along, const ScalarJet& s);

/// (nabla_X Y)^k = X^a d_a Y^k + Gamma^k_ab X^a Y^b (values only).
Vec covariant_deriv(const MetricJets& M, const FieldJet& X, const FieldJet& Y);

/// ((nabla_X T) Y) = nabla_X(TY) - T nabla_X Y.
Vec endo_cov_apply(const MetricJets& M, const EndoJet& T, const FieldJet& X, const FieldJet& Y);

/// Full covariant derivative (nabla_a T)^i_j.
Ten3 endo_covariant(const MetricJets& M, const EndoJet& T);

/// d_m Gamma^k_ij, from the second metric partials.
Ten4 christoffel_derivative(const MetricJets& M);

/// R(X,Y)Z with R^l_kij = d_i Gamma^l_jk - d_j Gamma^l_ik
///                        + Gamma^l_is Gamma^s_jk - Gamma^l_js Gamma^s_ik.
Vec riemann_apply(const MetricJets& M, const Ten4& dgamma, const Vec& X, const Vec& Y,
                  const Vec& Z);

/// K(X,Y) = g(R(X,Y)Y, X) / (|X|^2 |Y|^2 - g(X,Y)^2).
/// Throws Error(degenerate_plane) when the denominator is below 1e-10.
double sectional(const MetricJets& M, const Ten4& dgamma, const Vec& X, const Vec& Y);

/// (L_Z T)X = [Z, TX] - T [Z, X].
Vec lie_endo(const EndoJet& T, const FieldJet& Z, const FieldJet& X);

/// (L_Z w)X = Z(w(X)) - w([Z,X]).
double lie_form(const FieldJet& w, const FieldJet& Z, const FieldJet& X);

/// (L_Z g)(X,Y), coordinate form: Z(g(X,Y)) - g([Z,X],Y) - g(X,[Z,Y]).
double lie_metric_bracket(const MetricJets& M, const FieldJet& Z, const FieldJet& X,
                          const FieldJet& Y);

/// (L_Z g)(X,Y), connection form: g(nabla_X Z, Y) + g(nabla_Y Z, X).
double lie_metric_nabla(const MetricJets& M, const FieldJet& Z, const FieldJet& X,
                        const FieldJet& Y);

/// d of a one-form with the 1/2 convention:
/// dw(A,B) = 1/2 { A(w(B)) - B(w(A)) - w([A,B]) }.
double d_one_form(const FieldJet& w, const FieldJet& A, const FieldJet& B);

/// d of the 2-form Phi(X,Y) = g(X, fY) with the 1/3 co-boundary convention:
/// dPhi(A,B,C) = 1/3 { A Phi(B,C) + B Phi(C,A) + C Phi(A,B)
///                     - Phi([A,B],C) - Phi([C,A],B) - Phi([B,C],A) }.
double d_two_form(const MetricJets& M, const EndoJet& f, const FieldJet& A, const FieldJet& B,
                  const FieldJet& C);

/// Nijenhuis torsion, bracket form:
/// [T,T](A,B) = T^2 [A,B] + [TA,TB] - T[TA,B] - T[A,TB].
Vec nijenhuis_jet(const EndoJet& T, const FieldJet& A, const FieldJet& B);

/// Nijenhuis torsion through the Levi-Civita connection:
/// [T,T](A,B) = (T nabla_B T - nabla_{TB} T) A - (T nabla_A T - nabla_{TA} T) B.
Vec nijenhuis_nabla_jet(const MetricJets& M, const EndoJet& T, const FieldJet& A,
                        const FieldJet& B);

/// max over span pairs (X,Y) and orth fields Z of the scaled second
/// fundamental form component |g(nabla_X Y + nabla_Y X, Z)|.
double totally_geodesic_residual_at(const MetricJets& M, const std::vector<FieldJet>& span,
                                    const std::vector<FieldJet>& orth);

// --- chart-level operations --------------------------------------------------
// Thin wrappers over the kernels: evaluate the expression fields at the point,
// then contract.

Mat metric_inverse(const MetricField& g, const Point& pt);
Ten3 christoffel(const MetricField& g, const Point& pt);
Vec covariant_derivative_vector(const MetricField& g, const VectorField& X, const VectorField& Y,
                                const Point& pt);
Vec covariant_derivative_endomorphism(const MetricField& g, const EndomorphismField& T,
                                      const VectorField& X, const VectorField& Y, const Point& pt);
Vec lie_bracket(const VectorField& X, const VectorField& Y, const Point& pt);
Vec lie_derivative_endomorphism(const VectorField& Z, const EndomorphismField& T,
                                const VectorField& X, const Point& pt);
double lie_derivative_one_form(const VectorField& Z, const OneFormField& w, const VectorField& X,
                               const Point& pt);
double lie_derivative_metric(const MetricField& g, const VectorField& Z, const VectorField& X,
                             const VectorField& Y, const Point& pt);
double lie_derivative_metric_bracket(const MetricField& g, const VectorField& Z,
                                     const VectorField& X, const VectorField& Y, const Point& pt);
double exterior_derivative_one_form(const OneFormField& w, const VectorField& X,
                                    const VectorField& Y, const Point& pt);
double exterior_derivative_two_form(const MetricField& g, const EndomorphismField& f,
                                    const VectorField& X, const VectorField& Y,
                                    const VectorField& Z, const Point& pt);
Vec nijenhuis(const EndomorphismField& T, const VectorField& X, const VectorField& Y,
              const Point& pt);
Vec nijenhuis_nabla(const MetricField& g, const EndomorphismField& T, const VectorField& X,
                    const VectorField& Y, const Point& pt);
double sectional_curvature(const MetricField& g, const VectorField& X, const VectorField& Y,
                           const Point& pt);
double totally_geodesic_residual(const MetricField& g, const std::vector<VectorField>& span,
                                 const std::vector<VectorField>& orth,
                                 const std::vector<Point>& samples);

}  // namespace weakf
