#pragma once

// Shared helpers for building fields from expression strings in tests.

#include <string>
#include <vector>

#include "expr.hpp"
#include "fields.hpp"

namespace weakf::testing {

inline VectorField make_vector(const std::vector<std::string>& comps,
                               const std::vector<std::string>& coords) {
  VectorField f;
  for (const std::string& c : comps) f.comp.push_back(parse_expression(c, coords));
  return f;
}

inline OneFormField make_form(const std::vector<std::string>& comps,
                              const std::vector<std::string>& coords) {
  OneFormField f;
  for (const std::string& c : comps) f.comp.push_back(parse_expression(c, coords));
  return f;
}

inline EndomorphismField make_endo(const std::vector<std::vector<std::string>>& rows,
                                   const std::vector<std::string>& coords) {
  EndomorphismField f;
  f.d = static_cast<int>(rows.size());
  for (const auto& row : rows)
    for (const std::string& c : row) f.comp.push_back(parse_expression(c, coords));
  return f;
}

inline MetricField make_metric(const std::vector<std::vector<std::string>>& rows,
                               const std::vector<std::string>& coords) {
  MetricField f;
  f.d = static_cast<int>(rows.size());
  for (const auto& row : rows)
    for (const std::string& c : row) f.comp.push_back(parse_expression(c, coords));
  return f;
}

/// Smooth pseudo-random vector field: each component
/// c0 + c1*x_a + c2*sin(x_b) with stream-drawn coefficients.
inline VectorField random_field(int dim, SampleStream& rng) {
  VectorField f;
  for (int k = 0; k < dim; ++k) {
    const int a = static_cast<int>(rng.uniform01() * dim) % dim;
    const int b = static_cast<int>(rng.uniform01() * dim) % dim;
    Expr e = Expr::constant(2.0 * rng.uniform01() - 1.0, dim);
    e = Expr::binary(ExprOp::add, e,
                     Expr::binary(ExprOp::mul, Expr::constant(2.0 * rng.uniform01() - 1.0, dim),
                                  Expr::coordinate(a, dim)));
    e = Expr::binary(ExprOp::add, e,
                     Expr::binary(ExprOp::mul, Expr::constant(2.0 * rng.uniform01() - 1.0, dim),
                                  Expr::unary(ExprOp::sin_fn, Expr::coordinate(b, dim))));
    f.comp.push_back(e);
  }
  return f;
}

}  // namespace weakf::testing
