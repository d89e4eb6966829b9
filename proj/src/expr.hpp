#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace weakf {

/// Value, gradient and Hessian of a scalar function at one point. The Hessian
/// is symmetric by construction.
struct Jet2 {
  double value = 0.0;
  Vec grad;   // dim
  Mat hess;   // dim x dim
};

enum class ExprOp : std::uint8_t {
  constant,
  coordinate,
  negate,
  sin_fn,
  cos_fn,
  exp_fn,
  log_fn,
  sqrt_fn,
  add,
  sub,
  mul,
  div,
  pow_const  // exponent stored in `value`, not as a child
};

struct ExprNode {
  ExprOp op = ExprOp::constant;
  int a = -1;          // left / only child
  int b = -1;          // right child
  double value = 0.0;  // constant value or pow exponent
  int var = -1;        // coordinate index
  int offset = -1;     // 0-based offset in the source text, -1 when synthetic
};

/// Immutable expression tree over a fixed-dimension chart, stored as a flat
/// arena in evaluation order (root last). Evaluation is pure; instances are
/// safe to share across threads.
class Expr {
 public:
  Expr() = default;

  int dim() const { return dim_; }
  bool empty() const { return nodes_.empty(); }
  const std::vector<ExprNode>& nodes() const { return nodes_; }

  /// Plain value at a point. Throws Error(domain) at invalid points, naming
  /// the offending operation.
  double eval(const Vec& pt) const;

  /// Value at a point together with exact first and second partials,
  /// propagated forward through the tree.
  Jet2 eval_jet2(const Vec& pt) const;

  /// Value plus gradient only (cheaper than eval_jet2).
  void eval_jet1(const Vec& pt, double& value, Vec& grad) const;

  /// Round-trippable rendering; reparsing yields a tree with identical
  /// evaluation behavior.
  std::string to_string(const std::vector<std::string>& coord_names) const;

  /// Copy of this expression declared over a wider chart (used when a field
  /// is reinterpreted on a product chart). new_dim must cover every
  /// coordinate referenced.
  Expr with_dim(int new_dim) const;

  // --- construction -------------------------------------------------------
  static Expr constant(double c, int dim);
  static Expr coordinate(int index, int dim);
  static Expr unary(ExprOp op, const Expr& a);
  static Expr binary(ExprOp op, const Expr& a, const Expr& b);
  static Expr pow(const Expr& base, double exponent);

 private:
  friend class ExprParser;
  std::vector<ExprNode> nodes_;
  int dim_ = 0;
};

/// Parse `text` over the named coordinates. Errors carry 0-based character
/// offsets. Grammar: numbers, coordinates, + - * / ^, parentheses and the
/// functions sin cos exp log sqrt; '^' binds tightest and requires a literal
/// exponent.
Expr parse_expression(const std::string& text, const std::vector<std::string>& coord_names);

}  // namespace weakf
