#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>

#include "error.hpp"

namespace weakf {

namespace {

const char* op_name(ExprOp op) {
  switch (op) {
    case ExprOp::constant: return "constant";
    case ExprOp::coordinate: return "coordinate";
    case ExprOp::negate: return "negation";
    case ExprOp::sin_fn: return "sin";
    case ExprOp::cos_fn: return "cos";
    case ExprOp::exp_fn: return "exp";
    case ExprOp::log_fn: return "log";
    case ExprOp::sqrt_fn: return "sqrt";
    case ExprOp::add: return "addition";
    case ExprOp::sub: return "subtraction";
    case ExprOp::mul: return "multiplication";
    case ExprOp::div: return "division";
    case ExprOp::pow_const: return "power";
  }
  return "?";
}

[[noreturn]] void domain_error(const ExprNode& n, const std::string& what) {
  throw Error(ErrorKind::domain, "domain error in " + std::string(op_name(n.op)) + ": " + what,
              n.offset);
}

void check_pow_domain(const ExprNode& n, double base) {
  const double c = n.value;
  if (base < 0.0 && c != std::floor(c)) domain_error(n, "fractional power of negative base");
  if (base == 0.0 && c < 0.0) domain_error(n, "zero raised to a negative power");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double Expr::eval(const Vec& pt) const {
  if (static_cast<int>(pt.size()) != dim_)
    throw Error(ErrorKind::bad_argument, "eval: point dimension mismatch");
  Vec val(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const ExprNode& n = nodes_[i];
    double r = 0.0;
    switch (n.op) {
      case ExprOp::constant: r = n.value; break;
      case ExprOp::coordinate: r = pt[n.var]; break;
      case ExprOp::negate: r = -val[n.a]; break;
      case ExprOp::sin_fn: r = std::sin(val[n.a]); break;
      case ExprOp::cos_fn: r = std::cos(val[n.a]); break;
      case ExprOp::exp_fn: r = std::exp(val[n.a]); break;
      case ExprOp::log_fn:
        if (val[n.a] <= 0.0) domain_error(n, "log of a non-positive value");
        r = std::log(val[n.a]);
        break;
      case ExprOp::sqrt_fn:
        if (val[n.a] < 0.0) domain_error(n, "sqrt of a negative value");
        r = std::sqrt(val[n.a]);
        break;
      case ExprOp::add: r = val[n.a] + val[n.b]; break;
      case ExprOp::sub: r = val[n.a] - val[n.b]; break;
      case ExprOp::mul: r = val[n.a] * val[n.b]; break;
      case ExprOp::div:
        if (val[n.b] == 0.0) domain_error(n, "division by zero");
        r = val[n.a] / val[n.b];
        break;
      case ExprOp::pow_const:
        check_pow_domain(n, val[n.a]);
        r = std::pow(val[n.a], n.value);
        break;
    }
    if (!std::isfinite(r)) domain_error(n, "non-finite result");
    val[i] = r;
  }
  return val.back();
}

void Expr::eval_jet1(const Vec& pt, double& value, Vec& grad) const {
  if (static_cast<int>(pt.size()) != dim_)
    throw Error(ErrorKind::bad_argument, "eval_jet1: point dimension mismatch");
  const int d = dim_;
  const int stride = 1 + d;
  Vec w(nodes_.size() * stride, 0.0);
  auto v = [&](size_t i) -> double& { return w[i * stride]; };
  auto g = [&](size_t i, int k) -> double& { return w[i * stride + 1 + k]; };

  for (size_t i = 0; i < nodes_.size(); ++i) {
    const ExprNode& n = nodes_[i];
    switch (n.op) {
      case ExprOp::constant: v(i) = n.value; break;
      case ExprOp::coordinate:
        v(i) = pt[n.var];
        g(i, n.var) = 1.0;
        break;
      case ExprOp::negate:
        v(i) = -v(n.a);
        for (int k = 0; k < d; ++k) g(i, k) = -g(n.a, k);
        break;
      case ExprOp::add:
        v(i) = v(n.a) + v(n.b);
        for (int k = 0; k < d; ++k) g(i, k) = g(n.a, k) + g(n.b, k);
        break;
      case ExprOp::sub:
        v(i) = v(n.a) - v(n.b);
        for (int k = 0; k < d; ++k) g(i, k) = g(n.a, k) - g(n.b, k);
        break;
      case ExprOp::mul:
        v(i) = v(n.a) * v(n.b);
        for (int k = 0; k < d; ++k) g(i, k) = g(n.a, k) * v(n.b) + v(n.a) * g(n.b, k);
        break;
      case ExprOp::div: {
        if (v(n.b) == 0.0) domain_error(n, "division by zero");
        const double inv = 1.0 / v(n.b);
        v(i) = v(n.a) / v(n.b);  // same rounding as plain eval
        for (int k = 0; k < d; ++k) g(i, k) = (g(n.a, k) - v(i) * g(n.b, k)) * inv;
        break;
      }
      default: {
        // unary chain rule
        double fv = 0.0, fp = 0.0;
        const double u = v(n.a);
        switch (n.op) {
          case ExprOp::sin_fn: fv = std::sin(u); fp = std::cos(u); break;
          case ExprOp::cos_fn: fv = std::cos(u); fp = -std::sin(u); break;
          case ExprOp::exp_fn: fv = std::exp(u); fp = fv; break;
          case ExprOp::log_fn:
            if (u <= 0.0) domain_error(n, "log of a non-positive value");
            fv = std::log(u); fp = 1.0 / u;
            break;
          case ExprOp::sqrt_fn:
            if (u < 0.0) domain_error(n, "sqrt of a negative value");
            fv = std::sqrt(u); fp = 0.5 / fv;
            break;
          case ExprOp::pow_const: {
            check_pow_domain(n, u);
            const double c = n.value;
            fv = std::pow(u, c);
            fp = (c == 0.0) ? 0.0 : c * std::pow(u, c - 1.0);
            break;
          }
          default: break;
        }
        v(i) = fv;
        for (int k = 0; k < d; ++k) g(i, k) = fp * g(n.a, k);
        break;
      }
    }
    if (!std::isfinite(v(i))) domain_error(n, "non-finite result");
    for (int k = 0; k < d; ++k)
      if (!std::isfinite(g(i, k))) domain_error(n, "non-finite derivative");
  }
  const size_t root = nodes_.size() - 1;
  value = v(root);
  grad.assign(d, 0.0);
  for (int k = 0; k < d; ++k) grad[k] = g(root, k);
}

Jet2 Expr::eval_jet2(const Vec& pt) const {
  if (static_cast<int>(pt.size()) != dim_)
    throw Error(ErrorKind::bad_argument, "eval_jet2: point dimension mismatch");
  const int d = dim_;
  const int stride = 1 + d + d * d;
  Vec w(nodes_.size() * stride, 0.0);
  auto v = [&](size_t i) -> double& { return w[i * stride]; };
  auto g = [&](size_t i, int k) -> double& { return w[i * stride + 1 + k]; };
  auto h = [&](size_t i, int k, int l) -> double& { return w[i * stride + 1 + d + k * d + l]; };

  for (size_t i = 0; i < nodes_.size(); ++i) {
    const ExprNode& n = nodes_[i];
    switch (n.op) {
      case ExprOp::constant: v(i) = n.value; break;
      case ExprOp::coordinate:
        v(i) = pt[n.var];
        g(i, n.var) = 1.0;
        break;
      case ExprOp::negate:
        v(i) = -v(n.a);
        for (int k = 0; k < d; ++k) g(i, k) = -g(n.a, k);
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) h(i, k, l) = -h(n.a, k, l);
        break;
      case ExprOp::add:
        v(i) = v(n.a) + v(n.b);
        for (int k = 0; k < d; ++k) g(i, k) = g(n.a, k) + g(n.b, k);
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) h(i, k, l) = h(n.a, k, l) + h(n.b, k, l);
        break;
      case ExprOp::sub:
        v(i) = v(n.a) - v(n.b);
        for (int k = 0; k < d; ++k) g(i, k) = g(n.a, k) - g(n.b, k);
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) h(i, k, l) = h(n.a, k, l) - h(n.b, k, l);
        break;
      case ExprOp::mul:
        v(i) = v(n.a) * v(n.b);
        for (int k = 0; k < d; ++k) g(i, k) = g(n.a, k) * v(n.b) + v(n.a) * g(n.b, k);
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            h(i, k, l) = h(n.a, k, l) * v(n.b) + v(n.a) * h(n.b, k, l) +
                         g(n.a, k) * g(n.b, l) + g(n.a, l) * g(n.b, k);
        break;
      case ExprOp::div: {
        if (v(n.b) == 0.0) domain_error(n, "division by zero");
        // a/b = a * r with r = 1/b; r' = -r^2 b', r'' = 2 r^3 b'b' - r^2 b''
        const double r = 1.0 / v(n.b);
        Vec rg(d);
        for (int k = 0; k < d; ++k) rg[k] = -r * r * g(n.b, k);
        v(i) = v(n.a) / v(n.b);  // same rounding as plain eval
        for (int k = 0; k < d; ++k) g(i, k) = (g(n.a, k) - v(i) * g(n.b, k)) * r;
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            const double rh =
                2.0 * r * r * r * g(n.b, k) * g(n.b, l) - r * r * h(n.b, k, l);
            h(i, k, l) = h(n.a, k, l) * r + v(n.a) * rh + g(n.a, k) * rg[l] + g(n.a, l) * rg[k];
          }
        break;
      }
      default: {
        // unary chain rule: f(u): H = f'(u) Hu + f''(u) grad_u x grad_u
        double fv = 0.0, fp = 0.0, fpp = 0.0;
        const double u = v(n.a);
        switch (n.op) {
          case ExprOp::sin_fn: fv = std::sin(u); fp = std::cos(u); fpp = -fv; break;
          case ExprOp::cos_fn: fv = std::cos(u); fp = -std::sin(u); fpp = -fv; break;
          case ExprOp::exp_fn: fv = std::exp(u); fp = fv; fpp = fv; break;
          case ExprOp::log_fn:
            if (u <= 0.0) domain_error(n, "log of a non-positive value");
            fv = std::log(u); fp = 1.0 / u; fpp = -fp * fp;
            break;
          case ExprOp::sqrt_fn:
            if (u < 0.0) domain_error(n, "sqrt of a negative value");
            fv = std::sqrt(u); fp = 0.5 / fv; fpp = -0.5 * fp / u;
            break;
          case ExprOp::pow_const: {
            check_pow_domain(n, u);
            const double c = n.value;
            fv = std::pow(u, c);
            fp = (c == 0.0) ? 0.0 : c * std::pow(u, c - 1.0);
            fpp = (c == 0.0 || c == 1.0) ? 0.0 : c * (c - 1.0) * std::pow(u, c - 2.0);
            break;
          }
          default: break;
        }
        v(i) = fv;
        for (int k = 0; k < d; ++k) g(i, k) = fp * g(n.a, k);
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            h(i, k, l) = fp * h(n.a, k, l) + fpp * g(n.a, k) * g(n.a, l);
        break;
      }
    }
    if (!std::isfinite(v(i))) domain_error(n, "non-finite result");
    for (int k = 0; k < d; ++k) {
      if (!std::isfinite(g(i, k))) domain_error(n, "non-finite derivative");
      for (int l = 0; l < d; ++l)
        if (!std::isfinite(h(i, k, l))) domain_error(n, "non-finite second derivative");
    }
  }

  const size_t root = nodes_.size() - 1;
  Jet2 out;
  out.value = v(root);
  out.grad.assign(d, 0.0);
  out.hess = Mat(d, d);
  for (int k = 0; k < d; ++k) {
    out.grad[k] = g(root, k);
    for (int l = 0; l < d; ++l) out.hess(k, l) = h(root, k, l);
  }
  return out;
}

std::string Expr::to_string(const std::vector<std::string>& coord_names) const {
  std::vector<std::string> s(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const ExprNode& n = nodes_[i];
    switch (n.op) {
      case ExprOp::constant: s[i] = format_double(n.value); break;
      case ExprOp::coordinate: s[i] = coord_names[n.var]; break;
      case ExprOp::negate: s[i] = "(-" + s[n.a] + ")"; break;
      case ExprOp::sin_fn: s[i] = "sin(" + s[n.a] + ")"; break;
      case ExprOp::cos_fn: s[i] = "cos(" + s[n.a] + ")"; break;
      case ExprOp::exp_fn: s[i] = "exp(" + s[n.a] + ")"; break;
      case ExprOp::log_fn: s[i] = "log(" + s[n.a] + ")"; break;
      case ExprOp::sqrt_fn: s[i] = "sqrt(" + s[n.a] + ")"; break;
      case ExprOp::add: s[i] = "(" + s[n.a] + " + " + s[n.b] + ")"; break;
      case ExprOp::sub: s[i] = "(" + s[n.a] + " - " + s[n.b] + ")"; break;
      case ExprOp::mul: s[i] = "(" + s[n.a] + " * " + s[n.b] + ")"; break;
      case ExprOp::div: s[i] = "(" + s[n.a] + " / " + s[n.b] + ")"; break;
      case ExprOp::pow_const: s[i] = "(" + s[n.a] + "^" + format_double(n.value) + ")"; break;
    }
  }
  return s.back();
}

Expr Expr::with_dim(int new_dim) const {
  for (const ExprNode& n : nodes_)
    if (n.op == ExprOp::coordinate && n.var >= new_dim)
      throw Error(ErrorKind::bad_argument, "with_dim: coordinate index out of range");
  Expr e = *this;
  e.dim_ = new_dim;
  return e;
}

Expr Expr::constant(double c, int dim) {
  Expr e;
  e.dim_ = dim;
  e.nodes_.push_back({ExprOp::constant, -1, -1, c, -1, -1});
  return e;
}

Expr Expr::coordinate(int index, int dim) {
  if (index < 0 || index >= dim)
    throw Error(ErrorKind::bad_argument, "coordinate index out of range");
  Expr e;
  e.dim_ = dim;
  e.nodes_.push_back({ExprOp::coordinate, -1, -1, 0.0, index, -1});
  return e;
}

Expr Expr::unary(ExprOp op, const Expr& a) {
  Expr e = a;
  e.nodes_.push_back({op, static_cast<int>(a.nodes_.size()) - 1, -1, 0.0, -1, -1});
  return e;
}

Expr Expr::binary(ExprOp op, const Expr& a, const Expr& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorKind::bad_argument, "binary: chart dimension mismatch");
  Expr e = a;
  const int shift = static_cast<int>(a.nodes_.size());
  for (ExprNode n : b.nodes_) {
    if (n.a >= 0) n.a += shift;
    if (n.b >= 0) n.b += shift;
    e.nodes_.push_back(n);
  }
  e.nodes_.push_back({op, shift - 1, static_cast<int>(e.nodes_.size()) - 1, 0.0, -1, -1});
  return e;
}

Expr Expr::pow(const Expr& base, double exponent) {
  Expr e = base;
  e.nodes_.push_back(
      {ExprOp::pow_const, static_cast<int>(base.nodes_.size()) - 1, -1, exponent, -1, -1});
  return e;
}

// --- parser ----------------------------------------------------------------

class ExprParser {
 public:
  ExprParser(const std::string& text, const std::vector<std::string>& coords)
      : text_(text), n_coords_(static_cast<int>(coords.size())) {
    for (size_t i = 0; i < coords.size(); ++i) coord_index_[coords[i]] = static_cast<int>(i);
    if (static_cast<int>(coord_index_.size()) != n_coords_)
      throw Error(ErrorKind::bad_argument, "duplicate coordinate name");
  }

  Expr run() {
    Expr e;
    e.dim_ = n_coords_;
    root_ = &e.nodes_;
    const int idx = parse_additive();
    skip_ws();
    if (pos_ != text_.size())
      throw Error(ErrorKind::syntax, "unexpected character '" + std::string(1, text_[pos_]) + "'",
                  static_cast<int>(pos_));
    (void)idx;
    return e;
  }

 private:
  int emit(ExprNode n) {
    root_->push_back(n);
    return static_cast<int>(root_->size()) - 1;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c))
      throw Error(ErrorKind::syntax, std::string("expected ") + what, static_cast<int>(pos_));
  }

  int parse_additive() {
    int lhs = parse_multiplicative();
    for (;;) {
      skip_ws();
      const int at = static_cast<int>(pos_);
      if (accept('+'))
        lhs = emit({ExprOp::add, lhs, parse_multiplicative(), 0.0, -1, at});
      else if (accept('-'))
        lhs = emit({ExprOp::sub, lhs, parse_multiplicative(), 0.0, -1, at});
      else
        return lhs;
    }
  }

  int parse_multiplicative() {
    int lhs = parse_unary();
    for (;;) {
      skip_ws();
      const int at = static_cast<int>(pos_);
      if (accept('*'))
        lhs = emit({ExprOp::mul, lhs, parse_unary(), 0.0, -1, at});
      else if (accept('/'))
        lhs = emit({ExprOp::div, lhs, parse_unary(), 0.0, -1, at});
      else
        return lhs;
    }
  }

  int parse_unary() {
    skip_ws();
    if (accept('-')) {
      const int at = static_cast<int>(pos_) - 1;
      const int child = parse_unary();
      return emit({ExprOp::negate, child, -1, 0.0, -1, at});
    }
    return parse_postfix();
  }

  int parse_postfix() {
    int base = parse_primary();
    if (accept('^')) {
      const int at = static_cast<int>(pos_) - 1;
      skip_ws();
      double sign = 1.0;
      if (accept('-')) sign = -1.0;
      skip_ws();
      if (pos_ >= text_.size() || !(std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        throw Error(ErrorKind::non_constant_exponent,
                    "exponent must be a numeric literal", static_cast<int>(pos_));
      const double e = scan_number();
      base = emit({ExprOp::pow_const, base, -1, sign * e, -1, at});
    }
    return base;
  }

  int parse_primary() {
    skip_ws();
    if (pos_ >= text_.size())
      throw Error(ErrorKind::syntax, "unexpected end of expression", static_cast<int>(pos_));
    const char c = text_[pos_];
    const int at = static_cast<int>(pos_);

    if (c == '(') {
      ++pos_;
      const int inner = parse_additive();
      expect(')', "')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const double v = scan_number();
      return emit({ExprOp::constant, -1, -1, v, -1, at});
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      const std::string name = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (peek('(')) {
        ExprOp fn;
        if (name == "sin") fn = ExprOp::sin_fn;
        else if (name == "cos") fn = ExprOp::cos_fn;
        else if (name == "exp") fn = ExprOp::exp_fn;
        else if (name == "log") fn = ExprOp::log_fn;
        else if (name == "sqrt") fn = ExprOp::sqrt_fn;
        else
          throw Error(ErrorKind::unknown_identifier, "unknown function '" + name + "'", at);
        ++pos_;  // consume '('
        const int arg = parse_additive();
        expect(')', "')' after function argument");
        return emit({fn, arg, -1, 0.0, -1, at});
      }
      auto it = coord_index_.find(name);
      if (it == coord_index_.end())
        throw Error(ErrorKind::unknown_identifier, "unknown identifier '" + name + "'", at);
      return emit({ExprOp::coordinate, -1, -1, 0.0, it->second, at});
    }
    throw Error(ErrorKind::syntax, std::string("unexpected character '") + c + "'", at);
  }

  // [0-9]* ('.' [0-9]*)? ([eE] [+-]? [0-9]+)? with at least one digit
  double scan_number() {
    const size_t start = pos_;
    bool digits = false;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
      digits = true;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        digits = true;
      }
    }
    if (!digits)
      throw Error(ErrorKind::syntax, "malformed number", static_cast<int>(start));
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      size_t e = pos_ + 1;
      if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
      size_t ed = e;
      while (ed < text_.size() && std::isdigit(static_cast<unsigned char>(text_[ed]))) ++ed;
      if (ed > e) pos_ = ed;  // exponent only when digits follow
    }
    return std::strtod(text_.substr(start, pos_ - start).c_str(), nullptr);
  }

  const std::string& text_;
  int n_coords_ = 0;
  std::map<std::string, int> coord_index_;
  size_t pos_ = 0;
  std::vector<ExprNode>* root_ = nullptr;
};

Expr parse_expression(const std::string& text, const std::vector<std::string>& coord_names) {
  return ExprParser(text, coord_names).run();
}

}  // namespace weakf
