#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "error.hpp"
#include "expr.hpp"
#include "fd_oracles.hpp"
#include "fields.hpp"

using namespace weakf;

namespace {

const std::vector<std::string> xy = {"x1", "x2"};

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max({1.0, std::fabs(got), std::fabs(want)});
}

}  // namespace

TEST_CASE("parse produces the expected trees") {
  const Expr e = parse_expression("x1*sin(x2)", xy);
  const auto& n = e.nodes();
  REQUIRE(n.size() == 4);  // x1, x2, sin, mul
  CHECK(n.back().op == ExprOp::mul);
  CHECK(n[n.back().a].op == ExprOp::coordinate);
  CHECK(n[n.back().a].var == 0);
  CHECK(n[n.back().b].op == ExprOp::sin_fn);

  const Expr one = parse_expression("1", xy);
  REQUIRE(one.nodes().size() == 1);
  CHECK(one.nodes()[0].op == ExprOp::constant);
  CHECK(one.nodes()[0].value == 1.0);
}

TEST_CASE("hand-checked arithmetic") {
  const Expr e = parse_expression("x1^2 + 2*x1*x2", xy);
  CHECK(e.eval({3.0, 4.0}) == 33.0);  // 9 + 24

  CHECK(parse_expression("2*x1^2", xy).eval({3.0, 0.0}) == 18.0);
  CHECK(parse_expression("-x1^2", xy).eval({2.0, 0.0}) == -4.0);
  // left associativity
  CHECK(parse_expression("8-4-2", xy).eval({0.0, 0.0}) == 2.0);
  CHECK(parse_expression("8/4/2", xy).eval({0.0, 0.0}) == 1.0);
  CHECK(parse_expression("x1^-2", xy).eval({2.0, 0.0}) == 0.25);
  CHECK(parse_expression("2 + 3 * 4", xy).eval({0.0, 0.0}) == 14.0);
}

TEST_CASE("evaluate identities and domain errors") {
  CHECK(parse_expression("sin(x2)", xy).eval({7.0, 0.0}) == 0.0);
  CHECK(parse_expression("exp(x1)*cos(x2)", xy).eval({0.0, 0.0}) == 1.0);

  CHECK_THROWS_AS(parse_expression("x1/x2", xy).eval({1.0, 0.0}), Error);
  CHECK_THROWS_AS(parse_expression("log(x1)", xy).eval({0.0, 0.0}), Error);
  CHECK_THROWS_AS(parse_expression("log(x1)", xy).eval({-1.0, 0.0}), Error);
  CHECK_THROWS_AS(parse_expression("sqrt(x1)", xy).eval({-1.0, 0.0}), Error);
  CHECK_THROWS_AS(parse_expression("x1^0.5", xy).eval({-1.0, 0.0}), Error);
  CHECK_THROWS_AS(parse_expression("x1^-1", xy).eval({0.0, 0.0}), Error);

  try {
    parse_expression("x1/x2", xy).eval({1.0, 0.0});
    FAIL("expected a domain error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::domain);
    CHECK(err.offset() == 2);  // the '/' node
  }
}

TEST_CASE("parse errors carry kinds and 0-based offsets") {
  auto expect_error = [](const std::string& text, ErrorKind kind, int offset) {
    try {
      parse_expression(text, xy);
      FAIL_CHECK("no error for: ", text);
    } catch (const Error& err) {
      CHECK(err.kind() == kind);
      CHECK(err.offset() == offset);
    }
  };
  expect_error("x1 +", ErrorKind::syntax, 4);
  expect_error("foo", ErrorKind::unknown_identifier, 0);
  expect_error("x1 + bar", ErrorKind::unknown_identifier, 5);
  expect_error("tan(x1)", ErrorKind::unknown_identifier, 0);
  expect_error("x1 ^ x2", ErrorKind::non_constant_exponent, 5);
  expect_error("(x1", ErrorKind::syntax, 3);
  expect_error("x1 ) x2", ErrorKind::syntax, 3);
}

TEST_CASE("jet values match analytic derivatives") {
  const Expr sq = parse_expression("x1^2", {"x1"});
  const Jet2 j = sq.eval_jet2({3.0});
  CHECK(j.value == 9.0);
  CHECK(j.grad[0] == 6.0);
  CHECK(j.hess(0, 0) == 2.0);

  const Jet2 c = parse_expression("5", xy).eval_jet2({1.0, 2.0});
  CHECK(c.value == 5.0);
  CHECK(c.grad[0] == 0.0);
  CHECK(c.grad[1] == 0.0);
  CHECK(max_abs(c.hess) == 0.0);
}

TEST_CASE("x1*sin(x2) jet at (2, pi/2) against the fd oracle") {
  const Expr e = parse_expression("x1*sin(x2)", xy);
  const Vec pt = {2.0, std::acos(0.0)};  // pi/2
  const Jet2 j = e.eval_jet2(pt);
  CHECK(rel_err(j.value, 2.0) < 1e-15);
  CHECK(rel_err(j.grad[0], 1.0) < 1e-15);
  CHECK(std::fabs(j.grad[1]) < 1e-15);
  CHECK(std::fabs(j.hess(0, 0)) < 1e-15);
  CHECK(rel_err(j.hess(1, 1), -2.0) < 1e-15);
  CHECK(j.hess(0, 1) == j.hess(1, 0));

  for (int k = 0; k < 2; ++k) {
    CHECK(rel_err(j.grad[k], testing::fd_partial(e, pt, k)) < 1e-6);
    for (int l = 0; l < 2; ++l)
      CHECK(rel_err(j.hess(k, l), testing::fd_second(e, pt, k, l)) < 1e-6);
  }
}

TEST_CASE("gradients and hessians match central differences on a function pool") {
  const std::vector<std::string> texts = {
      "x1^2 + 2*x1*x2",
      "x1*sin(x2) - cos(x1*x2)",
      "exp(0.3*x1) * cos(x2)",
      "log(2 + x1^2) + sqrt(1 + x2^2)",
      "(x1 + x2)^3 / (2 + sin(x1))",
      "x1/(1 + x2^2)",
      "sin(x1)*sin(x2) + 0.5*x1^4",
  };
  SampleStream rng(2024);
  Box box;
  box.range = {{-1.0, 1.0}, {-1.0, 1.0}};
  for (const std::string& text : texts) {
    const Expr e = parse_expression(text, xy);
    for (int s = 0; s < 15; ++s) {
      const Vec pt = rng.point_in(box);
      const Jet2 j = e.eval_jet2(pt);
      CHECK(rel_err(j.value, e.eval(pt)) == 0.0);
      for (int k = 0; k < 2; ++k) {
        CHECK(rel_err(j.grad[k], testing::fd_partial(e, pt, k)) < 1e-6);
        for (int l = 0; l < 2; ++l)
          CHECK(rel_err(j.hess(k, l), testing::fd_second(e, pt, k, l)) < 1e-5);
      }
    }
  }
}

TEST_CASE("jet1 agrees with jet2") {
  const Expr e = parse_expression("exp(0.2*x1)*sin(x2) + x1^3/(2+x2^2)", xy);
  SampleStream rng(7);
  Box box;
  box.range = {{-1.0, 1.0}, {-1.0, 1.0}};
  for (int s = 0; s < 20; ++s) {
    const Vec pt = rng.point_in(box);
    const Jet2 j2 = e.eval_jet2(pt);
    double v;
    Vec grad;
    e.eval_jet1(pt, v, grad);
    CHECK(v == j2.value);
    CHECK(grad[0] == j2.grad[0]);
    CHECK(grad[1] == j2.grad[1]);
  }
}

TEST_CASE("jets are linear: jet(a*e1 + e2) = a*jet(e1) + jet(e2)") {
  const Expr e1 = parse_expression("x1*sin(x2) + x2^2", xy);
  const Expr e2 = parse_expression("cos(x1) * exp(0.1*x2)", xy);
  const double a = 2.5;
  const Expr combined =
      Expr::binary(ExprOp::add, Expr::binary(ExprOp::mul, Expr::constant(a, 2), e1), e2);

  SampleStream rng(99);
  Box box;
  box.range = {{-2.0, 2.0}, {-2.0, 2.0}};
  for (int s = 0; s < 25; ++s) {
    const Vec pt = rng.point_in(box);
    const Jet2 jc = combined.eval_jet2(pt);
    const Jet2 j1 = e1.eval_jet2(pt);
    const Jet2 j2 = e2.eval_jet2(pt);
    CHECK(jc.value == a * j1.value + j2.value);
    for (int k = 0; k < 2; ++k) {
      CHECK(jc.grad[k] == a * j1.grad[k] + j2.grad[k]);
      for (int l = 0; l < 2; ++l) CHECK(jc.hess(k, l) == a * j1.hess(k, l) + j2.hess(k, l));
    }
  }
}

TEST_CASE("print/parse round trip evaluates bit-exactly") {
  const std::vector<std::string> texts = {
      "x1*sin(x2)",
      "x1^2 + 2*x1*x2",
      "-x1^2 + x2/(1 + x1^2)",
      "exp(0.1*x1)*log(2 + x2^2) - sqrt(3 + x1^2)",
      "1 - 0.25*x2^3",
  };
  SampleStream rng(5);
  Box box;
  box.range = {{-1.5, 1.5}, {-1.5, 1.5}};
  for (const std::string& text : texts) {
    const Expr e = parse_expression(text, xy);
    const Expr back = parse_expression(e.to_string(xy), xy);
    for (int s = 0; s < 20; ++s) {
      const Vec pt = rng.point_in(box);
      CHECK(e.eval(pt) == back.eval(pt));
    }
  }
}

TEST_CASE("with_dim widens the chart") {
  const Expr e = parse_expression("x1 + x2", xy);
  const Expr w = e.with_dim(4);
  CHECK(w.eval({1.0, 2.0, 9.0, 9.0}) == 3.0);
  CHECK_THROWS_AS(e.with_dim(1), Error);
}
