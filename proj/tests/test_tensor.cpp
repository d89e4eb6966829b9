#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "fd_oracles.hpp"
#include "tensor.hpp"
#include "test_helpers.hpp"

using namespace weakf;
using namespace weakf::testing;

namespace {

const std::vector<std::string> c2 = {"x1", "x2"};
const std::vector<std::string> c3 = {"x1", "x2", "x3"};

MetricField euclidean(int dim, const std::vector<std::string>& coords) {
  std::vector<std::vector<std::string>> rows(dim, std::vector<std::string>(dim, "0"));
  for (int i = 0; i < dim; ++i) rows[i][i] = "1";
  return make_metric(rows, coords);
}

double vec_dist(const Vec& a, const Vec& b) {
  double r = 0.0;
  for (size_t i = 0; i < a.size(); ++i) r = std::max(r, std::fabs(a[i] - b[i]));
  return r;
}

}  // namespace

TEST_CASE("metric inverse") {
  SUBCASE("identity metric") {
    const MetricField g = euclidean(3, c3);
    const Mat inv = metric_inverse(g, {0.3, -0.2, 0.9});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(inv(i, j) == (i == j ? 1.0 : 0.0));
  }
  SUBCASE("diag(1, x1^2) at x1 = 2") {
    const MetricField g = make_metric({{"1", "0"}, {"0", "x1^2"}}, c2);
    const Mat inv = metric_inverse(g, {2.0, 0.0});
    CHECK(inv(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(inv(1, 1) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(std::fabs(inv(0, 1)) < 1e-15);
  }
  SUBCASE("random SPD 4x4 multiplies back to the identity") {
    SampleStream rng(31);
    Mat a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = 2.0 * rng.uniform01() - 1.0;
    Mat spd(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double s = (i == j) ? 4.0 : 0.0;
        for (int k = 0; k < 4; ++k) s += a(k, i) * a(k, j);
        spd(i, j) = s;
      }
    std::vector<std::string> c4 = {"x1", "x2", "x3", "x4"};
    std::vector<std::vector<std::string>> rows(4, std::vector<std::string>(4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", spd(i, j));
        rows[i][j] = buf;
      }
    const MetricField g = make_metric(rows, c4);
    const Mat inv = metric_inverse(g, {0, 0, 0, 0});
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += inv(i, k) * spd(k, j);
        CHECK(std::fabs(s - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
    CHECK(std::fabs(inv(0, 1) - inv(1, 0)) < 1e-14);
  }
  SUBCASE("singular metric raises") {
    const MetricField g = make_metric({{"x1", "0"}, {"0", "1"}}, c2);
    CHECK_THROWS_AS(metric_inverse(g, {0.0, 1.0}), Error);
  }
}

TEST_CASE("christoffel symbols") {
  SUBCASE("constant metric has vanishing symbols") {
    const Ten3 gamma = christoffel(euclidean(3, c3), {0.1, 0.2, 0.3});
    double mx = 0.0;
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) mx = std::max(mx, std::fabs(gamma(k, i, j)));
    CHECK(mx == 0.0);
  }
  SUBCASE("diag(1, x1^2): the two classic nonzero symbols") {
    const MetricField g = make_metric({{"1", "0"}, {"0", "x1^2"}}, c2);
    const Vec pt = {1.7, -0.4};
    const Ten3 gamma = christoffel(g, pt);
    CHECK(gamma(0, 1, 1) == doctest::Approx(-1.7).epsilon(1e-13));
    CHECK(gamma(1, 0, 1) == doctest::Approx(1.0 / 1.7).epsilon(1e-13));
    CHECK(gamma(1, 1, 0) == doctest::Approx(1.0 / 1.7).epsilon(1e-13));
    CHECK(std::fabs(gamma(0, 0, 0)) < 1e-15);
    CHECK(std::fabs(gamma(1, 1, 1)) < 1e-15);

    const Ten3 oracle = fd_christoffel(g, pt);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          CHECK(std::fabs(gamma(k, i, j) - oracle(k, i, j)) < 1e-8);
  }
  SUBCASE("conformal metric against the finite-difference Koszul oracle") {
    const MetricField g = make_metric({{"exp(2*x1)", "0"}, {"0", "exp(2*x1)"}}, c2);
    const Vec pt = {0.25, 0.75};
    const Ten3 gamma = christoffel(g, pt);
    const Ten3 oracle = fd_christoffel(g, pt);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          CHECK(std::fabs(gamma(k, i, j) - oracle(k, i, j)) < 1e-8);
          CHECK(gamma(k, i, j) == gamma(k, j, i));
        }
  }
}

TEST_CASE("covariant derivative of vector fields") {
  SUBCASE("flat chart, constant fields") {
    const VectorField x = make_vector({"1", "2", "0"}, c3);
    const VectorField y = make_vector({"0", "-1", "3"}, c3);
    const Vec r = covariant_derivative_vector(euclidean(3, c3), x, y, {0.5, 0.5, 0.5});
    CHECK(max_abs(r) == 0.0);
  }
  SUBCASE("directional derivative on a flat chart") {
    const VectorField x = make_vector({"1", "0"}, c2);
    const VectorField y = make_vector({"x1", "0"}, c2);
    const Vec r = covariant_derivative_vector(euclidean(2, c2), x, y, {0.7, -0.3});
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 0.0);
  }
  SUBCASE("torsion-freeness: nabla_X Y - nabla_Y X = [X,Y]") {
    const MetricField g = make_metric({{"1 + x2^2", "0", "0"},
                                       {"0", "1 + x1^2", "0"},
                                       {"0", "0", "1"}},
                                      c3);
    SampleStream rng(11);
    Box box;
    box.range = {{-1, 1}, {-1, 1}, {-1, 1}};
    for (int s = 0; s < 10; ++s) {
      const VectorField x = random_field(3, rng);
      const VectorField y = random_field(3, rng);
      const Vec pt = rng.point_in(box);
      const Vec a = covariant_derivative_vector(g, x, y, pt);
      const Vec b = covariant_derivative_vector(g, y, x, pt);
      const Vec br = lie_bracket(x, y, pt);
      for (int k = 0; k < 3; ++k) CHECK(std::fabs(a[k] - b[k] - br[k]) < 1e-10);
    }
  }
  SUBCASE("metric compatibility: X g(Y,Z) = g(nabla_X Y, Z) + g(Y, nabla_X Z)") {
    const MetricField g = make_metric({{"1 + x2^2", "0"}, {"0", "1 + x1^2"}}, c2);
    SampleStream rng(12);
    Box box;
    box.range = {{-1, 1}, {-1, 1}};
    for (int s = 0; s < 10; ++s) {
      const VectorField x = random_field(2, rng);
      const VectorField y = random_field(2, rng);
      const VectorField z = random_field(2, rng);
      const Vec pt = rng.point_in(box);
      const MetricJets M = eval_metric(g, pt);
      const FieldJet xj = eval_jet(x, pt), yj = eval_jet(y, pt), zj = eval_jet(z, pt);
      const double lhs = directional(xj.v, metric_pair(M, yj, zj));
      const double rhs = metric_pair_value(M.g, covariant_deriv(M, xj, yj), zj.v) +
                         metric_pair_value(M.g, yj.v, covariant_deriv(M, xj, zj));
      CHECK(std::fabs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("covariant derivative of endomorphism fields") {
  SUBCASE("constant tensor on a flat chart is parallel") {
    const EndomorphismField t = make_endo({{"1", "2"}, {"-2", "0.5"}}, c2);
    const VectorField x = make_vector({"x2", "x1"}, c2);
    const VectorField y = make_vector({"x1", "1"}, c2);
    const Vec r = covariant_derivative_endomorphism(euclidean(2, c2), t, x, y, {0.4, 0.8});
    CHECK(max_abs(r) < 1e-15);
  }
  SUBCASE("product rule: nabla_X(TY) = (nabla_X T)Y + T nabla_X Y") {
    const MetricField g = make_metric({{"1 + x2^2", "0"}, {"0", "1 + x1^2"}}, c2);
    const EndomorphismField t =
        make_endo({{"sin(x1)", "x2"}, {"x1*x2", "1 + 0.5*cos(x2)"}}, c2);
    SampleStream rng(13);
    Box box;
    box.range = {{-1, 1}, {-1, 1}};
    for (int s = 0; s < 10; ++s) {
      const VectorField x = random_field(2, rng);
      const VectorField y = random_field(2, rng);
      const Vec pt = rng.point_in(box);
      const MetricJets M = eval_metric(g, pt);
      const EndoJet tj = eval_jet(t, pt);
      const FieldJet xj = eval_jet(x, pt), yj = eval_jet(y, pt);
      const Vec lhs = covariant_deriv(M, xj, apply_endo(tj, yj));
      const Vec a = endo_cov_apply(M, tj, xj, yj);
      const Vec b = apply_matrix(tj.m, covariant_deriv(M, xj, yj));
      for (int k = 0; k < 2; ++k) CHECK(std::fabs(lhs[k] - a[k] - b[k]) < 1e-10);
    }
  }
}

TEST_CASE("lie bracket") {
  SUBCASE("coordinate fields commute") {
    const VectorField d1 = make_vector({"1", "0", "0"}, c3);
    const VectorField d2 = make_vector({"0", "1", "0"}, c3);
    CHECK(max_abs(lie_bracket(d1, d2, {0.1, 0.2, 0.3})) == 0.0);
  }
  SUBCASE("[d1, x1 d2] = d2") {
    const VectorField x = make_vector({"1", "0"}, c2);
    const VectorField y = make_vector({"0", "x1"}, c2);
    const Vec r = lie_bracket(x, y, {0.9, -0.7});
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 1.0);
  }
  SUBCASE("antisymmetry is exact") {
    SampleStream rng(17);
    Box box;
    box.range = {{-1, 1}, {-1, 1}, {-1, 1}};
    for (int s = 0; s < 10; ++s) {
      const VectorField x = random_field(3, rng);
      const VectorField y = random_field(3, rng);
      const Vec pt = rng.point_in(box);
      const Vec ab = lie_bracket(x, y, pt);
      const Vec ba = lie_bracket(y, x, pt);
      for (int k = 0; k < 3; ++k) CHECK(ab[k] == -ba[k]);
    }
  }
}

TEST_CASE("lie derivatives") {
  const MetricField g = make_metric({{"1 + x2^2", "0.1*x1*x2"}, {"0.1*x1*x2", "1 + x1^2"}}, c2);
  SampleStream rng(19);
  Box box;
  box.range = {{-1, 1}, {-1, 1}};

  SUBCASE("zero direction gives zero") {
    const VectorField zero = make_vector({"0", "0"}, c2);
    const VectorField x = random_field(2, rng);
    const EndomorphismField t = make_endo({{"sin(x1)", "x2"}, {"0", "x1"}}, c2);
    const OneFormField w = make_form({"x2", "x1^2"}, c2);
    const Vec pt = rng.point_in(box);
    CHECK(max_abs(lie_derivative_endomorphism(zero, t, x, pt)) == 0.0);
    CHECK(lie_derivative_one_form(zero, w, x, pt) == 0.0);
    CHECK(lie_derivative_metric(g, zero, x, x, pt) == 0.0);
  }
  SUBCASE("both forms of the metric lie derivative agree") {
    for (int s = 0; s < 10; ++s) {
      const VectorField z = random_field(2, rng);
      const VectorField x = random_field(2, rng);
      const VectorField y = random_field(2, rng);
      const Vec pt = rng.point_in(box);
      const double a = lie_derivative_metric(g, z, x, y, pt);
      const double b = lie_derivative_metric_bracket(g, z, x, y, pt);
      CHECK(std::fabs(a - b) < 1e-10);
    }
  }
  SUBCASE("(L_Z g) is tensorial in its slots") {
    const Expr phi = parse_expression("2 + sin(x1)*x2", c2);
    for (int s = 0; s < 5; ++s) {
      const VectorField z = random_field(2, rng);
      const VectorField x = random_field(2, rng);
      const VectorField y = random_field(2, rng);
      VectorField phix;
      for (const Expr& e : x.comp) phix.comp.push_back(Expr::binary(ExprOp::mul, phi, e));
      const Vec pt = rng.point_in(box);
      const double a = lie_derivative_metric(g, z, phix, y, pt);
      const double b = phi.eval(pt) * lie_derivative_metric(g, z, x, y, pt);
      CHECK(std::fabs(a - b) < 1e-9 * std::max(1.0, std::fabs(b)));
    }
  }
}

TEST_CASE("exterior derivative of one-forms") {
  SUBCASE("constant forms are closed") {
    const OneFormField w = make_form({"1", "0"}, c2);  // dx1
    const VectorField x = make_vector({"x2", "1"}, c2);
    const VectorField y = make_vector({"1", "x1"}, c2);
    CHECK(std::fabs(exterior_derivative_one_form(w, x, y, {0.4, 1.2})) < 1e-15);
  }
  SUBCASE("d(x1 dx2) on coordinate fields is 1/2") {
    const OneFormField w = make_form({"0", "x1"}, c2);
    const VectorField d1 = make_vector({"1", "0"}, c2);
    const VectorField d2 = make_vector({"0", "1"}, c2);
    CHECK(exterior_derivative_one_form(w, d1, d2, {0.8, -0.5}) == 0.5);
    CHECK(exterior_derivative_one_form(w, d2, d1, {0.8, -0.5}) == -0.5);
  }
  SUBCASE("antisymmetry on random fields") {
    SampleStream rng(23);
    Box box;
    box.range = {{-1, 1}, {-1, 1}};
    const OneFormField w = make_form({"sin(x2)", "x1*x2"}, c2);
    for (int s = 0; s < 10; ++s) {
      const VectorField x = random_field(2, rng);
      const VectorField y = random_field(2, rng);
      const Vec pt = rng.point_in(box);
      const double ab = exterior_derivative_one_form(w, x, y, pt);
      const double ba = exterior_derivative_one_form(w, y, x, pt);
      CHECK(std::fabs(ab + ba) < 1e-12 * std::max(1.0, std::fabs(ab)));
    }
  }
}

TEST_CASE("nijenhuis torsion") {
  SUBCASE("constant tensor on a flat chart") {
    const EndomorphismField t = make_endo({{"0", "-2"}, {"2", "0"}}, c2);
    SampleStream rng(29);
    Box box;
    box.range = {{-1, 1}, {-1, 1}};
    for (int s = 0; s < 5; ++s) {
      const VectorField x = random_field(2, rng);
      const VectorField y = random_field(2, rng);
      const Vec pt = rng.point_in(box);
      // brackets of constant-coefficient combinations of constant images vanish
      const VectorField cx = make_vector({"1", "-2"}, c2);
      const VectorField cy = make_vector({"0.5", "1"}, c2);
      CHECK(max_abs(nijenhuis(t, cx, cy, pt)) < 1e-15);
      CHECK(max_abs(nijenhuis(t, x, x, pt)) == 0.0);
      (void)y;
    }
  }
  SUBCASE("bracket form agrees with the connection form") {
    const MetricField g = make_metric({{"1 + x2^2", "0"}, {"0", "1 + x1^2"}}, c2);
    const EndomorphismField t =
        make_endo({{"0", "-(1 + 0.1*sin(x1))"}, {"1 + 0.1*sin(x1)", "0"}}, c2);
    SampleStream rng(37);
    Box box;
    box.range = {{-1, 1}, {-1, 1}};
    for (int s = 0; s < 10; ++s) {
      const VectorField x = random_field(2, rng);
      const VectorField y = random_field(2, rng);
      const Vec pt = rng.point_in(box);
      const Vec a = nijenhuis(t, x, y, pt);
      const Vec b = nijenhuis_nabla(g, t, x, y, pt);
      CHECK(vec_dist(a, b) < 1e-9);
    }
  }
  SUBCASE("tensorial in the first slot") {
    const EndomorphismField t = make_endo({{"0", "-(1 + 0.1*sin(x1))"},
                                           {"1 + 0.1*sin(x1)", "0"}},
                                          c2);
    const Expr phi = parse_expression("2 + x1*x2", c2);
    SampleStream rng(41);
    Box box;
    box.range = {{-1, 1}, {-1, 1}};
    for (int s = 0; s < 5; ++s) {
      const VectorField x = random_field(2, rng);
      const VectorField y = random_field(2, rng);
      VectorField phix;
      for (const Expr& e : x.comp) phix.comp.push_back(Expr::binary(ExprOp::mul, phi, e));
      const Vec pt = rng.point_in(box);
      const Vec a = nijenhuis(t, phix, y, pt);
      Vec b = nijenhuis(t, x, y, pt);
      for (double& v : b) v *= phi.eval(pt);
      CHECK(vec_dist(a, b) < 1e-9 * std::max(1.0, max_abs(b)));
    }
  }
}

TEST_CASE("sectional curvature") {
  SUBCASE("flat space") {
    const VectorField x = make_vector({"1", "0.3", "0"}, c3);
    const VectorField y = make_vector({"0", "1", "-0.5"}, c3);
    CHECK(std::fabs(sectional_curvature(euclidean(3, c3), x, y, {0.2, 0.4, 0.6})) < 1e-12);
  }
  SUBCASE("round sphere chart has K = 1") {
    const MetricField g = make_metric({{"1", "0"}, {"0", "sin(x1)^2"}}, c2);
    const VectorField x = make_vector({"1", "0"}, c2);
    const VectorField y = make_vector({"0", "1"}, c2);
    SampleStream rng(43);
    for (int s = 0; s < 10; ++s) {
      const Vec pt = {0.4 + 2.2 * rng.uniform01(), 6.28 * rng.uniform01()};
      const double k = sectional_curvature(g, x, y, pt);
      CHECK(std::fabs(k - 1.0) < 1e-10);
      CHECK(std::fabs(k - testing::fd_sectional(g, pt, {1, 0}, {0, 1})) < 1e-5);
    }
  }
  SUBCASE("degenerate plane raises") {
    const VectorField x = make_vector({"1", "0", "0"}, c3);
    CHECK_THROWS_AS(sectional_curvature(euclidean(3, c3), x, x, {0, 0, 0}), Error);
  }
}

TEST_CASE("totally geodesic residual") {
  std::vector<Point> samples;
  SampleStream rng(47);
  Box box;
  box.range = {{0.5, 1.0}, {-1, 1}, {-1, 1}};
  for (int s = 0; s < 10; ++s) samples.push_back(rng.point_in(box));

  SUBCASE("coordinate plane in flat space") {
    const std::vector<VectorField> span = {make_vector({"1", "0", "0"}, c3),
                                           make_vector({"0", "1", "0"}, c3)};
    const std::vector<VectorField> orth = {make_vector({"0", "0", "1"}, c3)};
    CHECK(totally_geodesic_residual(euclidean(3, c3), span, orth, samples) == 0.0);
  }
  SUBCASE("curved graph distribution is far from geodesic") {
    // tangent planes of the graph x3 = x1^2
    const std::vector<VectorField> span = {make_vector({"1", "0", "2*x1"}, c3),
                                           make_vector({"0", "1", "0"}, c3)};
    const std::vector<VectorField> orth = {make_vector({"-2*x1", "0", "1"}, c3)};
    CHECK(totally_geodesic_residual(euclidean(3, c3), span, orth, samples) > 0.1);
  }
}
