#include "catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "error.hpp"

namespace weakf {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::vector<std::string>> zeros(int rows, int cols) {
  return std::vector<std::vector<std::string>>(rows, std::vector<std::string>(cols, "0"));
}

void check_params(const CatalogParams& prm) {
  if (prm.n < 1 || prm.p < 1)
    throw Error(ErrorKind::bad_argument, "catalog: n and p must be at least 1");
  for (double l : prm.lambda)
    if (!(l > 0.0)) throw Error(ErrorKind::bad_argument, "catalog: lambda values must be positive");
}

/// Chart R^{2n+p} with coordinates x1..x_{2n}, z1..z_p; f rotates each
/// (x_{2k+1}, x_{2k+2}) plane and is scaled per block, Q compensates with the
/// squared scale, xi_i = d/dz_i, eta^i = dz_i, g Euclidean. `scale(k)` gives
/// the block factor as an expression string.
StructureSpec block_structure(const std::string& name, int n, int p,
                              const std::vector<std::string>& scale,
                              const std::vector<std::string>& scale_sq, bool torus) {
  const int dim = 2 * n + p;
  StructureSpec s;
  s.name = name;
  s.n = n;
  s.p = p;
  for (int k = 1; k <= 2 * n; ++k) s.coordinates.push_back("x" + std::to_string(k));
  for (int i = 1; i <= p; ++i) s.coordinates.push_back("z" + std::to_string(i));

  s.f = zeros(dim, dim);
  s.Q = zeros(dim, dim);
  s.g = zeros(dim, dim);
  for (int k = 0; k < n; ++k) {
    s.f[2 * k][2 * k + 1] = "-(" + scale[k] + ")";
    s.f[2 * k + 1][2 * k] = scale[k];
    s.Q[2 * k][2 * k] = scale_sq[k];
    s.Q[2 * k + 1][2 * k + 1] = scale_sq[k];
  }
  for (int i = 0; i < p; ++i) s.Q[2 * n + i][2 * n + i] = "1";
  for (int i = 0; i < dim; ++i) s.g[i][i] = "1";

  s.xi = zeros(p, dim);
  s.eta = zeros(p, dim);
  for (int i = 0; i < p; ++i) {
    s.xi[i][2 * n + i] = "1";
    s.eta[i][2 * n + i] = "1";
  }

  const double two_pi = 6.283185307179586;
  for (int i = 0; i < dim; ++i)
    s.box.push_back(torus ? std::array<double, 2>{0.0, two_pi}
                          : std::array<double, 2>{-1.0, 1.0});
  return s;
}

StructureSpec euclid_weak_c(const CatalogParams& prm) {
  std::vector<double> lambda = prm.lambda;
  if (lambda.empty()) lambda.assign(prm.n, 2.0);
  if (static_cast<int>(lambda.size()) != prm.n)
    throw Error(ErrorKind::bad_argument, "euclid-weak-C expects one lambda per block");
  std::vector<std::string> scale, scale_sq;
  for (double l : lambda) {
    scale.push_back(num(l));
    scale_sq.push_back(num(l * l));
  }
  return block_structure("euclid-weak-C", prm.n, prm.p, scale, scale_sq, prm.torus);
}

StructureSpec generic_weak_f(const CatalogParams& prm, const std::string& name) {
  // position-dependent block factor, bounded away from zero
  const std::string lam = "(1 + 0.1*sin(x1))";
  std::vector<std::string> scale(prm.n, lam), scale_sq(prm.n, lam + "^2");
  return block_structure(name, prm.n, prm.p, scale, scale_sq, false);
}

StructureSpec classical_s(const CatalogParams& prm) {
  const int n = prm.n, p = prm.p;
  const int dim = 2 * n + p;
  StructureSpec s;
  s.name = "classical-S";
  s.n = n;
  s.p = p;
  for (int j = 1; j <= n; ++j) s.coordinates.push_back("x" + std::to_string(j));
  for (int j = 1; j <= n; ++j) s.coordinates.push_back("y" + std::to_string(j));
  for (int i = 1; i <= p; ++i) s.coordinates.push_back("z" + std::to_string(i));
  const auto ix = [&](int j) { return j; };          // 0-based, j in 0..n-1
  const auto iy = [&](int j) { return n + j; };
  const auto iz = [&](int i) { return 2 * n + i; };
  const auto y = [&](int j) { return "y" + std::to_string(j + 1); };

  // f: d/dx_j -> -d/dy_j,  d/dy_j -> d/dx_j + y_j sum_i d/dz_i,  d/dz_i -> 0
  s.f = zeros(dim, dim);
  for (int j = 0; j < n; ++j) {
    s.f[iy(j)][ix(j)] = "-1";
    s.f[ix(j)][iy(j)] = "1";
    for (int i = 0; i < p; ++i) s.f[iz(i)][iy(j)] = y(j);
  }

  s.Q = zeros(dim, dim);
  for (int i = 0; i < dim; ++i) s.Q[i][i] = "1";

  // eta^i = (dz_i - sum_j y_j dx_j) / 2, xi_i = 2 d/dz_i
  s.xi = zeros(p, dim);
  s.eta = zeros(p, dim);
  for (int i = 0; i < p; ++i) {
    s.xi[i][iz(i)] = "2";
    s.eta[i][iz(i)] = "0.5";
    for (int j = 0; j < n; ++j) s.eta[i][ix(j)] = "-0.5*" + y(j);
  }

  // g = sum_i eta^i (x) eta^i + 1/4 sum_j (dx_j^2 + dy_j^2)
  const std::string quarter_p = num(p / 4.0);
  s.g = zeros(dim, dim);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      std::string cross = quarter_p + "*" + y(j) + "*" + y(k);
      s.g[ix(j)][ix(k)] = (j == k) ? "0.25 + " + cross : cross;
    }
    s.g[iy(j)][iy(j)] = "0.25";
    for (int i = 0; i < p; ++i) {
      s.g[ix(j)][iz(i)] = "-0.25*" + y(j);
      s.g[iz(i)][ix(j)] = "-0.25*" + y(j);
    }
  }
  for (int i = 0; i < p; ++i) s.g[iz(i)][iz(i)] = "0.25";

  for (int i = 0; i < dim; ++i) s.box.push_back({-1.0, 1.0});
  return s;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"euclid-weak-C", "generic-weak-f", "classical-S", "weak-almost-contact"};
}

StructureSpec catalog_example(const std::string& name, const CatalogParams& params) {
  check_params(params);
  if (name == "euclid-weak-C") return euclid_weak_c(params);
  if (name == "generic-weak-f") return generic_weak_f(params, "generic-weak-f");
  if (name == "classical-S") return classical_s(params);
  if (name == "weak-almost-contact") {
    CatalogParams prm = params;
    prm.p = 1;  // the p = 1 slice
    return generic_weak_f(prm, "weak-almost-contact");
  }
  throw Error(ErrorKind::unknown_name, "unknown catalog example '" + name + "'");
}

CatalogParams catalog_params_from_kv(const std::vector<std::pair<std::string, double>>& kv) {
  CatalogParams prm;
  std::vector<std::pair<int, double>> lambdas;
  for (const auto& [key, value] : kv) {
    if (key == "n")
      prm.n = static_cast<int>(value);
    else if (key == "p")
      prm.p = static_cast<int>(value);
    else if (key == "torus")
      prm.torus = value != 0.0;
    else if (key == "lambda")
      prm.lambda.assign(std::max(prm.n, 1), value);
    else if (key.rfind("lambda", 0) == 0) {
      const int idx = std::atoi(key.c_str() + 6);
      if (idx < 1) throw Error(ErrorKind::bad_argument, "bad parameter '" + key + "'");
      lambdas.push_back({idx, value});
    } else {
      throw Error(ErrorKind::bad_argument, "unknown parameter '" + key + "'");
    }
  }
  if (!lambdas.empty()) {
    int mx = 0;
    for (const auto& [idx, v] : lambdas) mx = std::max(mx, idx);
    if (prm.lambda.empty()) prm.lambda.assign(std::max({prm.n, mx, 1}), 2.0);
    for (const auto& [idx, v] : lambdas) {
      if (idx > static_cast<int>(prm.lambda.size())) prm.lambda.resize(idx, 2.0);
      prm.lambda[idx - 1] = v;
    }
  } else if (!prm.lambda.empty() && static_cast<int>(prm.lambda.size()) != prm.n) {
    prm.lambda.assign(prm.n, prm.lambda.front());
  }
  return prm;
}

}  // namespace weakf
