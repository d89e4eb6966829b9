#pragma once

#include <string>
#include <vector>

#include "spec_io.hpp"

namespace weakf {

/// Parameters accepted by the built-in structures. `lambda` applies to
/// euclid-weak-C only (one value per 2x2 block, default 2.0); `torus`
/// switches its sampling box to one period of a flat torus.
struct CatalogParams {
  int n = 1;
  int p = 1;
  std::vector<double> lambda;
  bool torus = false;
};

std::vector<std::string> catalog_names();

/// Build a built-in structure as a StructureSpec (expression strings in the
/// CLI file format). Throws Error(unknown_name) / Error(bad_argument).
StructureSpec catalog_example(const std::string& name, const CatalogParams& params);

/// Key/value form used by the CLI and the C API ("n", "p", "lambda1".., "torus").
CatalogParams catalog_params_from_kv(const std::vector<std::pair<std::string, double>>& kv);

}  // namespace weakf
