#include "spec_io.hpp"

#include <cmath>
#include <json.hpp>

#include "error.hpp"

namespace weakf {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void shape_error(const std::string& msg) { throw Error(ErrorKind::shape, msg); }

std::vector<std::vector<std::string>> string_matrix(const json& j, const std::string& key,
                                                    size_t rows, size_t cols) {
  if (!j.contains(key)) shape_error("missing field '" + key + "'");
  const json& m = j.at(key);
  if (!m.is_array() || m.size() != rows)
    shape_error("field '" + key + "' must be an array of " + std::to_string(rows) + " rows");
  std::vector<std::vector<std::string>> out;
  out.reserve(rows);
  for (size_t r = 0; r < rows; ++r) {
    const json& row = m.at(r);
    if (!row.is_array() || row.size() != cols)
      shape_error("field '" + key + "' row " + std::to_string(r) + " must have " +
                  std::to_string(cols) + " entries");
    std::vector<std::string> vals;
    vals.reserve(cols);
    for (size_t c = 0; c < cols; ++c) {
      const json& cell = row.at(c);
      if (!cell.is_string())
        shape_error("field '" + key + "' entry (" + std::to_string(r) + "," + std::to_string(c) +
                    ") must be an expression string");
      vals.push_back(cell.get<std::string>());
    }
    out.push_back(std::move(vals));
  }
  return out;
}

}  // namespace

StructureSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::shape, std::string("spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) shape_error("spec must be a JSON object");

  StructureSpec s;
  if (!j.contains("name") || !j.at("name").is_string()) shape_error("missing string field 'name'");
  s.name = j.at("name").get<std::string>();
  if (!j.contains("n") || !j.at("n").is_number_integer()) shape_error("missing integer field 'n'");
  if (!j.contains("p") || !j.at("p").is_number_integer()) shape_error("missing integer field 'p'");
  s.n = j.at("n").get<int>();
  s.p = j.at("p").get<int>();
  if (s.n < 1 || s.p < 1) shape_error("n and p must be at least 1");
  const size_t dim = static_cast<size_t>(2 * s.n + s.p);

  if (!j.contains("coordinates") || !j.at("coordinates").is_array() ||
      j.at("coordinates").size() != dim)
    shape_error("field 'coordinates' must list 2n+p = " + std::to_string(dim) + " names");
  for (const json& c : j.at("coordinates")) {
    if (!c.is_string()) shape_error("coordinate names must be strings");
    s.coordinates.push_back(c.get<std::string>());
  }

  s.f = string_matrix(j, "f", dim, dim);
  s.Q = string_matrix(j, "Q", dim, dim);
  s.xi = string_matrix(j, "xi", static_cast<size_t>(s.p), dim);
  s.eta = string_matrix(j, "eta", static_cast<size_t>(s.p), dim);
  s.g = string_matrix(j, "g", dim, dim);

  if (!j.contains("box") || !j.at("box").is_array() || j.at("box").size() != dim)
    shape_error("field 'box' must list one [lo, hi] interval per coordinate");
  for (const json& r : j.at("box")) {
    if (!r.is_array() || r.size() != 2 || !r.at(0).is_number() || !r.at(1).is_number())
      shape_error("box entries must be [lo, hi] number pairs");
    s.box.push_back({r.at(0).get<double>(), r.at(1).get<double>()});
  }
  return s;
}

std::string spec_to_json(const StructureSpec& s) {
  json j;
  j["name"] = s.name;
  j["n"] = s.n;
  j["p"] = s.p;
  j["coordinates"] = s.coordinates;
  j["f"] = s.f;
  j["Q"] = s.Q;
  j["xi"] = s.xi;
  j["eta"] = s.eta;
  j["g"] = s.g;
  json box = json::array();
  for (const auto& r : s.box) box.push_back({r[0], r[1]});
  j["box"] = box;
  return j.dump(2) + "\n";
}

FramedWeakFStructure compile_spec(const StructureSpec& s) {
  if (s.n < 1 || s.p < 1) shape_error("n and p must be at least 1");
  const int dim = 2 * s.n + s.p;
  if (static_cast<int>(s.coordinates.size()) != dim)
    shape_error("coordinates list does not match 2n+p");
  for (size_t i = 0; i < s.coordinates.size(); ++i)
    for (size_t k = i + 1; k < s.coordinates.size(); ++k)
      if (s.coordinates[i] == s.coordinates[k])
        shape_error("duplicate coordinate name '" + s.coordinates[i] + "'");

  FramedWeakFStructure out;
  out.name = s.name;
  out.n = s.n;
  out.p = s.p;
  out.coords = s.coordinates;

  auto parse_cell = [&](const std::string& text, const std::string& where) -> Expr {
    try {
      return parse_expression(text, s.coordinates);
    } catch (const Error& e) {
      throw Error(e.kind(), where + ": " + e.what(), e.offset());
    }
  };
  auto parse_matrix = [&](const std::vector<std::vector<std::string>>& m, const char* key,
                          size_t rows, size_t cols, std::vector<Expr>& dst) {
    if (m.size() != rows) shape_error(std::string("field '") + key + "' has the wrong row count");
    for (size_t r = 0; r < rows; ++r) {
      if (m[r].size() != cols)
        shape_error(std::string("field '") + key + "' row " + std::to_string(r) +
                    " has the wrong length");
      for (size_t c = 0; c < cols; ++c)
        dst.push_back(parse_cell(m[r][c], std::string(key) + "[" + std::to_string(r) + "][" +
                                              std::to_string(c) + "]"));
    }
  };

  out.f.d = dim;
  out.Q.d = dim;
  out.g.d = dim;
  parse_matrix(s.f, "f", dim, dim, out.f.comp);
  parse_matrix(s.Q, "Q", dim, dim, out.Q.comp);
  parse_matrix(s.g, "g", dim, dim, out.g.comp);
  out.xi.resize(s.p);
  out.eta.resize(s.p);
  for (int i = 0; i < s.p; ++i) {
    if (static_cast<int>(s.xi[i].size()) != dim || static_cast<int>(s.eta[i].size()) != dim)
      shape_error("xi/eta rows must have 2n+p entries");
    for (int k = 0; k < dim; ++k) {
      out.xi[i].comp.push_back(
          parse_cell(s.xi[i][k], "xi[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
      out.eta[i].comp.push_back(
          parse_cell(s.eta[i][k], "eta[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    }
  }

  if (static_cast<int>(s.box.size()) != dim) shape_error("box must have one interval per coordinate");
  for (const auto& r : s.box) {
    if (!(r[1] > r[0])) shape_error("box intervals must be nonempty (lo < hi)");
    out.box.range.push_back(r);
  }

  // symmetry of g, probed numerically at deterministic points
  SampleStream rng(7);
  for (int probe = 0; probe < 5; ++probe) {
    const Point pt = rng.point_in(out.box);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        const double a = out.g.at(i, j).eval(pt);
        const double b = out.g.at(j, i).eval(pt);
        if (std::fabs(a - b) > 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)}))
          shape_error("metric is not symmetric: g[" + std::to_string(i) + "][" +
                      std::to_string(j) + "] != g[" + std::to_string(j) + "][" +
                      std::to_string(i) + "]");
      }
  }
  return out;
}

}  // namespace weakf
