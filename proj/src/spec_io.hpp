#pragma once

#include <array>
#include <string>
#include <vector>

#include "structure.hpp"

namespace weakf {

/// Serialized structure description: everything is an expression string over
/// the declared coordinates. This is the on-disk JSON format the CLI reads
/// and the catalog emits.
struct StructureSpec {
  std::string name;
  int n = 0;
  int p = 0;
  std::vector<std::string> coordinates;                // 2n + p names
  std::vector<std::vector<std::string>> f;             // dim x dim
  std::vector<std::vector<std::string>> Q;             // dim x dim
  std::vector<std::vector<std::string>> xi;            // p x dim
  std::vector<std::vector<std::string>> eta;           // p x dim
  std::vector<std::vector<std::string>> g;             // dim x dim, symmetric
  std::vector<std::array<double, 2>> box;              // dim intervals
};

/// Parse a spec from JSON text. Throws Error(shape) with a diagnostic for
/// missing fields, wrong element types or malformed JSON.
StructureSpec spec_from_json(const std::string& text);

std::string spec_to_json(const StructureSpec& s);

/// Parse every expression and cross-check shapes (dimensions, duplicate
/// coordinates, symmetric g, nonempty box). Throws Error(shape) or parse
/// errors annotated with the offending entry.
FramedWeakFStructure compile_spec(const StructureSpec& s);

}  // namespace weakf
