#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace weakf {

/// Outcome of one identity swept over samples and probe vectors. The residual
/// is scaled by the magnitude of the identity's operands, so it reads as a
/// relative violation.
struct VerificationReport {
  std::string id;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  Vec worst_point;  // empty when nothing was evaluated
};

enum class HypothesisStatus { satisfied, vacuous, invalid_structure };

/// One theorem check: a hypothesis gate plus identity residuals. A vacuous
/// check reports its measurements but contributes nothing to the verdict.
struct CheckReport {
  std::string check_id;
  HypothesisStatus status = HypothesisStatus::satisfied;
  std::vector<VerificationReport> identities;

  bool contributes() const { return status == HypothesisStatus::satisfied; }
  bool passed() const {
    if (!contributes()) return true;
    for (const auto& r : identities)
      if (!r.pass) return false;
    return true;
  }
};

/// Classification flags with the residuals they were decided on.
struct StructureClass {
  bool valid = false;
  bool normal = false;
  bool weak_K = false;
  bool weak_almost_S = false;
  bool weak_S = false;
  bool weak_almost_C = false;
  bool weak_C = false;
  double axiom_residual = 0.0;
  double n1_residual = 0.0;            // normality
  double dphi_residual = 0.0;          // closedness of the fundamental form
  double deta_minus_phi_residual = 0.0;
  double deta_residual = 0.0;
};

/// Everything one CLI invocation produces.
struct RunReport {
  std::string command;         // validate | classify | check
  std::string structure_name;
  int samples = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  std::vector<CheckReport> checks;
  std::optional<StructureClass> classification;
  std::string summary;
  bool passed = true;
};

std::string report_to_json(const RunReport& r);
std::string report_to_text(const RunReport& r);
std::string class_summary(const StructureClass& c);

}  // namespace weakf
