#pragma once

#include <string>
#include <vector>

#include "report.hpp"
#include "structure.hpp"

namespace weakf {

/// Stable check identifiers, in execution order for "all".
std::vector<std::string> theorem_ids();

// Each check classifies the structure, gates on its hypotheses and sweeps the
// conclusion identities; a failed gate yields a vacuous pass that records any
// measured hypothesis residuals but contributes nothing to the verdict.

CheckReport verify_master_formula(const FramedWeakFStructure& S, const SweepConfig& cfg);
CheckReport verify_normal_consequences(const FramedWeakFStructure& S, const SweepConfig& cfg);
CheckReport verify_weak_K(const FramedWeakFStructure& S, const SweepConfig& cfg);
CheckReport verify_almost_S(const FramedWeakFStructure& S, const SweepConfig& cfg);
CheckReport verify_h_identities(const FramedWeakFStructure& S, const SweepConfig& cfg);
CheckReport verify_weak_S(const FramedWeakFStructure& S, const SweepConfig& cfg);
CheckReport verify_weak_C(const FramedWeakFStructure& S, const SweepConfig& cfg);
CheckReport verify_parallel_f(const FramedWeakFStructure& S, const SweepConfig& cfg);

/// Run one theorem check by id, or all of them. The classification is
/// computed once and shared.
RunReport run_checks(const FramedWeakFStructure& S, const std::string& theorem,
                     const SweepConfig& cfg);
RunReport run_validate(const FramedWeakFStructure& S, const SweepConfig& cfg);
RunReport run_classify(const FramedWeakFStructure& S, const SweepConfig& cfg);

}  // namespace weakf
