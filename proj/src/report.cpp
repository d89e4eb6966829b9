#include "report.hpp"

#include <cstdio>
#include <json.hpp>

namespace weakf {

namespace {

using json = nlohmann::ordered_json;

const char* status_name(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::satisfied: return "satisfied";
    case HypothesisStatus::vacuous: return "vacuous";
    case HypothesisStatus::invalid_structure: return "invalid-structure";
  }
  return "?";
}

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

std::string point_str(const Vec& pt) {
  std::string s = "[";
  char buf[40];
  for (size_t i = 0; i < pt.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.6g", pt[i]);
    if (i) s += ", ";
    s += buf;
  }
  return s + "]";
}

json identity_json(const VerificationReport& r) {
  json j;
  j["id"] = r.id;
  j["max_residual"] = r.max_residual;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["worst_point"] = r.worst_point;
  return j;
}

json class_json(const StructureClass& c) {
  json j;
  j["valid_metric_weak_f"] = c.valid;
  j["normal"] = c.normal;
  j["weak_K"] = c.weak_K;
  j["weak_almost_S"] = c.weak_almost_S;
  j["weak_S"] = c.weak_S;
  j["weak_almost_C"] = c.weak_almost_C;
  j["weak_C"] = c.weak_C;
  json res;
  res["axioms"] = c.axiom_residual;
  res["n1"] = c.n1_residual;
  res["dphi"] = c.dphi_residual;
  res["deta_minus_phi"] = c.deta_minus_phi_residual;
  res["deta"] = c.deta_residual;
  j["residuals"] = res;
  return j;
}

}  // namespace

std::string class_summary(const StructureClass& c) {
  if (!c.valid) return "invalid metric weak f-structure; classification refused";
  std::string s = "valid metric weak f-structure; ";
  s += c.normal ? "normal" : "not normal";
  return s;
}

std::string report_to_json(const RunReport& r) {
  json j;
  j["command"] = r.command;
  j["structure"] = r.structure_name;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["tolerance"] = r.tolerance;
  j["passed"] = r.passed;
  if (!r.summary.empty()) j["summary"] = r.summary;
  if (r.classification) j["classification"] = class_json(*r.classification);
  json checks = json::array();
  for (const CheckReport& c : r.checks) {
    json cj;
    cj["check_id"] = c.check_id;
    cj["hypothesis_status"] = status_name(c.status);
    json ids = json::array();
    for (const VerificationReport& id : c.identities) ids.push_back(identity_json(id));
    cj["identities"] = ids;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

std::string report_to_text(const RunReport& r) {
  std::string out;
  out += "command: " + r.command + "\n";
  out += "structure: " + r.structure_name + "\n";
  char buf[160];
  std::snprintf(buf, sizeof(buf), "samples: %d  seed: %llu  tolerance: %s\n", r.samples,
                static_cast<unsigned long long>(r.seed), sci(r.tolerance).c_str());
  out += buf;
  if (!r.summary.empty()) out += "summary: " + r.summary + "\n";
  if (r.classification) {
    const StructureClass& c = *r.classification;
    std::snprintf(buf, sizeof(buf),
                  "flags: normal=%d weak-K=%d weak-almost-S=%d weak-S=%d weak-almost-C=%d "
                  "weak-C=%d\n",
                  c.normal, c.weak_K, c.weak_almost_S, c.weak_S, c.weak_almost_C, c.weak_C);
    out += buf;
    std::snprintf(buf, sizeof(buf),
                  "residuals: axioms=%s n1=%s dphi=%s deta-phi=%s deta=%s\n",
                  sci(c.axiom_residual).c_str(), sci(c.n1_residual).c_str(),
                  sci(c.dphi_residual).c_str(), sci(c.deta_minus_phi_residual).c_str(),
                  sci(c.deta_residual).c_str());
    out += buf;
  }
  for (const CheckReport& c : r.checks) {
    out += "check " + c.check_id + "  status: " + status_name(c.status) + "\n";
    for (const VerificationReport& id : c.identities) {
      std::snprintf(buf, sizeof(buf), "  %-34s max_residual %s  tol %s  %s  worst %s\n",
                    id.id.c_str(), sci(id.max_residual).c_str(), sci(id.tolerance).c_str(),
                    id.pass ? "pass" : "FAIL", point_str(id.worst_point).c_str());
      out += buf;
    }
  }
  out += std::string("result: ") + (r.passed ? "PASS" : "FAIL") + "\n";
  return out;
}

}  // namespace weakf
