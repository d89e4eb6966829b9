#pragma once

// Residual bookkeeping shared by the axiom and theorem sweeps.

#include <algorithm>
#include <cmath>
#include <string>

#include "report.hpp"

namespace weakf {

/// Accumulates the max scaled residual of one identity over a sweep.
/// Residuals are |raw| / max(1, scale) where scale is the magnitude of the
/// identity's operands.
class ResidualTracker {
 public:
  void add(double raw, double scale, const Point& pt) {
    const double r = std::fabs(raw) / std::max(1.0, scale);
    if (r >= max_ || worst_.empty()) {
      if (r > max_ || worst_.empty()) worst_ = pt;
      max_ = std::max(max_, r);
    }
  }

  void count_sample() { ++samples_; }

  VerificationReport report(const std::string& id, double tol) const {
    VerificationReport r;
    r.id = id;
    r.samples = samples_;
    r.max_residual = max_;
    r.tolerance = tol;
    r.pass = max_ < tol;
    r.worst_point = worst_;
    return r;
  }

  double max_residual() const { return max_; }

 private:
  double max_ = 0.0;
  int samples_ = 0;
  Point worst_;
};

inline double operand_scale(std::initializer_list<double> magnitudes) {
  double s = 1.0;
  for (double m : magnitudes) s = std::max(s, std::fabs(m));
  return s;
}

/// lhs = rhs as scalars.
inline void track_eq(ResidualTracker& t, double lhs, double rhs, const Point& pt) {
  t.add(lhs - rhs, operand_scale({lhs, rhs}), pt);
}

/// lhs = rhs componentwise.
inline void track_eq(ResidualTracker& t, const Vec& lhs, const Vec& rhs, const Point& pt) {
  t.add(/*raw=*/[&] {
    double r = 0.0;
    for (size_t i = 0; i < lhs.size(); ++i) r = std::max(r, std::fabs(lhs[i] - rhs[i]));
    return r;
  }(), operand_scale({max_abs(lhs), max_abs(rhs)}), pt);
}

/// v = 0 with an explicit operand scale.
inline void track_zero(ResidualTracker& t, const Vec& v, double scale, const Point& pt) {
  t.add(max_abs(v), scale, pt);
}

inline void track_zero(ResidualTracker& t, double v, double scale, const Point& pt) {
  t.add(v, scale, pt);
}

}  // namespace weakf
