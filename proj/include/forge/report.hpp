#ifndef FORGE_REPORT_HPP
#define FORGE_REPORT_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace forge {

enum class Verdict { pass, fail, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
  }
}

// One evaluated point of a condition trace: grid coordinate (a radius R or r,
// or a refinement level) and the quantity evaluated there.
struct TracePoint {
  double grid = 0.0;
  double value = 0.0;
};

// Outcome of one numeric condition check. A pass never certifies the
// asymptotic statement; it records that the finite trace stabilized below a
// finite threshold. Composite checks carry per-item subreports and the
// conjunction verdict.
struct ConditionReport {
  std::string condition_id;
  Verdict verdict = Verdict::inconclusive;
  std::vector<TracePoint> trace;
  double tolerance = 0.0;
  std::string notes;
  double fitted_constant = std::numeric_limits<double>::quiet_NaN();
  std::vector<ConditionReport> subreports;
};

// Outcome of a statistical experiment; the verdict must be re-derivable from
// metrics and thresholds alone.
struct VerifyReport {
  std::string id;
  std::map<std::string, double> metrics;
  std::map<std::string, double> thresholds;
  Verdict verdict = Verdict::inconclusive;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string notes;
};

// Grids shared by the condition checks: log-spaced outer radii with per-R
// radial/angular resolution for the y and xi sup estimates.
struct ProbeGrids {
  std::vector<double> R_grid;  // strictly increasing, default [1, 1e6]
  int n_radial = 64;           // radial points per ball
  int n_angular = 16;          // angular directions (d = 2)

  static ProbeGrids standard(int n_R = 25, double R_max = 1e6);
  void validate() const;
};

// Liminf-style verdict: the running minimum of the trace must stabilize
// (relative change < 1% over the last third) for a pass; a fail requires the
// raw trace to grow by >= 10x over the last third; otherwise inconclusive.
Verdict trace_verdict_stabilized(const std::vector<TracePoint>& trace);

// Decay-style verdict for quantities that must fall below `tol`: pass when
// the last value is below tol and the tail is non-increasing; fail when the
// trace grows >= 10x over the last third; otherwise inconclusive.
Verdict trace_verdict_decreasing(const std::vector<TracePoint>& trace,
                                 double tol);

// Like trace_verdict_decreasing, but a monotone trace with a clear downward
// trend (final value below half the first) also passes: a finite grid of a
// power-law decay cannot always reach the absolute tolerance.
Verdict trace_verdict_vanishing(const std::vector<TracePoint>& trace,
                                double tol);

// Conjunction used by composite checks: any fail -> fail, else any
// inconclusive -> inconclusive, else pass.
Verdict combine_verdicts(const std::vector<ConditionReport>& subs);

}  // namespace forge

#endif
