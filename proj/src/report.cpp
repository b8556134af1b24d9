#include "forge/report.hpp"

#include <algorithm>
#include <cmath>

#include "forge/types.hpp"

namespace forge {

ProbeGrids ProbeGrids::standard(int n_R, double R_max) {
  ProbeGrids g;
  g.R_grid.resize(n_R);
  for (int i = 0; i < n_R; ++i)
    g.R_grid[i] = std::pow(R_max, static_cast<double>(i) / (n_R - 1));
  return g;
}

void ProbeGrids::validate() const {
  if (R_grid.empty()) throw ParameterError("probe R grid is empty");
  for (std::size_t i = 0; i + 1 < R_grid.size(); ++i)
    if (!(R_grid[i] < R_grid[i + 1]))
      throw ParameterError("probe R grid must be strictly increasing");
  if (n_radial < 2 || n_angular < 1)
    throw ParameterError("probe grid resolutions must be positive");
}

namespace {

// Last third of the trace (at least two points when the trace has them).
std::size_t tail_start(std::size_t n) {
  if (n < 3) return 0;
  return n - std::max<std::size_t>(2, n / 3);
}

bool grows_tenfold(const std::vector<TracePoint>& trace) {
  std::size_t k = tail_start(trace.size());
  double head = trace[k].value;
  double last = trace.back().value;
  if (!std::isfinite(last)) return true;
  return std::isfinite(head) && last >= 10.0 * std::abs(head) &&
         std::abs(head) > 0.0;
}

}  // namespace

Verdict trace_verdict_stabilized(const std::vector<TracePoint>& trace) {
  if (trace.size() < 3) return Verdict::inconclusive;
  if (grows_tenfold(trace)) return Verdict::fail;
  // Running minimum = finite-grid liminf estimator.
  std::vector<double> run_min(trace.size());
  double m = trace[0].value;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    m = std::min(m, trace[i].value);
    run_min[i] = m;
  }
  if (!std::isfinite(run_min.back())) return Verdict::inconclusive;
  std::size_t k = tail_start(trace.size());
  double lo = run_min.back(), hi = run_min.back();
  for (std::size_t i = k; i < run_min.size(); ++i) {
    lo = std::min(lo, run_min[i]);
    hi = std::max(hi, run_min[i]);
  }
  // Change measured against the overall trace scale, so a trace decaying to
  // zero (liminf estimate 0) still counts as stabilized.
  double scale = std::max({std::abs(run_min.front()), std::abs(hi), 1e-300});
  if ((hi - lo) / scale < 0.01) return Verdict::pass;
  return Verdict::inconclusive;
}

Verdict trace_verdict_decreasing(const std::vector<TracePoint>& trace,
                                 double tol) {
  if (trace.empty()) return Verdict::inconclusive;
  if (trace.size() >= 3 && grows_tenfold(trace)) return Verdict::fail;
  double last = trace.back().value;
  if (!std::isfinite(last)) return Verdict::inconclusive;
  if (last >= tol) return Verdict::inconclusive;
  // Require a non-increasing tail (small numerical wiggle allowed).
  std::size_t k = tail_start(trace.size());
  for (std::size_t i = k; i + 1 < trace.size(); ++i)
    if (trace[i + 1].value > trace[i].value * (1.0 + 1e-9) + tol * 1e-6)
      return Verdict::inconclusive;
  return Verdict::pass;
}

Verdict trace_verdict_vanishing(const std::vector<TracePoint>& trace,
                                double tol) {
  Verdict v = trace_verdict_decreasing(trace, tol);
  if (v != Verdict::inconclusive || trace.size() < 4) return v;
  double first = trace.front().value;
  double last = trace.back().value;
  if (!(std::isfinite(first) && std::isfinite(last))) return v;
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < trace.size(); ++i)
    if (trace[i + 1].value > trace[i].value * (1.0 + 1e-9)) monotone = false;
  if (monotone && last < 0.5 * first) return Verdict::pass;
  return v;
}

Verdict combine_verdicts(const std::vector<ConditionReport>& subs) {
  bool inconclusive = false;
  for (const auto& s : subs) {
    if (s.verdict == Verdict::fail) return Verdict::fail;
    if (s.verdict == Verdict::inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::inconclusive : Verdict::pass;
}

}  // namespace forge
