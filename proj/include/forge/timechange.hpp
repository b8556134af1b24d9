#ifndef FORGE_TIMECHANGE_HPP
#define FORGE_TIMECHANGE_HPP

#include <optional>
#include <vector>

#include "forge/coefficient.hpp"
#include "forge/levy.hpp"
#include "forge/path.hpp"

namespace forge {

// Additive clock A(u) = \int_0^u 1/phi(X_s) ds evaluated at the path knots.
// A is exactly piecewise linear for piecewise-constant paths, so the inverse
// clock is closed-form.
struct ClockResult {
  std::vector<double> knot_times;  // the path grid
  std::vector<double> A_values;    // A at the knots, A(0) = 0
  std::vector<double> r_values;    // A at the requested horizons r_n
  // When true the path horizon is declared final: t >= A(end) encodes
  // t >= r_infinity and the inverse clock returns the explosion marker.
  bool horizon_final = false;

  // Piecewise-linear interpolation of A; u beyond the grid extends with the
  // last slope frozen (only meaningful for diagnostics).
  double value_at(double u) const;
};

ClockResult additive_clock(const PathSkeleton& path, const StateCoefficient& phi,
                           const std::vector<double>& horizons = {});

// alpha_t: the unique u with A(u) = t. Exact inversion of the piecewise
// linear clock. Empty optional is the explosion marker: t beyond the clock's
// reach (strictly beyond A(end), or t >= A(end) for a final horizon).
std::optional<double> inverse_clock(const ClockResult& clock, double t);

// Y_t = X_{alpha_t} on t_grid; knots past the clock's reach are cut and the
// result is flagged exploded at the r_infinity proxy A(end).
PathSkeleton time_change_path(const PathSkeleton& path,
                              const StateCoefficient& phi,
                              const std::vector<double>& t_grid);

// Simulates the base Levy process on an adaptively extended horizon (doubling
// until A(end) >= horizon, cap 2^10 x horizon), then time-changes onto the
// uniform grid of step mc.dt. Paths whose state leaves B(x0, escape_radius)
// before the horizon are flagged exploded; paths whose clock cannot reach the
// horizon within the cap are flagged horizon-censored, never dropped. Throws
// BudgetError when more than half the ensemble is censored.
std::vector<PathSkeleton> simulate_timechanged(const ExponentSpec& base,
                                               const StateCoefficient& phi,
                                               const Vec& x0, double horizon,
                                               const MCConfig& mc);

}  // namespace forge

#endif
