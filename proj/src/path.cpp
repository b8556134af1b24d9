#include "forge/path.hpp"

#include <algorithm>
#include <cmath>

namespace forge {

std::optional<Vec> PathSkeleton::state_at(double t) const {
  if (t < 0.0) throw DomainError("path query at negative time");
  if (exploded && explosion_time && t >= *explosion_time) return std::nullopt;
  auto it = std::upper_bound(times.begin(), times.end(), t);
  std::size_t i = static_cast<std::size_t>(it - times.begin());
  if (i == 0) return std::nullopt;  // unreachable for valid skeletons
  return Vec(states.row(static_cast<Eigen::Index>(i - 1)));
}

void PathSkeleton::validate() const {
  if (times.empty()) throw ParameterError("path skeleton has no knots");
  if (times.front() != 0.0)
    throw ParameterError("path skeleton must start at time 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw ParameterError("path knot times must be strictly increasing");
  if (static_cast<std::size_t>(states.rows()) != times.size())
    throw ParameterError("path knot/state lengths differ");
  if (states.cols() < 1) throw ParameterError("path states need d >= 1");
  if (exploded && !explosion_time)
    throw ParameterError("exploded path is missing its explosion time");
  for (Eigen::Index i = 0; i < states.rows(); ++i)
    if (!states.row(i).allFinite())
      throw ParameterError("path states must be finite");
}

void MCConfig::validate() const {
  if (n_paths < 1) throw ParameterError("n_paths must be >= 1");
  if (!(horizon > 0.0)) throw ParameterError("horizon must be positive");
  if (dt < 0.0) throw ParameterError("dt must be nonnegative");
  if (dt > 0.0 && dt > horizon) throw ParameterError("dt must not exceed horizon");
  if (!(escape_radius > 0.0))
    throw ParameterError("escape radius must be positive");
}

double MCConfig::resolved_dt(double alpha) const {
  if (dt > 0.0) return dt;
  return horizon * (alpha >= 1.0 ? 0x1.0p-10 : 0x1.0p-12);
}

}  // namespace forge
