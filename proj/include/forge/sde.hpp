#ifndef FORGE_SDE_HPP
#define FORGE_SDE_HPP

#include <optional>
#include <vector>

#include "forge/coefficient.hpp"
#include "forge/levy.hpp"
#include "forge/path.hpp"

namespace forge {

// Euler-Maruyama for dX_t = sigma(X_{t-}) dL_t with exact driver increments:
// X_{k+1} = X_k + sigma(X_k) dL_k. One-dimensional drivers only. Paths
// leaving B(x0, escape_radius) are flagged exploded at the crossing step.
std::vector<PathSkeleton> euler_maruyama(const StateCoefficient& sigma,
                                         const ExponentSpec& driver,
                                         const Vec& x0, const MCConfig& mc);

// First grid time with |X_t - X_0| > radius, or empty if the path stays in
// the ball.
std::optional<double> detect_explosion(const PathSkeleton& path, double radius);

}  // namespace forge

#endif
