#include "forge/sde.hpp"

#include <cmath>
#include <vector>

#include "forge/parallel.hpp"
#include "forge/rng.hpp"

namespace forge {

std::vector<PathSkeleton> euler_maruyama(const StateCoefficient& sigma,
                                         const ExponentSpec& driver,
                                         const Vec& x0, const MCConfig& mc) {
  driver.validate();
  mc.validate();
  if (driver.dim != 1)
    throw CapabilityError("Euler-Maruyama drivers are one-dimensional");
  if (x0.size() != 1) throw ParameterError("initial state must be scalar");

  double alpha = 2.0;
  switch (driver.family) {
    case ExponentFamily::isotropic_stable:
    case ExponentFamily::relativistic_stable:
    case ExponentFamily::truncated_stable:
      alpha = driver.alpha;
      break;
    default:
      break;
  }
  double dt = mc.resolved_dt(alpha);
  auto n_steps = static_cast<int>(std::ceil(mc.horizon / dt - 1e-12));
  dt = mc.horizon / n_steps;  // land exactly on the horizon

  auto sigma_at = [&](double x) {
    double v = sigma.raw(scalar_vec(x));
    if (std::isnan(v) || v < 0.0 || (v == 0.0 && !mc.allow_zero_coefficient))
      throw DomainError("coefficient '" + sigma.label() +
                        "' is not positive along the path");
    return v;
  };

  std::vector<PathSkeleton> out(static_cast<std::size_t>(mc.n_paths));
  parallel_for(static_cast<std::size_t>(mc.n_paths), [&](std::size_t p) {
    RngStream rng(mc.seed, mc.stream_offset + p);
    Mat inc = sample_increments(driver, dt, n_steps, rng);
    std::vector<double> times{0.0};
    std::vector<double> states{x0(0)};
    bool exploded = false;
    double t_exploded = 0.0;
    for (int k = 0; k < n_steps; ++k) {
      double x_next = states.back() + sigma_at(states.back()) * inc(k, 0);
      double t_next = (k + 1 == n_steps) ? mc.horizon : (k + 1) * dt;
      if (std::abs(x_next - x0(0)) > mc.escape_radius) {
        exploded = true;
        t_exploded = t_next;
        break;
      }
      times.push_back(t_next);
      states.push_back(x_next);
    }
    PathSkeleton path;
    path.times = std::move(times);
    path.states.resize(static_cast<Eigen::Index>(states.size()), 1);
    for (std::size_t i = 0; i < states.size(); ++i)
      path.states(static_cast<Eigen::Index>(i), 0) = states[i];
    path.exploded = exploded;
    if (exploded) path.explosion_time = t_exploded;
    path.stream_id = mc.stream_offset + p;
    out[p] = std::move(path);
  });
  return out;
}

std::optional<double> detect_explosion(const PathSkeleton& path, double radius) {
  if (!(radius > 0.0)) throw ParameterError("radius must be positive");
  path.validate();
  Vec origin = path.states.row(0);
  for (Eigen::Index i = 1; i < path.states.rows(); ++i)
    if ((path.states.row(i).transpose() - origin).norm() > radius)
      return path.times[static_cast<std::size_t>(i)];
  if (path.exploded) return path.explosion_time;
  return std::nullopt;
}

}  // namespace forge
