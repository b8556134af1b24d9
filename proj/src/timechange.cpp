#include "forge/timechange.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

#include "forge/parallel.hpp"
#include "forge/rng.hpp"

namespace forge {

namespace {

double checked_inverse_phi(const StateCoefficient& phi, const Vec& x) {
  double v = phi(x);
  if (!std::isfinite(v))
    throw DomainError("coefficient '" + phi.label() +
                      "' is not finite along the path");
  return 1.0 / v;
}

// Step-size exponent of the base family (heavy tails get finer steps).
double family_alpha(const ExponentSpec& spec) {
  switch (spec.family) {
    case ExponentFamily::isotropic_stable:
    case ExponentFamily::relativistic_stable:
    case ExponentFamily::truncated_stable:
      return spec.alpha;
    default:
      return 2.0;
  }
}

// Last knot index i with knots[i] <= u.
std::size_t knot_before(const std::vector<double>& knots, double u) {
  auto it = std::upper_bound(knots.begin(), knots.end(), u);
  return it == knots.begin() ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
}

}  // namespace

double ClockResult::value_at(double u) const {
  if (knot_times.empty()) throw DomainError("empty clock");
  if (u <= knot_times.front()) return A_values.front();
  std::size_t n = knot_times.size();
  std::size_t i = knot_before(knot_times, u);
  if (i >= n - 1) i = n - 2;  // extend past the grid with the last slope
  double slope = (A_values[i + 1] - A_values[i]) /
                 (knot_times[i + 1] - knot_times[i]);
  if (u == knot_times[i]) return A_values[i];
  return A_values[i] + (u - knot_times[i]) * slope;
}

ClockResult additive_clock(const PathSkeleton& path, const StateCoefficient& phi,
                           const std::vector<double>& horizons) {
  path.validate();
  if (path.exploded)
    throw DomainError("cannot run the clock on a path in the cemetery");
  ClockResult clock;
  clock.knot_times = path.times;
  clock.A_values.resize(path.times.size());
  clock.A_values[0] = 0.0;
  for (std::size_t i = 0; i + 1 < path.times.size(); ++i) {
    double inv = checked_inverse_phi(phi, path.states.row(static_cast<Eigen::Index>(i)));
    clock.A_values[i + 1] =
        clock.A_values[i] + (path.times[i + 1] - path.times[i]) * inv;
  }
  for (double h : horizons)
    clock.r_values.push_back(h >= clock.knot_times.back()
                                 ? clock.A_values.back()
                                 : clock.value_at(h));
  return clock;
}

std::optional<double> inverse_clock(const ClockResult& clock, double t) {
  if (t < 0.0) throw DomainError("inverse clock at negative time");
  if (clock.knot_times.size() < 2 || clock.A_values.size() != clock.knot_times.size())
    throw ParameterError("clock needs at least two knots");
  double T = clock.A_values.back();
  if (t > T || (clock.horizon_final && t >= T)) return std::nullopt;
  if (t == T) return clock.knot_times.back();
  auto it = std::upper_bound(clock.A_values.begin(), clock.A_values.end(), t);
  std::size_t i = static_cast<std::size_t>(it - clock.A_values.begin());
  i = (i == 0) ? 0 : i - 1;
  if (t == clock.A_values[i]) return clock.knot_times[i];
  double du = clock.knot_times[i + 1] - clock.knot_times[i];
  double dA = clock.A_values[i + 1] - clock.A_values[i];
  return clock.knot_times[i] + (t - clock.A_values[i]) * (du / dA);
}

PathSkeleton time_change_path(const PathSkeleton& path,
                              const StateCoefficient& phi,
                              const std::vector<double>& t_grid) {
  if (t_grid.empty() || t_grid.front() != 0.0)
    throw ParameterError("time grid must start at 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw ParameterError("time grid must be strictly increasing");
  ClockResult clock = additive_clock(path, phi);

  std::vector<double> times;
  std::vector<Eigen::Index> rows;
  bool exploded = false;
  for (double t : t_grid) {
    auto a = inverse_clock(clock, t);
    if (!a) {
      exploded = true;
      break;
    }
    times.push_back(t);
    rows.push_back(static_cast<Eigen::Index>(knot_before(path.times, *a)));
  }
  PathSkeleton out;
  out.times = std::move(times);
  out.states.resize(static_cast<Eigen::Index>(rows.size()), path.states.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.states.row(static_cast<Eigen::Index>(i)) = path.states.row(rows[i]);
  out.exploded = exploded;
  if (exploded) out.explosion_time = clock.A_values.back();  // r_infinity proxy
  out.stream_id = path.stream_id;
  return out;
}

std::vector<PathSkeleton> simulate_timechanged(const ExponentSpec& base,
                                               const StateCoefficient& phi,
                                               const Vec& x0, double horizon,
                                               const MCConfig& mc) {
  base.validate();
  if (!(horizon > 0.0)) throw ParameterError("horizon must be positive");
  if (x0.size() != base.dim)
    throw ParameterError("initial state dimension mismatch");
  MCConfig cfg = mc;
  cfg.horizon = horizon;
  cfg.validate();
  if (base.dim != 1)
    throw CapabilityError("time-changed simulation is implemented for d = 1");
  const double dt = cfg.resolved_dt(family_alpha(base));
  const double cap = 1024.0 * horizon;  // 2^10 doubling cap

  std::vector<PathSkeleton> out(static_cast<std::size_t>(cfg.n_paths));
  std::atomic<int> censored_count{0};

  parallel_for(static_cast<std::size_t>(cfg.n_paths), [&](std::size_t p) {
    RngStream rng(cfg.seed, cfg.stream_offset + p);
    // Base path and clock knots, grown segment by segment.
    std::vector<double> u_knots{0.0};
    std::vector<double> x_states{x0(0)};
    std::vector<double> A_vals{0.0};
    enum { running, reached, exploded_flag, censored } status = running;
    double t_exploded = 0.0;
    double h = horizon;
    while (status == running) {
      auto n_new = static_cast<Eigen::Index>(
          std::llround((h - u_knots.back()) / dt));
      Mat inc = sample_increments(base, dt, static_cast<int>(n_new), rng);
      for (Eigen::Index k = 0; k < n_new && status == running; ++k) {
        double x_prev = x_states.back();
        double a_next =
            A_vals.back() + dt * checked_inverse_phi(phi, scalar_vec(x_prev));
        double x_next = x_prev + inc(k, 0);
        u_knots.push_back(u_knots.back() + dt);
        x_states.push_back(x_next);
        A_vals.push_back(a_next);
        if (a_next >= horizon)
          status = reached;
        else if (std::abs(x_next - x0(0)) > cfg.escape_radius) {
          // Y leaves B(x0, escape_radius) when the clock reaches this knot.
          status = exploded_flag;
          t_exploded = a_next;
        }
      }
      if (status == running) {
        if (h >= cap) {
          status = censored;
          ++censored_count;
        } else {
          h = std::min(2.0 * h, cap);
        }
      }
    }

    // Time-change onto the uniform output grid of step dt.
    ClockResult clock;
    clock.knot_times = std::move(u_knots);
    clock.A_values = std::move(A_vals);
    PathSkeleton y;
    std::vector<double> times;
    std::vector<double> ystates;
    auto n_out = static_cast<Eigen::Index>(std::llround(horizon / dt));
    for (Eigen::Index k = 0; k <= n_out; ++k) {
      double t = static_cast<double>(k) * dt;
      if (t > horizon) break;
      if (status == exploded_flag && t >= t_exploded) break;
      auto a = inverse_clock(clock, t);
      if (!a) break;  // censored path: clock cannot reach t
      times.push_back(t);
      ystates.push_back(x_states[knot_before(clock.knot_times, *a)]);
    }
    y.times = std::move(times);
    y.states.resize(static_cast<Eigen::Index>(ystates.size()), 1);
    for (std::size_t i = 0; i < ystates.size(); ++i)
      y.states(static_cast<Eigen::Index>(i), 0) = ystates[i];
    y.exploded = (status == exploded_flag);
    if (y.exploded) y.explosion_time = t_exploded;
    y.horizon_censored = (status == censored);
    y.stream_id = cfg.stream_offset + p;
    out[p] = std::move(y);
  });

  if (2 * censored_count.load() > cfg.n_paths)
    throw BudgetError("clock horizon unreachable for more than half the paths");
  return out;
}

}  // namespace forge
