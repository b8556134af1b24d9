#ifndef FORGE_PATH_HPP
#define FORGE_PATH_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "forge/types.hpp"

namespace forge {

// Piecewise-constant cadlag path skeleton: the state on [times[i], times[i+1])
// is states.row(i), and the last state extends past the final knot. A path
// that reached the cemetery carries the explosion flag and time; queries at
// t >= explosion_time return the cemetery marker (empty optional).
struct PathSkeleton {
  std::vector<double> times;  // strictly increasing, times[0] = 0
  Mat states;                 // one row per knot, d columns
  bool exploded = false;
  std::optional<double> explosion_time;
  bool horizon_censored = false;  // clock cap reached before the horizon
  std::uint64_t stream_id = 0;

  int dim() const { return static_cast<int>(states.cols()); }
  std::size_t size() const { return times.size(); }

  // Cadlag lookup; empty optional is the cemetery marker.
  std::optional<Vec> state_at(double t) const;

  // times[0] = 0, strict increase, matching lengths, d >= 1.
  void validate() const;
};

// Monte Carlo ensemble controls shared by the simulation engines.
struct MCConfig {
  int n_paths = 1;
  double dt = 0.0;  // 0 selects the per-family default step
  double horizon = 1.0;
  std::uint64_t seed = 0;
  double escape_radius = 1e8;
  // Diagnostic override: admit sigma(x) = 0 (frozen dispersion).
  bool allow_zero_coefficient = false;
  // First substream index: path p draws from RngStream(seed, stream_offset+p).
  // Lets callers simulate a large ensemble in memory-bounded batches with
  // results bitwise identical to one unbatched run. Not serialized.
  std::uint64_t stream_offset = 0;

  void validate() const;
  // Default step: 2^-10 * horizon for alpha >= 1, 2^-12 * horizon below.
  double resolved_dt(double alpha) const;
};

}  // namespace forge

#endif
