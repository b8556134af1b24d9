#ifndef FORGE_RNG_HPP
#define FORGE_RNG_HPP

#include <cmath>
#include <cstdint>

namespace forge {

namespace detail {
// 64-bit finalizer (splitmix64 / Stafford mix13).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Counter-based random stream: the n-th output is a pure function of
// (seed, stream_id, n), so substreams can be handed to worker threads and
// the produced sequences do not depend on scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : key_(detail::mix64(seed ^ detail::mix64(stream_id * 0xda942042e4dd58b5ULL))),
        seed_(seed),
        stream_id_(stream_id),
        counter_(0) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() {
    std::uint64_t v = detail::mix64(key_ ^ (counter_ * 0x9e3779b97f4a7c15ULL));
    ++counter_;
    return detail::mix64(v + counter_);
  }

  // Uniform on (0,1); never returns 0 or 1, so logs are safe.
  double uniform() {
    double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double exponential() { return -std::log(uniform()); }

  // Box-Muller; consumes two uniforms per pair, second value cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  std::uint64_t poisson(double mean) {
    // Inversion by sequential search for small means, normal tail guard
    // for large ones (means here are path-step jump counts, O(1..100)).
    if (mean <= 0.0) return 0;
    if (mean < 30.0) {
      double p = std::exp(-mean);
      double cdf = p;
      double u = uniform();
      std::uint64_t k = 0;
      while (u > cdf && k < 10000) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
      }
      return k;
    }
    double v = mean + std::sqrt(mean) * normal() + 0.5;
    return v < 0.0 ? 0 : static_cast<std::uint64_t>(v);
  }

 private:
  std::uint64_t key_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace forge

#endif
