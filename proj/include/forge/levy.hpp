#ifndef FORGE_LEVY_HPP
#define FORGE_LEVY_HPP

#include <functional>
#include <optional>
#include <vector>

#include "forge/quadrature.hpp"
#include "forge/rng.hpp"
#include "forge/types.hpp"

namespace forge {

// Levy triplet (b, Q, nu) with the jump measure given by a density y -> n(y)
// on R^d \ {0}. The declared tail exponent beta bounds n(y) <= C|y|^{-d-beta}
// outside the unit ball; the small-jump exponent plays the same role near 0.
struct LevyTriplet {
  Vec drift;      // b
  Mat diffusion;  // Q, symmetric PSD
  std::function<double(const Vec&)> jump_density;  // null means no jumps
  double tail_exponent = 2.0;
  double small_jump_exponent = 2.0;

  int dim() const { return static_cast<int>(drift.size()); }
  bool has_jumps() const { return static_cast<bool>(jump_density); }
  double density(double y) const;  // d=1 convenience

  // Q = Q^T with nonnegative eigenvalues, plus the numeric integrability
  // check \int min(|y|^2,1) n(y) dy < infty (d <= 2).
  void validate() const;

  static LevyTriplet pure_drift(const Vec& b);
  static LevyTriplet pure_diffusion(const Mat& Q);
  // n(y) = c_alpha |y|^{-1-alpha} normalized so that psi(xi) = |xi|^alpha (d=1).
  static LevyTriplet stable_1d(double alpha);
};

enum class ExponentFamily {
  isotropic_stable,
  relativistic_stable,
  truncated_stable,
  homographic,
  generic,
};

// A characteristic exponent psi(xi): closed-form builtin family or a generic
// Levy triplet evaluated through the Levy-Khintchine formula.
struct ExponentSpec {
  ExponentFamily family = ExponentFamily::isotropic_stable;
  int dim = 1;
  double alpha = 2.0;   // stable families
  double mass = 0.0;    // m, relativistic / truncated
  double lambda = 0.0;  // homographic
  std::optional<LevyTriplet> triplet;

  static ExponentSpec isotropic_stable(double alpha, int dim = 1);
  static ExponentSpec relativistic_stable(double alpha, double m, int dim = 1);
  static ExponentSpec truncated_stable(double alpha, double m);  // d=1
  static ExponentSpec homographic(double lambda, int dim = 1);
  static ExponentSpec generic(LevyTriplet triplet);

  void validate() const;
};

// psi(xi); closed form for builtin families, Levy-Khintchine quadrature for
// generic triplets. psi(0) = 0 exactly for every family.
Complex evaluate_exponent(const ExponentSpec& spec, const Vec& xi);
Complex evaluate_exponent(const ExponentSpec& spec, double xi);

struct LKResult {
  Complex value;
  double error = 0.0;
};

// -i b.xi + 1/2 xi.Q xi + \int (1 - e^{iy.xi} + i y.xi 1_{(0,1)}(|y|)) n(y) dy
// with adaptive panels split at the radii where the integrand changes
// character. d = 1 or 2.
LKResult levy_khintchine(const LevyTriplet& triplet, const Vec& xi,
                         const QuadratureConfig& quad = {});

// exp(-t psi(xi)): the oracle every sampler is tested against.
Complex transition_cf_reference(const ExponentSpec& spec, double t,
                                const Vec& xi);
Complex transition_cf_reference(const ExponentSpec& spec, double t, double xi);

// Normalization c_alpha with \int (1-cos(y xi)) c_alpha |y|^{-1-alpha} dy
// = |xi|^alpha (d=1).
double stable_density_normalization(double alpha);

// Standard symmetric alpha-stable with CF exp(-|xi|^alpha) (d=1).
double sample_symmetric_stable(double alpha, RngStream& rng);
// One-sided stable with Laplace transform exp(-u^alpha), alpha in (0,1).
double sample_onesided_stable(double alpha, RngStream& rng);

// n i.i.d. samples of L_t, one row per sample. Exact for the builtin
// families; generic 1-d triplets use compound Poisson above a small-jump
// cutoff plus Gaussian substitution of the compensated small jumps.
Mat sample_increments(const ExponentSpec& spec, double t, int n,
                      RngStream& rng);

// Precomputed sampler state for generic 1-d triplets (cutoff, jump table,
// compensated drift); exposed so tests can inspect the chosen cutoff.
class GenericSampler {
 public:
  GenericSampler(const LevyTriplet& triplet, const QuadratureConfig& quad = {});
  double sample(double t, RngStream& rng) const;
  double cutoff() const { return cutoff_; }
  double jump_rate() const { return jump_rate_; }
  double small_jump_variance() const { return small_jump_var_; }

 private:
  double draw_jump(RngStream& rng) const;
  double drift_ = 0.0;            // b minus compensator of (cutoff,1) jumps
  double gauss_var_ = 0.0;        // Q + substituted small-jump variance
  double small_jump_var_ = 0.0;   // per unit time
  double cutoff_ = 0.0;           // epsilon
  double jump_rate_ = 0.0;        // nu(|y| > epsilon)
  std::vector<double> jump_cdf_;  // inverse-CDF table over jump_grid_
  std::vector<double> jump_grid_;
};

}  // namespace forge

#endif
