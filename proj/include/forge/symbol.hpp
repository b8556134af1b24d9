#ifndef FORGE_SYMBOL_HPP
#define FORGE_SYMBOL_HPP

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "forge/coefficient.hpp"
#include "forge/levy.hpp"
#include "forge/quadrature.hpp"
#include "forge/report.hpp"
#include "forge/types.hpp"

namespace forge {

// Radial cutoff chi (1 on [0,1], 0 on [2,inf)) and truncation radius map
// R: x -> [1,inf). The default chi is the C^1 cubic spline, which keeps the
// truncated jump integrands smooth for the quadrature.
struct CutoffSpec {
  std::function<double(double)> chi;       // radial profile chi(r)
  std::function<double(const Vec&)> R;     // truncation radius per state

  static CutoffSpec standard();            // cubic chi, R(x)=max{2,|x|/2}
  static CutoffSpec with_radius(double R_const);
  static CutoffSpec with_radius(std::function<double(const Vec&)> R);

  double chi_at(const Vec& y, double Rx) const;  // chi(|y|/Rx)
  // Probes the sandwich 1_{B(0,1)} <= chi <= 1_{B(0,2)} and R >= 1.
  void validate() const;
};

// State-dependent characteristics (b(x), Q(x), nu(x,dy)) given through
// callables, with a declared state-dependent tail exponent beta(x).
struct StateCharacteristics {
  int dim = 1;
  std::function<Vec(const Vec&)> drift;                      // b(x)
  std::function<Mat(const Vec&)> diffusion;                  // Q(x)
  std::function<double(const Vec&, const Vec&)> jump_density;  // n(x,y)
  std::function<double(const Vec&)> tail_exponent;           // beta(x)
  double small_jump_exponent = 2.0;

  bool has_jumps() const { return static_cast<bool>(jump_density); }
  // Frozen-x Levy triplet, used by the Levy-Khintchine evaluation.
  LevyTriplet at(const Vec& x) const;

  static StateCharacteristics from_triplet(const LevyTriplet& triplet);
  // Explicit characteristics of a builtin exponent; throws CapabilityError
  // for families whose jump density is not exposed in closed form.
  static StateCharacteristics from_spec(const ExponentSpec& spec);
};

// Symbol p(x,xi) = sum_i phi_i(x) q_i(x,xi); each base q_i is either an
// x-independent exponent or frozen-x characteristics. q_i(x,0) = 0 is probed
// at construction (states with killing are rejected).
class StateSymbol {
 public:
  using Base = std::variant<ExponentSpec, StateCharacteristics>;
  struct Term {
    StateCoefficient phi;
    Base base;
  };

  StateSymbol(StateCoefficient phi, ExponentSpec base);
  StateSymbol(StateCoefficient phi, StateCharacteristics base);

  // Second summand for decomposable sums phi1 q1 + phi2 q2.
  void add_term(StateCoefficient phi, ExponentSpec base);
  void add_term(StateCoefficient phi, StateCharacteristics base);

  const std::vector<Term>& terms() const { return terms_; }
  int dim() const { return dim_; }
  // True when every term has an explicit jump density representation.
  bool has_explicit_jumps() const;

  // q_i summed without the phi factors (x enters through frozen-x bases).
  Complex base_value(const Vec& x, const Vec& xi,
                     const QuadratureConfig& quad = {}) const;

 private:
  void check_invariants() const;
  std::vector<Term> terms_;
  int dim_ = 1;
};

// p(x,xi) = sum_i phi_i(x) q_i(x,xi).
Complex evaluate_symbol(const StateSymbol& sym, const Vec& x, const Vec& xi,
                        const QuadratureConfig& quad = {});
Complex evaluate_symbol(const StateSymbol& sym, double x, double xi,
                        const QuadratureConfig& quad = {});

// q_R: jump density n(x,y) chi(|y|/R(x)), same drift and diffusion.
// Requires explicit jump densities (CapabilityError otherwise).
StateSymbol truncate_symbol(const StateSymbol& sym, const CutoffSpec& cutoff);

// Pf(x) = sum_i phi_i(x) \int (1-chi(|y|/R(x)))(f(x+y)-f(x)) n_i(x,y) dy.
// f must be bounded with the declared support radius. d = 1.
double perturbation_apply(const StateSymbol& sym, const CutoffSpec& cutoff,
                          const std::function<double(double)>& f,
                          double support_radius, double x,
                          const QuadratureConfig& quad = {});

// Mass sum_i phi_i(x) nu_i(x, B(0,R)^c): the bound constant of the
// perturbation operator, |Pf(x)| <= 2 ||f||_inf * this.
double perturbation_tail_mass(const StateSymbol& sym, double R, double x,
                              const QuadratureConfig& quad = {});

// Transform grid controls for apply_generator. extent = 0 selects the
// smallest power-of-two-friendly half-width with |f| tail mass < 1e-10.
struct GeneratorGrid {
  int log2_n = 12;
  double extent = 0.0;
  double aliasing_tol = 1e-5;  // refinement-disagreement threshold
};

// Af(x) = -\int e^{i x xi} p(x,xi) fhat(xi) dxi via FFT on a uniform grid;
// throws AccuracyError when the coarse/fine grid disagreement exceeds the
// aliasing tolerance. d = 1.
double apply_generator(const StateSymbol& sym,
                       const std::function<double(double)>& f, double x,
                       const QuadratureConfig& quad = {},
                       const GeneratorGrid& grid = {});

// Quadrature upper bound |q(x,xi)| <= |b||xi| + 1/2|Q||xi|^2
//   + 1/2 |xi|^2 \int_{|y|<=1} |y|^2 nu + |xi| \int_{1<|y|<R} |y| nu
//   + 2 nu(|y| >= min(1,R)); used as a structural cross-check.
double symbol_standard_bound(const StateSymbol& sym, const Vec& x,
                             const Vec& xi, double R,
                             const QuadratureConfig& quad = {});

// Frozen-x jump integrals (d = 1), shared by the condition checks:
// nu(x, {|y| > R})
double jump_tail_mass(const StateCharacteristics& chars, const Vec& x,
                      double R, const QuadratureConfig& quad = {});
// \int_{|y| <= r} |y|^2 nu(x,dy)
double jump_second_moment(const StateCharacteristics& chars, const Vec& x,
                          double r, const QuadratureConfig& quad = {});
// \int_{a < |y| < b} |y| nu(x,dy)
double jump_first_moment_band(const StateCharacteristics& chars, const Vec& x,
                              double a, double b,
                              const QuadratureConfig& quad = {});
// \int_{a < |y| < b} y nu(x,dy)  (signed, the drift compensator band)
double jump_signed_band(const StateCharacteristics& chars, const Vec& x,
                        double a, double b, const QuadratureConfig& quad = {});
// nu(x, B(center, r)); the ball must not contain the origin.
double jump_ball_mass(const StateCharacteristics& chars, const Vec& x,
                      double center, double r,
                      const QuadratureConfig& quad = {});

// Numeric continuity probes for the characteristics on the box [lo,hi]^d:
// (a) drift modulus of continuity, (b) vague continuity of nu against a
// panel of radial bumps, (c) uniform tail decay, (d) uniform small-jump
// second moments. Diffusion continuity is reported in the notes only.
ConditionReport continuity_probe(const StateCharacteristics& chars, double lo,
                                 double hi, const ProbeGrids& grids);

}  // namespace forge

#endif
