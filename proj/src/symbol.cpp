#include "forge/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace forge {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Descending C^1 cubic on [1,2]: 1 at r=1, 0 at r=2, zero slope at both ends.
double cubic_cutoff(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double u = r - 1.0;
  return 1.0 - u * u * (3.0 - 2.0 * u);
}

// One-sided jump integrals for a frozen 1-d density. `side` = +1 or -1.
double half_line_integral(const std::function<double(const Vec&)>& n1,
                          double side, double a, double b,
                          const std::function<double(double)>& weight,
                          const QuadratureConfig& quad) {
  std::function<double(double)> g = [&](double y) {
    return weight(y) * n1(scalar_vec(side * y));
  };
  if (std::isinf(b)) return integrate_to_infinity<double>(g, a, quad).value;
  if (!(a < b)) return 0.0;
  // log-spaced interior breakpoints keep power-law densities cheap
  std::vector<double> bp;
  bp.push_back(a);
  for (double t = a; t * 4.0 < b; t *= 4.0) bp.push_back(t * 4.0);
  bp.push_back(b);
  return integrate_panels<double>(g, bp, quad).value;
}

// nu(x, {|y| > R}) for a frozen density.
double tail_mass_1d(const std::function<double(const Vec&)>& n1, double R,
                    const QuadratureConfig& quad) {
  auto one = [](double) { return 1.0; };
  return half_line_integral(n1, +1.0, R, INFINITY, one, quad) +
         half_line_integral(n1, -1.0, R, INFINITY, one, quad);
}

// \int_{|y| <= r} |y|^2 nu(x,dy), with an analytic head below the smallest
// panel point assuming n ~ c |y|^{-1-beta} there.
double small_second_moment_1d(const std::function<double(const Vec&)>& n1,
                              double r, double beta,
                              const QuadratureConfig& quad) {
  const double a = std::min(r, 1.0) * 1e-10;
  auto w = [](double y) { return y * y; };
  double v = half_line_integral(n1, +1.0, a, r, w, quad) +
             half_line_integral(n1, -1.0, a, r, w, quad);
  if (beta < 2.0) {
    double head = (n1(scalar_vec(a)) + n1(scalar_vec(-a))) * a * a * a /
                  (2.0 - beta);
    if (std::isfinite(head)) v += head;
  }
  return v;
}

// \int_{a < |y| < b} |y| nu(x,dy).
double first_moment_band_1d(const std::function<double(const Vec&)>& n1,
                            double a, double b, const QuadratureConfig& quad) {
  auto w = [](double y) { return y; };
  return half_line_integral(n1, +1.0, a, b, w, quad) +
         half_line_integral(n1, -1.0, a, b, w, quad);
}

std::function<double(const Vec&)> frozen_density(
    const StateCharacteristics& chars, const Vec& x) {
  auto nd = chars.jump_density;
  Vec xv = x;
  return [nd, xv](const Vec& y) { return nd(xv, y); };
}

}  // namespace

// ---------------------------------------------------------------------------
// CutoffSpec

CutoffSpec CutoffSpec::standard() {
  CutoffSpec c;
  c.chi = cubic_cutoff;
  c.R = [](const Vec& x) { return std::max(2.0, x.norm() / 2.0); };
  return c;
}

CutoffSpec CutoffSpec::with_radius(double R_const) {
  if (!(R_const >= 1.0)) throw ParameterError("truncation radius must be >= 1");
  CutoffSpec c = standard();
  c.R = [R_const](const Vec&) { return R_const; };
  return c;
}

CutoffSpec CutoffSpec::with_radius(std::function<double(const Vec&)> R) {
  CutoffSpec c = standard();
  c.R = std::move(R);
  return c;
}

double CutoffSpec::chi_at(const Vec& y, double Rx) const {
  return chi(y.norm() / Rx);
}

void CutoffSpec::validate() const {
  if (!chi || !R) throw ParameterError("cutoff requires chi and R callables");
  for (int i = 0; i <= 60; ++i) {
    double r = 3.0 * i / 60.0;
    double v = chi(r);
    if (v < -1e-12 || v > 1.0 + 1e-12)
      throw ParameterError("cutoff chi must take values in [0,1]");
    if (r <= 1.0 && v < 1.0 - 1e-12)
      throw ParameterError("cutoff chi must be 1 on B(0,1)");
    if (r >= 2.0 && v > 1e-12)
      throw ParameterError("cutoff chi must vanish outside B(0,2)");
  }
  for (double x : {0.0, 1.0, -3.0, 50.0, -1e4}) {
    if (!(R(scalar_vec(x)) >= 1.0))
      throw ParameterError("truncation radius R(x) must be >= 1");
  }
}

// ---------------------------------------------------------------------------
// StateCharacteristics

LevyTriplet StateCharacteristics::at(const Vec& x) const {
  LevyTriplet t;
  t.drift = drift ? drift(x) : Vec::Zero(dim);
  t.diffusion = diffusion ? diffusion(x) : Mat::Zero(dim, dim);
  if (jump_density) t.jump_density = frozen_density(*this, x);
  t.tail_exponent = tail_exponent ? tail_exponent(x) : 2.0;
  t.small_jump_exponent = small_jump_exponent;
  return t;
}

StateCharacteristics StateCharacteristics::from_triplet(
    const LevyTriplet& triplet) {
  StateCharacteristics c;
  c.dim = triplet.dim();
  Vec b = triplet.drift;
  Mat Q = triplet.diffusion;
  c.drift = [b](const Vec&) { return b; };
  c.diffusion = [Q](const Vec&) { return Q; };
  if (triplet.has_jumps()) {
    auto nd = triplet.jump_density;
    c.jump_density = [nd](const Vec&, const Vec& y) { return nd(y); };
  }
  double beta = triplet.tail_exponent;
  c.tail_exponent = [beta](const Vec&) { return beta; };
  c.small_jump_exponent = triplet.small_jump_exponent;
  return c;
}

StateCharacteristics StateCharacteristics::from_spec(const ExponentSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case ExponentFamily::isotropic_stable: {
      if (spec.dim != 1)
        throw CapabilityError(
            "explicit stable characteristics are implemented for d = 1");
      if (spec.alpha == 2.0)
        return from_triplet(
            LevyTriplet::pure_diffusion(2.0 * Mat::Identity(1, 1)));
      return from_triplet(LevyTriplet::stable_1d(spec.alpha));
    }
    case ExponentFamily::homographic: {
      if (spec.dim != 1)
        throw CapabilityError(
            "explicit homographic characteristics are implemented for d = 1");
      // Compound Poisson with unit rate and Laplace jumps: the CF of the
      // jump law is 1/(1 + lambda xi^2), so psi = lambda xi^2/(1+lambda xi^2).
      const double s = std::sqrt(spec.lambda);
      LevyTriplet t;
      t.drift = Vec::Zero(1);
      t.diffusion = Mat::Zero(1, 1);
      t.jump_density = [s](const Vec& y) {
        return std::exp(-std::abs(y(0)) / s) / (2.0 * s);
      };
      t.tail_exponent = 2.0;
      t.small_jump_exponent = 0.0;
      return from_triplet(t);
    }
    case ExponentFamily::generic:
      return from_triplet(*spec.triplet);
    default:
      throw CapabilityError(
          "no closed-form jump density available for this exponent family");
  }
}

// ---------------------------------------------------------------------------
// StateSymbol

StateSymbol::StateSymbol(StateCoefficient phi, ExponentSpec base) {
  base.validate();
  dim_ = base.dim;
  terms_.push_back({std::move(phi), Base(std::move(base))});
  check_invariants();
}

StateSymbol::StateSymbol(StateCoefficient phi, StateCharacteristics base) {
  dim_ = base.dim;
  terms_.push_back({std::move(phi), Base(std::move(base))});
  check_invariants();
}

void StateSymbol::add_term(StateCoefficient phi, ExponentSpec base) {
  base.validate();
  if (base.dim != dim_) throw ParameterError("symbol terms must share dim");
  terms_.push_back({std::move(phi), Base(std::move(base))});
  check_invariants();
}

void StateSymbol::add_term(StateCoefficient phi, StateCharacteristics base) {
  if (base.dim != dim_) throw ParameterError("symbol terms must share dim");
  terms_.push_back({std::move(phi), Base(std::move(base))});
  check_invariants();
}

bool StateSymbol::has_explicit_jumps() const {
  for (const auto& term : terms_) {
    if (std::holds_alternative<ExponentSpec>(term.base)) {
      const auto& spec = std::get<ExponentSpec>(term.base);
      // Families convertible by from_spec have explicit jumps.
      switch (spec.family) {
        case ExponentFamily::isotropic_stable:
        case ExponentFamily::homographic:
        case ExponentFamily::generic:
          break;
        default:
          return false;
      }
    }
  }
  return true;
}

Complex StateSymbol::base_value(const Vec& x, const Vec& xi,
                                const QuadratureConfig& quad) const {
  Complex q(0.0, 0.0);
  for (const auto& term : terms_) {
    if (std::holds_alternative<ExponentSpec>(term.base)) {
      q += evaluate_exponent(std::get<ExponentSpec>(term.base), xi);
    } else {
      q += levy_khintchine(std::get<StateCharacteristics>(term.base).at(x), xi,
                           quad)
               .value;
    }
  }
  return q;
}

void StateSymbol::check_invariants() const {
  const Vec zero = Vec::Zero(dim_);
  for (double s : {0.0, 1.0, -1.0, 10.0}) {
    Vec x = Vec::Constant(dim_, s);
    Complex q0 = base_value(x, zero);
    if (std::abs(q0) > 1e-10)
      throw ParameterError("state symbols require q(x,0) = 0 for all x");
  }
}

Complex evaluate_symbol(const StateSymbol& sym, const Vec& x, const Vec& xi,
                        const QuadratureConfig& quad) {
  Complex p(0.0, 0.0);
  for (const auto& term : sym.terms()) {
    Complex q;
    if (std::holds_alternative<ExponentSpec>(term.base)) {
      q = evaluate_exponent(std::get<ExponentSpec>(term.base), xi);
    } else {
      q = levy_khintchine(std::get<StateCharacteristics>(term.base).at(x), xi,
                          quad)
              .value;
    }
    p += term.phi(x) * q;
  }
  return p;
}

Complex evaluate_symbol(const StateSymbol& sym, double x, double xi,
                        const QuadratureConfig& quad) {
  return evaluate_symbol(sym, scalar_vec(x), scalar_vec(xi), quad);
}

// ---------------------------------------------------------------------------
// Truncation and perturbation

StateSymbol truncate_symbol(const StateSymbol& sym, const CutoffSpec& cutoff) {
  cutoff.validate();
  if (!sym.has_explicit_jumps())
    throw CapabilityError(
        "truncation requires an explicit jump density for every term");
  std::optional<StateSymbol> out;
  for (const auto& term : sym.terms()) {
    StateCharacteristics chars =
        std::holds_alternative<ExponentSpec>(term.base)
            ? StateCharacteristics::from_spec(std::get<ExponentSpec>(term.base))
            : std::get<StateCharacteristics>(term.base);
    if (chars.has_jumps()) {
      auto nd = chars.jump_density;
      auto chi = cutoff.chi;
      auto R = cutoff.R;
      chars.jump_density = [nd, chi, R](const Vec& x, const Vec& y) {
        return nd(x, y) * chi(y.norm() / R(x));
      };
    }
    if (!out)
      out.emplace(term.phi, chars);
    else
      out->add_term(term.phi, chars);
  }
  return *out;
}

double perturbation_apply(const StateSymbol& sym, const CutoffSpec& cutoff,
                          const std::function<double(double)>& f,
                          double support_radius, double x,
                          const QuadratureConfig& quad) {
  if (sym.dim() != 1)
    throw CapabilityError("perturbation_apply is implemented for d = 1");
  if (!(support_radius > 0.0))
    throw ParameterError("test function support radius must be positive");
  if (!sym.has_explicit_jumps())
    throw CapabilityError(
        "perturbation requires an explicit jump density for every term");
  cutoff.validate();
  const Vec xv = scalar_vec(x);
  const double R = cutoff.R(xv);
  const double fx = f(x);
  double total = 0.0;
  for (const auto& term : sym.terms()) {
    StateCharacteristics chars =
        std::holds_alternative<ExponentSpec>(term.base)
            ? StateCharacteristics::from_spec(std::get<ExponentSpec>(term.base))
            : std::get<StateCharacteristics>(term.base);
    if (!chars.has_jumps()) continue;
    auto n1 = frozen_density(chars, xv);
    auto chi = cutoff.chi;
    // \int_{|y| > R} (1-chi(|y|/R))(f(x+y) - f(x)) n(x,y) dy, one half-line
    // at a time; breakpoints at 2R (cutoff kink) and the edges of f's
    // declared support keep the adaptive panels aligned with the integrand.
    double part = 0.0;
    for (double side : {+1.0, -1.0}) {
      std::function<double(double)> g = [&](double y) {
        double w = 1.0 - chi(y / R);
        if (w == 0.0) return 0.0;
        return w * (f(x + side * y) - fx) * n1(scalar_vec(side * y));
      };
      std::vector<double> bp = {R, 2.0 * R};
      for (double e : {side * (-x - support_radius), side * (-x + support_radius)})
        if (e > R) bp.push_back(e);
      std::sort(bp.begin(), bp.end());
      double far = std::max(bp.back(), 2.0 * R);
      bp.push_back(far * 2.0);
      part += integrate_panels<double>(g, bp, quad).value;
      part += integrate_to_infinity<double>(g, bp.back(), quad).value;
    }
    total += term.phi(xv) * part;
  }
  return total;
}

double perturbation_tail_mass(const StateSymbol& sym, double R, double x,
                              const QuadratureConfig& quad) {
  if (sym.dim() != 1)
    throw CapabilityError("perturbation_tail_mass is implemented for d = 1");
  const Vec xv = scalar_vec(x);
  double total = 0.0;
  for (const auto& term : sym.terms()) {
    StateCharacteristics chars =
        std::holds_alternative<ExponentSpec>(term.base)
            ? StateCharacteristics::from_spec(std::get<ExponentSpec>(term.base))
            : std::get<StateCharacteristics>(term.base);
    if (!chars.has_jumps()) continue;
    total += term.phi(xv) * tail_mass_1d(frozen_density(chars, xv), R, quad);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Generator application

namespace {

// Half-width with |f| tail mass below 1e-10 (coarse Riemann estimate).
double auto_extent(const std::function<double(double)>& f) {
  double L = 16.0;
  for (; L <= 1048576.0; L *= 2.0) {
    double tail = 0.0;
    const double h = L / 32.0;
    for (int j = 0; j < 160; ++j) {
      double y = L + (j + 0.5) * h;
      tail += h * (std::abs(f(y)) + std::abs(f(-y)));
    }
    if (tail < 1e-10) return L;
  }
  throw AccuracyError("test function tail mass does not decay", 1.0);
}

}  // namespace

double apply_generator(const StateSymbol& sym,
                       const std::function<double(double)>& f, double x,
                       const QuadratureConfig& quad, const GeneratorGrid& grid) {
  if (sym.dim() != 1)
    throw CapabilityError("apply_generator is implemented for d = 1");
  if (grid.log2_n < 4 || grid.log2_n > 22)
    throw ParameterError("generator grid log2_n out of range");
  const int N = 1 << grid.log2_n;
  const double L = grid.extent > 0.0 ? grid.extent : auto_extent(f);
  const double h = 2.0 * L / N;
  const double dxi = kPi / L;

  std::vector<Complex> samples(N), coarse(N / 2);
  for (int j = 0; j < N; ++j) samples[j] = Complex(f(-L + j * h), 0.0);
  for (int j = 0; j < N / 2; ++j) coarse[j] = samples[2 * j];

  Eigen::FFT<double> fft;
  std::vector<Complex> F(N), F2(N / 2);
  fft.fwd(F, samples);
  fft.fwd(F2, coarse);

  // fhat(xi_m) = (h/2pi) e^{i xi_m L} F_k with xi_m = m dxi; symbol values
  // are shared between the fine sum (|m| <= N/2) and the coarse aliasing
  // estimate (|m| <= N/4, fhat from the subsampled grid).
  std::vector<Complex> p(N / 2 + 1);
  for (int m = 0; m <= N / 2; ++m)
    p[m] = evaluate_symbol(sym, x, m * dxi, quad);

  auto fhat_fine = [&](int m) {  // m in [-N/2, N/2); F index mod N
    int k = m >= 0 ? m : m + N;
    double phase = m * dxi * L;
    return (h / (2.0 * kPi)) * std::polar(1.0, phase) * F[k];
  };
  auto fhat_coarse = [&](int m) {  // m in [-N/4, N/4)
    int k = m >= 0 ? m : m + N / 2;
    double phase = m * dxi * L;
    return (2.0 * h / (2.0 * kPi)) * std::polar(1.0, phase) * F2[k];
  };

  auto accumulate = [&](int half, const std::function<Complex(int)>& fhat) {
    // f real: the -m term is the conjugate of the +m term.
    double acc = (p[0] * fhat(0)).real();
    for (int m = 1; m < half; ++m)
      acc += 2.0 * (std::polar(1.0, x * m * dxi) * p[m] * fhat(m)).real();
    acc += (std::polar(1.0, -x * half * dxi) * std::conj(p[half]) *
            fhat(-half))
               .real();
    return -dxi * acc;
  };

  double fine = accumulate(N / 2, fhat_fine);
  double rough = accumulate(N / 4, fhat_coarse);
  double err = std::abs(fine - rough);
  if (err > grid.aliasing_tol * (1.0 + std::abs(fine)))
    throw AccuracyError("generator transform grid too coarse", err);
  return fine;
}

// ---------------------------------------------------------------------------
// Standard symbol bound

double symbol_standard_bound(const StateSymbol& sym, const Vec& x,
                             const Vec& xi, double R,
                             const QuadratureConfig& quad) {
  if (sym.dim() != 1)
    throw CapabilityError("symbol_standard_bound is implemented for d = 1");
  const double axi = xi.norm();
  double bound = 0.0;
  for (const auto& term : sym.terms()) {
    StateCharacteristics chars =
        std::holds_alternative<ExponentSpec>(term.base)
            ? StateCharacteristics::from_spec(std::get<ExponentSpec>(term.base))
            : std::get<StateCharacteristics>(term.base);
    LevyTriplet t = chars.at(x);
    double piece = t.drift.norm() * axi +
                   0.5 * t.diffusion.norm() * axi * axi;
    if (t.has_jumps()) {
      auto n1 = frozen_density(chars, x);
      double beta = chars.small_jump_exponent;
      piece += 0.5 * axi * axi * small_second_moment_1d(n1, 1.0, beta, quad);
      if (R > 1.0) piece += axi * first_moment_band_1d(n1, 1.0, R, quad);
      piece += 2.0 * tail_mass_1d(n1, std::min(1.0, R), quad);
    }
    bound += term.phi(x) * piece;
  }
  return bound;
}

// ---------------------------------------------------------------------------
// Frozen-x jump integrals

namespace {

void require_1d(const StateCharacteristics& chars) {
  if (chars.dim != 1)
    throw CapabilityError("jump integrals are implemented for d = 1");
}

}  // namespace

double jump_tail_mass(const StateCharacteristics& chars, const Vec& x,
                      double R, const QuadratureConfig& quad) {
  require_1d(chars);
  if (!chars.has_jumps()) return 0.0;
  return tail_mass_1d(frozen_density(chars, x), R, quad);
}

double jump_second_moment(const StateCharacteristics& chars, const Vec& x,
                          double r, const QuadratureConfig& quad) {
  require_1d(chars);
  if (!chars.has_jumps()) return 0.0;
  return small_second_moment_1d(frozen_density(chars, x), r,
                                chars.small_jump_exponent, quad);
}

double jump_first_moment_band(const StateCharacteristics& chars, const Vec& x,
                              double a, double b,
                              const QuadratureConfig& quad) {
  require_1d(chars);
  if (!chars.has_jumps() || !(a < b)) return 0.0;
  return first_moment_band_1d(frozen_density(chars, x), a, b, quad);
}

double jump_signed_band(const StateCharacteristics& chars, const Vec& x,
                        double a, double b, const QuadratureConfig& quad) {
  require_1d(chars);
  if (!chars.has_jumps() || !(a < b)) return 0.0;
  auto n1 = frozen_density(chars, x);
  auto w = [](double y) { return y; };
  return half_line_integral(n1, +1.0, a, b, w, quad) -
         half_line_integral(n1, -1.0, a, b, w, quad);
}

double jump_ball_mass(const StateCharacteristics& chars, const Vec& x,
                      double center, double r, const QuadratureConfig& quad) {
  require_1d(chars);
  if (!chars.has_jumps()) return 0.0;
  if (std::abs(center) <= r)
    throw DomainError("jump ball mass requires a ball away from the origin");
  auto n1 = frozen_density(chars, x);
  std::function<double(double)> g = [&](double y) {
    return n1(scalar_vec(y));
  };
  return integrate_panels<double>(
             g, {center - r, center - 0.5 * r, center + 0.5 * r, center + r},
             quad)
      .value;
}

// ---------------------------------------------------------------------------
// Continuity probes

namespace {

// Radial C^1 bump supported on [r/2, 3r/2].
std::function<double(double)> radial_bump(double r) {
  return [r](double s) {
    double u = (s - r) / (0.5 * r);
    if (std::abs(u) >= 1.0) return 0.0;
    double w = 1.0 - u * u;
    return w * w;
  };
}

double bump_integral(const StateCharacteristics& chars, const Vec& x, double r,
                     const QuadratureConfig& quad) {
  auto n1 = frozen_density(chars, x);
  auto bump = radial_bump(r);
  auto w = [&bump](double y) { return bump(y); };
  return half_line_integral(n1, +1.0, 0.5 * r, 1.5 * r, w, quad) +
         half_line_integral(n1, -1.0, 0.5 * r, 1.5 * r, w, quad);
}

Verdict vanishing_verdict(const std::vector<TracePoint>& trace, double tol) {
  return trace_verdict_vanishing(trace, tol);
}

}  // namespace

ConditionReport continuity_probe(const StateCharacteristics& chars, double lo,
                                 double hi, const ProbeGrids& grids) {
  if (chars.dim != 1)
    throw CapabilityError("continuity_probe is implemented for d = 1");
  if (!(lo < hi)) throw ParameterError("probe box is empty");
  grids.validate();
  QuadratureConfig quad;
  quad.rel_tol = 1e-6;

  ConditionReport report;
  report.condition_id = "appen1.iii";

  auto drift_at = [&](double x) {
    return chars.drift ? chars.drift(scalar_vec(x)) : Vec::Zero(1);
  };
  auto diffusion_at = [&](double x) {
    return chars.diffusion ? chars.diffusion(scalar_vec(x)) : Mat::Zero(1, 1);
  };

  // (a) modulus of continuity of b on refining grids
  ConditionReport a;
  a.condition_id = "appen1.iii.a";
  double b_scale = 0.0;
  for (int n : {8, 16, 32, 64, 128, 256, 512}) {
    double h = (hi - lo) / n;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      Vec d = drift_at(lo + (i + 1) * h) - drift_at(lo + i * h);
      worst = std::max(worst, d.norm());
      b_scale = std::max(b_scale, drift_at(lo + i * h).norm());
    }
    a.trace.push_back({h, worst});
  }
  a.tolerance = 1e-2 * (1.0 + b_scale);
  a.verdict = vanishing_verdict(a.trace, a.tolerance);
  report.subreports.push_back(a);

  // (b) vague continuity of nu against the radial bump panel
  ConditionReport b;
  b.condition_id = "appen1.iii.b";
  if (chars.has_jumps()) {
    std::vector<double> radii;
    for (int i = 0; i < 8; ++i)
      radii.push_back(std::pow(10.0, -2.0 + 4.0 * i / 7.0));
    double scale = 0.0;
    for (int n : {4, 8, 16, 32, 64}) {
      double h = (hi - lo) / n;
      double worst = 0.0;
      for (int i = 0; i < n; ++i) {
        double x0 = lo + i * h, x1 = lo + (i + 1) * h;
        for (double r : radii) {
          double v0 = bump_integral(chars, scalar_vec(x0), r, quad);
          double v1 = bump_integral(chars, scalar_vec(x1), r, quad);
          worst = std::max(worst, std::abs(v1 - v0));
          scale = std::max(scale, std::abs(v0));
        }
      }
      b.trace.push_back({h, worst});
    }
    b.tolerance = 1e-2 * (1.0 + scale);
    b.verdict = vanishing_verdict(b.trace, b.tolerance);
  } else {
    b.verdict = Verdict::pass;
    b.notes = "no jump part; vague continuity holds trivially";
  }
  report.subreports.push_back(b);

  // x grid for the uniform-in-K sups
  std::vector<double> xs;
  for (int i = 0; i <= 16; ++i) xs.push_back(lo + (hi - lo) * i / 16.0);

  // (c) sup_x nu(x, B(0,R)^c) decreasing along the R grid
  ConditionReport c;
  c.condition_id = "appen1.iii.c";
  if (chars.has_jumps()) {
    for (double R : grids.R_grid) {
      double worst = 0.0;
      for (double x : xs)
        worst = std::max(
            worst, tail_mass_1d(frozen_density(chars, scalar_vec(x)), R, quad));
      c.trace.push_back({R, worst});
    }
    c.tolerance = 1e-2;
    c.verdict = vanishing_verdict(c.trace, c.tolerance);
  } else {
    c.verdict = Verdict::pass;
    c.notes = "no jump part; tails vanish identically";
  }
  report.subreports.push_back(c);

  // (d) sup_x \int_{|y| <= r} |y|^2 nu(x,dy) decreasing as r -> 0
  ConditionReport d;
  d.condition_id = "appen1.iii.d";
  if (chars.has_jumps()) {
    for (int i = 0; i < 13; ++i) {
      double r = std::pow(10.0, -0.5 * i);  // 1 down to 1e-6
      double worst = 0.0;
      for (double x : xs) {
        double beta = chars.small_jump_exponent;
        worst = std::max(
            worst, small_second_moment_1d(frozen_density(chars, scalar_vec(x)),
                                          r, beta, quad));
      }
      d.trace.push_back({r, worst});
    }
    d.tolerance = 1e-2;
    d.verdict = vanishing_verdict(d.trace, d.tolerance);
  } else {
    d.verdict = Verdict::pass;
    d.notes = "no jump part; small-jump moments vanish identically";
  }
  report.subreports.push_back(d);

  report.verdict = combine_verdicts(report.subreports);

  // Diffusion continuity is diagnostic only (never folded into the verdict):
  // the appendix equivalences cover (iii)(a)-(c) when Q does not vanish.
  double q_jump = 0.0;
  {
    int n = 512;
    double h = (hi - lo) / n;
    for (int i = 0; i < n; ++i)
      q_jump = std::max(
          q_jump, (diffusion_at(lo + (i + 1) * h) - diffusion_at(lo + i * h))
                      .norm());
  }
  std::ostringstream note;
  note << "Q diagnostic: max adjacent |Q(x)-Q(x')| at finest spacing = "
       << q_jump << (q_jump > 1e-2 ? " (possible Q discontinuity)" : "");
  report.notes = note.str();
  return report;
}

}  // namespace forge
