#include "forge/symbol.hpp"

#include <cmath>

#include "doctest.h"
#include "forge/levy.hpp"

using namespace forge;

namespace {

const double kPi = 3.14159265358979323846;

StateSymbol stable_symbol(double alpha, StateCoefficient phi) {
  return StateSymbol(std::move(phi), ExponentSpec::isotropic_stable(alpha));
}

double gauss(double y) { return std::exp(-y * y); }

}  // namespace

TEST_CASE("cutoff sandwich and radius") {
  auto c = CutoffSpec::standard();
  c.validate();
  CHECK(c.chi(0.5) == 1.0);
  CHECK(c.chi(1.0) == 1.0);
  CHECK(c.chi(2.0) == 0.0);
  CHECK(c.chi(1.5) == doctest::Approx(0.5));
  // C^1: slope vanishes at the junctions
  CHECK(std::abs(c.chi(1.0 + 1e-6) - 1.0) < 1e-10);
  CHECK(std::abs(c.chi(2.0 - 1e-6)) < 1e-10);
  CHECK(c.R(scalar_vec(0.0)) == 2.0);
  CHECK(c.R(scalar_vec(-10.0)) == 5.0);

  auto bad = CutoffSpec::standard();
  bad.chi = [](double) { return 0.5; };
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  auto bad_r = CutoffSpec::standard();
  bad_r.R = [](const Vec&) { return 0.5; };
  CHECK_THROWS_AS(bad_r.validate(), ParameterError);
  CHECK_THROWS_AS(CutoffSpec::with_radius(0.5), ParameterError);
}

TEST_CASE("symbol evaluation closed forms") {
  auto s = stable_symbol(1.5, StateCoefficient::constant(1.0));
  CHECK(evaluate_symbol(s, 3.7, 2.0).real() ==
        doctest::Approx(std::pow(2.0, 1.5)));
  CHECK(evaluate_symbol(s, 3.7, 2.0).imag() == doctest::Approx(0.0));

  // phi = |sigma|^alpha with sigma = 2, alpha = 1: p = 2 |xi|
  auto sigma = StateCoefficient::constant(2.0);
  auto p = StateSymbol(sigma.to_power(1.0), ExponentSpec::isotropic_stable(1.0));
  CHECK(evaluate_symbol(p, 0.0, 3.0).real() == doctest::Approx(6.0));

  // decomposable sum phi1 |xi|^beta + phi2 |xi|^alpha at x=0, xi=1
  auto two = StateSymbol(StateCoefficient::power(1.8),
                         ExponentSpec::isotropic_stable(1.8));
  two.add_term(StateCoefficient::power(0.7),
               ExponentSpec::isotropic_stable(0.7));
  CHECK(evaluate_symbol(two, 0.0, 1.0).real() == doctest::Approx(2.0));
  CHECK(two.terms().size() == 2);

  // p(x,0) = 0 and Hermitian symmetry on a probe grid
  for (double x : {-4.0, 0.0, 2.5}) {
    CHECK(std::abs(evaluate_symbol(two, x, 0.0)) == 0.0);
    for (double xi : {0.3, 1.7, 12.0}) {
      Complex a = evaluate_symbol(two, x, xi);
      Complex b = evaluate_symbol(two, x, -xi);
      CHECK(std::abs(a - std::conj(b)) < 1e-12);
    }
  }
}

TEST_CASE("characteristics round trip through Levy-Khintchine") {
  auto chars = StateCharacteristics::from_spec(ExponentSpec::isotropic_stable(1.5));
  auto sym = StateSymbol(StateCoefficient::constant(1.0), chars);
  for (double xi : {0.5, 1.0, 4.0}) {
    Complex q = evaluate_symbol(sym, 0.0, xi);
    CHECK(q.real() == doctest::Approx(std::pow(xi, 1.5)).epsilon(1e-5));
    CHECK(std::abs(q.imag()) < 1e-8);
  }
  // no explicit density for the relativistic family
  CHECK_THROWS_AS(
      StateCharacteristics::from_spec(ExponentSpec::relativistic_stable(1.0, 1.0)),
      CapabilityError);
  // homographic density reproduces lambda xi^2/(1+lambda xi^2)
  auto hom = StateCharacteristics::from_spec(ExponentSpec::homographic(2.0));
  auto hsym = StateSymbol(StateCoefficient::constant(1.0), hom);
  for (double xi : {0.3, 1.0, 5.0}) {
    double want = 2.0 * xi * xi / (1.0 + 2.0 * xi * xi);
    CHECK(evaluate_symbol(hsym, 1.0, xi).real() ==
          doctest::Approx(want).epsilon(1e-6));
  }
}

TEST_CASE("truncation: no jumps and xi = 0") {
  auto diff = StateSymbol(StateCoefficient::constant(1.0),
                          ExponentSpec::generic(LevyTriplet::pure_diffusion(
                              Mat::Identity(1, 1))));
  auto trunc = truncate_symbol(diff, CutoffSpec::standard());
  for (double xi : {0.0, 1.0, 3.0}) {
    CHECK(std::abs(evaluate_symbol(trunc, 0.5, xi) -
                   evaluate_symbol(diff, 0.5, xi)) < 1e-12);
  }
  auto stable = stable_symbol(1.0, StateCoefficient::constant(1.0));
  auto qR = truncate_symbol(stable, CutoffSpec::with_radius(5.0));
  CHECK(std::abs(evaluate_symbol(qR, 0.0, 0.0)) == 0.0);
  // truncation needs a jump density
  auto rel = StateSymbol(StateCoefficient::constant(1.0),
                         ExponentSpec::relativistic_stable(1.0, 1.0));
  CHECK_THROWS_AS(truncate_symbol(rel, CutoffSpec::standard()),
                  CapabilityError);
}

TEST_CASE("truncation difference bounded by tail mass") {
  // stable alpha = 1, R = 5: nu(|y| > 5) = 2 c_1 / 5 with c_1 = 1/pi
  auto stable = stable_symbol(1.0, StateCoefficient::constant(1.0));
  auto cutoff = CutoffSpec::with_radius(5.0);
  auto qR = truncate_symbol(stable, cutoff);
  double tail = perturbation_tail_mass(stable, 5.0, 0.0);
  CHECK(tail == doctest::Approx(2.0 / (kPi * 5.0)).epsilon(1e-6));
  for (double xi : {0.1, 0.4, 1.0}) {
    double diff = std::abs(evaluate_symbol(stable, 0.0, xi) -
                           evaluate_symbol(qR, 0.0, xi));
    // spec'd consistency bound: tail part plus the compensated band
    double band = 0.0;  // symmetric density, compensation cancels
    CHECK(diff <= 2.0 * tail + band + 1e-6);
  }
}

TEST_CASE("perturbation operator") {
  auto cutoff = CutoffSpec::with_radius(5.0);
  // no jumps -> 0
  auto diff = StateSymbol(StateCoefficient::constant(1.0),
                          ExponentSpec::generic(LevyTriplet::pure_diffusion(
                              Mat::Identity(1, 1))));
  CHECK(perturbation_apply(diff, cutoff, gauss, 8.0, 1.0) == 0.0);
  // constant f -> 0 (the difference vanishes pointwise)
  auto stable = stable_symbol(1.5, StateCoefficient::constant(1.0));
  CHECK(std::abs(perturbation_apply(
            stable, cutoff, [](double) { return 0.7; }, 8.0, 1.0)) < 1e-12);

  // bump supported in B(0,1), |x| = 10: |Pf(x)| <= 2 ||f||_inf nu(|y| > 5)
  auto bump = [](double y) {
    double u = 1.0 - y * y;
    return u > 0.0 ? u * u : 0.0;
  };
  double Pf = perturbation_apply(stable, cutoff, bump, 1.0, 10.0);
  double tail = perturbation_tail_mass(stable, 5.0, 10.0);
  CHECK(std::abs(Pf) <= 2.0 * 1.0 * tail + 1e-9);
  CHECK(std::abs(Pf) > 0.0);  // the bump is visible from x = 10

  // direct oracle: only the negative half-line reaches the bump support
  double oracle = 0.0;
  {
    const double c15 = stable_density_normalization(1.5);
    const int n = 200000;
    const double a = 9.0, b = 11.0;  // y in [-11,-9] hits x + y in [-1,1]
    const double h = (b - a) / n;
    for (int i = 0; i < n; ++i) {
      double y = a + (i + 0.5) * h;
      double w = 1.0;  // |y| >= 9 > 2R: cutoff fully open
      oracle += h * w * bump(10.0 - y) * c15 * std::pow(y, -2.5);
    }
  }
  CHECK(Pf == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("generator: second derivative of a Gaussian") {
  auto lap = stable_symbol(2.0, StateCoefficient::constant(1.0));
  CHECK(apply_generator(lap, gauss, 0.0) == doctest::Approx(-2.0).epsilon(1e-8));
  for (double x : {-2.0, 0.5, 3.0}) {
    double want = (4.0 * x * x - 2.0) * std::exp(-x * x);
    CHECK(apply_generator(lap, gauss, x) ==
          doctest::Approx(want).epsilon(1e-7));
  }
  // zero symbol -> 0
  auto zero = StateSymbol(StateCoefficient::constant(1.0),
                          ExponentSpec::generic(
                              LevyTriplet::pure_drift(Vec::Zero(1))));
  CHECK(apply_generator(zero, gauss, 0.3) == doctest::Approx(0.0));
}

TEST_CASE("generator: alpha = 1 fractional derivative oracle") {
  // Af(0) = -\int |xi| fhat(xi) dxi = -2/sqrt(pi) for f = exp(-y^2).
  // The kink of |xi| at 0 makes the transform error O(dxi^2), so this
  // oracle needs a wide grid for a fine xi spacing.
  auto frac = stable_symbol(1.0, StateCoefficient::constant(1.0));
  GeneratorGrid grid;
  grid.extent = 64.0;
  grid.log2_n = 14;
  CHECK(apply_generator(frac, gauss, 0.0, {}, grid) ==
        doctest::Approx(-2.0 / std::sqrt(kPi)).epsilon(1e-3));
}

TEST_CASE("generator aliasing guard") {
  auto lap = stable_symbol(2.0, StateCoefficient::constant(1.0));
  GeneratorGrid coarse;
  coarse.log2_n = 5;
  coarse.extent = 32.0;
  coarse.aliasing_tol = 1e-10;
  CHECK_THROWS_AS(apply_generator(lap, gauss, 0.0, {}, coarse), AccuracyError);
}

TEST_CASE("truncation-perturbation identity") {
  // A = A_R + P at probe points (generator split of Lemma-type structure)
  auto phi = StateCoefficient::power(1.0);
  auto sym = stable_symbol(1.5, phi);
  auto cutoff = CutoffSpec::standard();
  auto symR = truncate_symbol(sym, cutoff);
  GeneratorGrid grid;
  grid.extent = 64.0;
  grid.log2_n = 14;
  for (double x : {0.0, 1.5}) {
    double a = apply_generator(sym, gauss, x, {}, grid);
    double aR = apply_generator(symR, gauss, x, {}, grid);
    double pf = perturbation_apply(sym, cutoff, gauss, 8.0, x);
    CHECK(a - aR == doctest::Approx(pf).epsilon(5e-3));
  }
}

TEST_CASE("standard symbol bound dominates |q|") {
  auto sym = stable_symbol(1.5, StateCoefficient::power(1.5));
  for (double x : {0.0, 2.0, -7.0}) {
    for (double xi : {0.2, 1.0, 6.0}) {
      double q = std::abs(evaluate_symbol(sym, x, xi));
      double bound =
          symbol_standard_bound(sym, scalar_vec(x), scalar_vec(xi), 10.0);
      CHECK(q <= bound * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("continuity probe: x-independent stable") {
  auto chars = StateCharacteristics::from_spec(ExponentSpec::isotropic_stable(1.5));
  auto report = continuity_probe(chars, -2.0, 2.0, ProbeGrids::standard());
  REQUIRE(report.subreports.size() == 4);
  CHECK(report.subreports[0].condition_id == "appen1.iii.a");
  for (const auto& sub : report.subreports) CHECK(sub.verdict == Verdict::pass);
  CHECK(report.verdict == Verdict::pass);
}

TEST_CASE("continuity probe: stable-like variable order") {
  StateCharacteristics chars;
  chars.dim = 1;
  chars.drift = [](const Vec& x) { return scalar_vec(std::sin(x(0))); };
  chars.jump_density = [](const Vec& x, const Vec& y) {
    double a = 1.2 + 0.3 * std::sin(x(0));
    return stable_density_normalization(a) * std::pow(y.norm(), -1.0 - a);
  };
  chars.tail_exponent = [](const Vec& x) { return 1.2 + 0.3 * std::sin(x(0)); };
  chars.small_jump_exponent = 1.5;
  auto report = continuity_probe(chars, -1.0, 1.0, ProbeGrids::standard());
  CHECK(report.verdict == Verdict::pass);
}

TEST_CASE("continuity probe: documented Q-discontinuity case") {
  // Approximates the point-mass symbol (1-cos(x xi))/x^2 with narrow bumps
  // at +-x; the jump diagnostics stay clean while Q jumps at the origin.
  const double eps = 0.05;
  StateCharacteristics chars;
  chars.dim = 1;
  chars.drift = [](const Vec&) { return Vec::Zero(1); };
  chars.diffusion = [](const Vec& x) -> Mat {
    if (x.norm() == 0.0) return Mat::Identity(1, 1);
    return Mat::Zero(1, 1);
  };
  chars.jump_density = [eps](const Vec& xv, const Vec& yv) {
    double x = std::max(std::abs(xv(0)), 0.25);  // keep masses bounded on K
    double y = yv(0);
    auto g = [eps](double u) {
      return std::exp(-0.5 * u * u / (eps * eps)) /
             (eps * std::sqrt(2.0 * kPi));
    };
    return (g(y - x) + g(y + x)) / (2.0 * x * x);
  };
  chars.tail_exponent = [](const Vec&) { return 2.0; };
  chars.small_jump_exponent = 0.0;
  auto report = continuity_probe(chars, 0.5, 1.5, ProbeGrids::standard());
  CHECK(report.subreports[0].verdict == Verdict::pass);
  CHECK(report.subreports[1].verdict == Verdict::pass);
  // Q diagnostic lives in the notes, not the verdict
  auto probe0 = continuity_probe(chars, -0.5, 0.5, ProbeGrids::standard());
  CHECK(probe0.notes.find("Q discontinuity") != std::string::npos);
}

TEST_CASE("symbol argument validation") {
  CHECK_THROWS_AS(
      continuity_probe(StateCharacteristics::from_spec(
                           ExponentSpec::isotropic_stable(1.5)),
                       1.0, 1.0, ProbeGrids::standard()),
      ParameterError);
  auto sym = stable_symbol(1.5, StateCoefficient::constant(1.0));
  CHECK_THROWS_AS(
      perturbation_apply(sym, CutoffSpec::standard(), gauss, -1.0, 0.0),
      ParameterError);
}
