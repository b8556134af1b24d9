#include "forge/conditions.hpp"

#include <cmath>

#include "doctest.h"

using namespace forge;

namespace {

StateSymbol unit_symbol(double alpha) {
  return StateSymbol(StateCoefficient::constant(1.0),
                     ExponentSpec::isotropic_stable(alpha));
}

const ConditionReport& sub(const ConditionReport& r, const std::string& id) {
  for (const auto& s : r.subreports)
    if (s.condition_id == id) return s;
  throw std::runtime_error("missing subreport " + id);
}

}  // namespace

TEST_CASE("growth condition: closed-form limit 4") {
  // phi = 1+|x|, q = |xi|: G(R) = (1+4R)/R -> 4
  auto r = check_growth_timechange(StateCoefficient::power(1.0),
                                   unit_symbol(1.0), ProbeGrids::standard());
  CHECK(r.condition_id == "time-eq5");
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.fitted_constant == doctest::Approx(4.0).epsilon(0.05));
  // raw trace follows the closed form at every grid point
  for (const auto& t : r.trace)
    CHECK(t.value == doctest::Approx(4.0 + 1.0 / t.grid).epsilon(1e-9));
}

TEST_CASE("growth condition: bounded phi vanishes") {
  auto r = check_growth_timechange(StateCoefficient::constant(1.0),
                                   unit_symbol(1.5), ProbeGrids::standard());
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.fitted_constant < 1e-6);
}

TEST_CASE("growth condition: exponential phi diverges") {
  auto r = check_growth_timechange(StateCoefficient::exponential(),
                                   unit_symbol(1.5), ProbeGrids::standard());
  CHECK(r.verdict == Verdict::fail);
}

TEST_CASE("growth condition: scaling covariance") {
  auto phi = StateCoefficient::power(1.0);
  auto scaled = StateCoefficient::custom(
      [](const Vec& x) { return 3.0 * (1.0 + x.norm()); }, 1.0, "3 phi");
  auto a = check_growth_timechange(phi, unit_symbol(1.0), ProbeGrids::standard());
  auto b =
      check_growth_timechange(scaled, unit_symbol(1.0), ProbeGrids::standard());
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i)
    CHECK(b.trace[i].value == doctest::Approx(3.0 * a.trace[i].value));
}

TEST_CASE("perpetual condition verdicts") {
  auto good = StateCoefficient::from_expression("0.5/(1+abs(x)^1.5)", 0.0);
  auto r = check_perpetual(good, ExponentSpec::isotropic_stable(1.5),
                           ProbeGrids::standard());
  CHECK(r.condition_id == "time-eq6");
  CHECK(r.verdict == Verdict::pass);

  auto flat = check_perpetual(StateCoefficient::constant(1.0),
                              ExponentSpec::isotropic_stable(1.0),
                              ProbeGrids::standard());
  CHECK(flat.verdict == Verdict::pass);

  auto decaying = StateCoefficient::custom(
      [](const Vec& x) { return std::exp(-x.norm()); }, 0.0, "exp(-|x|)");
  auto bad = check_perpetual(decaying, ExponentSpec::isotropic_stable(1.5),
                             ProbeGrids::standard());
  CHECK(bad.verdict == Verdict::fail);
}

TEST_CASE("growth and perpetual coincide for trivial coefficients") {
  // for x-independent q the two formulas are identical when phi = f = 1
  for (double alpha : {0.7, 1.3, 2.0}) {
    auto g = check_growth_timechange(StateCoefficient::constant(1.0),
                                     unit_symbol(alpha), ProbeGrids::standard());
    auto p = check_perpetual(StateCoefficient::constant(1.0),
                             ExponentSpec::isotropic_stable(alpha),
                             ProbeGrids::standard());
    CHECK(g.verdict == p.verdict);
  }
}

TEST_CASE("thm13 checklist: stable pass case") {
  auto chars =
      StateCharacteristics::from_spec(ExponentSpec::isotropic_stable(1.5));
  auto r = check_thm13(StateCoefficient::power(1.5), chars,
                       CutoffSpec::standard(), ProbeGrids::standard());
  REQUIRE(r.subreports.size() == 5);
  for (const auto& s : r.subreports) CHECK(s.verdict == Verdict::pass);
  CHECK(r.verdict == Verdict::pass);
  CHECK(sub(r, "thm13.v").fitted_constant == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("thm13 checklist: quadratic phi violates (iii)") {
  auto chars =
      StateCharacteristics::from_spec(ExponentSpec::isotropic_stable(1.5));
  auto r = check_thm13(StateCoefficient::power(2.0), chars,
                       CutoffSpec::standard(), ProbeGrids::standard());
  CHECK(sub(r, "thm13.iii").verdict == Verdict::fail);
  CHECK(r.verdict == Verdict::fail);
}

TEST_CASE("thm13 checklist: pure diffusion with quadratic phi") {
  StateCharacteristics chars;
  chars.dim = 1;
  chars.diffusion = [](const Vec&) { return Mat::Identity(1, 1); };
  auto r = check_thm13(StateCoefficient::power(2.0), chars,
                       CutoffSpec::standard(), ProbeGrids::standard());
  CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("cor15: symmetric stable pass and drift fail") {
  auto triplet = LevyTriplet::stable_1d(1.2);
  auto ok = check_cor15(StateCoefficient::power(1.2), triplet,
                        ProbeGrids::standard());
  CHECK(ok.verdict == Verdict::pass);

  LevyTriplet with_drift = triplet;
  with_drift.drift = scalar_vec(1.0);
  auto bad = check_cor15(StateCoefficient::power(2.0), with_drift,
                         ProbeGrids::standard());
  CHECK(sub(bad, "cor15.i").verdict == Verdict::fail);
  CHECK(bad.verdict == Verdict::fail);
}

TEST_CASE("cor15: pure drift with linear phi") {
  auto r = check_cor15(StateCoefficient::power(1.0),
                       LevyTriplet::pure_drift(scalar_vec(1.0)),
                       ProbeGrids::standard());
  CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("cor17: stable dominated") {
  auto ok = check_stable_dominated(StateCoefficient::power(1.5),
                                   LevyTriplet::stable_1d(1.5), 1.5);
  CHECK(ok.condition_id == "cor17");
  CHECK(ok.verdict == Verdict::pass);

  // one-sided density: symmetry sub-check must fail
  LevyTriplet asym;
  asym.drift = Vec::Zero(1);
  asym.diffusion = Mat::Zero(1, 1);
  asym.jump_density = [](const Vec& y) {
    return y(0) > 0.0 ? std::pow(y(0), -2.5) : 0.0;
  };
  asym.tail_exponent = 1.5;
  asym.small_jump_exponent = 1.5;
  auto bad =
      check_stable_dominated(StateCoefficient::power(1.5), asym, 1.5);
  CHECK(sub(bad, "cor17.symmetry").verdict == Verdict::fail);
  CHECK(bad.verdict == Verdict::fail);

  CHECK_THROWS_AS(check_stable_dominated(StateCoefficient::power(1.0),
                                         LevyTriplet::stable_1d(1.5), 2.5),
                  ParameterError);
}

TEST_CASE("cor19: variable-order stable-like") {
  StateCharacteristics chars;
  chars.dim = 1;
  auto order = [](const Vec& x) { return 1.2 + 0.3 * std::sin(x(0)); };
  chars.jump_density = [order](const Vec& x, const Vec& y) {
    double a = order(x);
    return stable_density_normalization(a) * std::pow(y.norm(), -1.0 - a);
  };
  chars.tail_exponent = order;
  chars.small_jump_exponent = 1.5;
  auto r = check_stable_dominated(StateCoefficient::constant(1.0), chars, order);
  CHECK(r.condition_id == "cor19");
  CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("decomposable pairs") {
  auto grids = ProbeGrids::standard();
  // isotropic alpha < beta
  auto ok = check_decomposable_pair(
      StateCoefficient::power(1.8), ExponentSpec::isotropic_stable(1.8),
      StateCoefficient::power(0.7), ExponentSpec::isotropic_stable(0.7), grids);
  CHECK(ok.verdict == Verdict::pass);

  // alpha = beta: the link f(l) = l is not sublinear
  auto degenerate = check_decomposable_pair(
      StateCoefficient::power(1.5), ExponentSpec::isotropic_stable(1.5),
      StateCoefficient::power(1.5), ExponentSpec::isotropic_stable(1.5), grids);
  CHECK(sub(degenerate, "app5.b").verdict == Verdict::fail);
  CHECK(degenerate.verdict == Verdict::fail);

  // homographic pair with rho <= lambda
  auto hom = check_decomposable_pair(
      StateCoefficient::power(2.0), ExponentSpec::homographic(0.5),
      StateCoefficient::power(2.0), ExponentSpec::homographic(2.0), grids);
  CHECK(hom.verdict == Verdict::pass);

  // relativistic pair alpha < beta over a shared mass
  auto rel = check_decomposable_pair(
      StateCoefficient::power(2.0), ExponentSpec::relativistic_stable(1.5, 1.0),
      StateCoefficient::power(2.0), ExponentSpec::relativistic_stable(0.8, 1.0),
      grids);
  CHECK(rel.verdict == Verdict::pass);

  // unknown pair: inconclusive, never fail
  auto unknown = check_decomposable_pair(
      StateCoefficient::power(1.0), ExponentSpec::truncated_stable(0.7, 1.0),
      StateCoefficient::power(1.0), ExponentSpec::isotropic_stable(1.0), grids);
  CHECK(sub(unknown, "app5.a").verdict == Verdict::inconclusive);
  CHECK(unknown.verdict == Verdict::inconclusive);
}

TEST_CASE("probe grid validation") {
  ProbeGrids g;
  CHECK_THROWS_AS(
      check_growth_timechange(StateCoefficient::constant(1.0), unit_symbol(1.0),
                              g),
      ParameterError);
  g = ProbeGrids::standard();
  g.R_grid[1] = g.R_grid[0];
  CHECK_THROWS_AS(g.validate(), ParameterError);
}
