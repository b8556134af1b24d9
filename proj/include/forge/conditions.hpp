#ifndef FORGE_CONDITIONS_HPP
#define FORGE_CONDITIONS_HPP

#include <functional>

#include "forge/coefficient.hpp"
#include "forge/levy.hpp"
#include "forge/report.hpp"
#include "forge/symbol.hpp"

namespace forge {

// Growth condition behind the time-change construction ("time-eq5"):
// G(R) = sup_{|y| <= 4R} sup_{|xi| <= 1/R} max{phi(y),1} |q(y,xi)| traced
// along the R grid; the liminf is estimated by the running minimum.
ConditionReport check_growth_timechange(const StateCoefficient& phi,
                                        const StateSymbol& q,
                                        const ProbeGrids& grids);

// Perpetual-integral divergence condition ("time-eq6"):
// sup_{|y| <= 4R} (1/f(y)) sup_{|xi| <= 1/R} |psi(xi)|.
ConditionReport check_perpetual(const StateCoefficient& f,
                                const ExponentSpec& psi,
                                const ProbeGrids& grids);

// Five-part growth checklist ("thm13.i" ... "thm13.v") for state-dependent
// characteristics and a truncation radius R(x); d = 1.
ConditionReport check_thm13(const StateCoefficient& phi,
                            const StateCharacteristics& chars,
                            const CutoffSpec& cutoff, const ProbeGrids& grids);

// Specialization to x-independent triplets with R(x) = max{2,|x|/2}
// ("cor15.i" ... "cor15.v"); item (i) additionally enforces the linear
// growth cap on phi when the drift does not vanish.
ConditionReport check_cor15(const StateCoefficient& phi,
                            const LevyTriplet& triplet,
                            const ProbeGrids& grids);

// Stable-dominated jump measure check ("cor17"): domination
// n(y) <= C |y|^{-d-beta} outside B(0,1), symmetry of the jump density
// outside B(0,1), and the growth cap phi(x) <= c (1+|x|^beta).
ConditionReport check_stable_dominated(const StateCoefficient& phi,
                                       const LevyTriplet& triplet,
                                       double beta);

// State-dependent variant ("cor19") with tail exponent beta(x).
ConditionReport check_stable_dominated(
    const StateCoefficient& phi, const StateCharacteristics& chars,
    const std::function<double(const Vec&)>& beta);

// Decomposable-pair check ("app5.a" registry linkage, "app5.b" sublinearity
// of the Bernstein link on a log grid, "app5.c" bounded coefficient ratio).
// Pairs outside the builtin registry yield inconclusive, never fail.
ConditionReport check_decomposable_pair(const StateCoefficient& phi1,
                                        const ExponentSpec& psi1,
                                        const StateCoefficient& phi2,
                                        const ExponentSpec& psi2,
                                        const ProbeGrids& grids);

}  // namespace forge

#endif
