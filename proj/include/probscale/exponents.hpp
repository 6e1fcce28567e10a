/**
 * @file exponents.hpp
 * @brief Exact critical exponents for random-data local theory.
 *
 * All thresholds come out of the second-iterate computation with banded
 * Gaussian data: probabilistic scaling (HHH interactions), the high-high-
 * to-low alternative, the classical deterministic scaling, and the Gibbs
 * support regularity. Everything here is exact rational arithmetic.
 *
 * Conventions: data decay exponent alpha gives linear-solution regularity
 * s = alpha + 1 - d/2 ("regularity level"). For noncompact R^d with
 * unit-box Wiener randomization the analogous threshold constant is
 * -3/(4r); it is recorded here for reference only and nothing in this
 * library computes on it.
 */
#pragma once

#include <utility>

#include "probscale/equation.hpp"
#include "probscale/rational.hpp"

namespace probscale::exponents {

/// Regularity of the linear evolution of data with decay exponent alpha:
/// alpha + 1 - d/2.
Rational regularity_level(const Rational& alpha, int d);

/// Probabilistic scaling threshold s_pr.
///   Heat: -2/(p-1).  Wave: -3/(2(p-1)), except the quadratic anomalies
///   (d=1,p=2) -> -1 and (d=2,p=2) -> -5/4.  Schrodinger: -1/(p-1).
Rational s_pr(const EquationSpec& spec);

/// High-high-to-low threshold s_hhl.
///   Heat: -(d+2)/(2p).  Wave: -d/(2p) for the pure square u^2,
///   otherwise -(d+1)/(2p).  Schrodinger: -(d+1)/(2p) for |u|^2,
///   otherwise (u^2, conj(u)^2, higher powers) -(d+2)/(2p).
Rational s_hhl(const EquationSpec& spec);

/// Classical deterministic scaling threshold d/2 - 2/(p-1), the same for
/// all three flows.
Rational s_det(const EquationSpec& spec);

/// Support regularity of the Gibbs measure (alpha = 0 data): 1 - d/2.
/// The support statement is open-ended, hence the Threshold wrapper.
Rational gibbs_regularity(int d);
Threshold gibbs_support(int d);

/// How many derivatives rougher than Gibbs data (alpha = 0) the HHH
/// analysis tolerates: gibbs_regularity(d) - s_pr(spec).
Rational beta_hhh(const EquationSpec& spec);

/// Same for HHL interactions: gibbs_regularity(d) - s_hhl(spec).
Rational beta_hhl(const EquationSpec& spec);

/// Compares s against the regime's threshold. Strictly above ->
/// Subcritical, equal -> Critical, strictly below -> Supercritical.
Criticality classify(const EquationSpec& spec, const Rational& s, Regime regime);

struct TimeExponents {
    Rational long_time; ///< (p-1)(s - s_pr): T = N^{long_time} horizon
    Rational kinetic;   ///< 2(p-1)(s - s_pr) + 2: kinetic timescale exponent
};

/// Long-time and kinetic timescale exponents for data at regularity s.
TimeExponents time_exponents(const EquationSpec& spec, const Rational& s);

/// Predicted log2(N)-slope of the second-iterate H^s norm, Gaussian data:
/// -(p-1)(s - s_pr) for HHH, -p(s - s_hhl) for HHL.
Rational predicted_slope(const EquationSpec& spec, const Rational& s, Regime regime);

/// Same with deterministic (unit-coefficient) data: -(p-1)(s - s_det).
Rational predicted_slope_deterministic(const EquationSpec& spec, const Rational& s);

} // namespace probscale::exponents
