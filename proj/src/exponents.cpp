#include "probscale/exponents.hpp"

namespace probscale::exponents {

Rational regularity_level(const Rational& alpha, int d) {
    if (d < 1) throw std::invalid_argument("regularity_level: d must be >= 1");
    return alpha + Rational(1) - Rational(d, 2);
}

Rational s_pr(const EquationSpec& spec) {
    spec.validate();
    const int p = spec.p();
    switch (spec.eq) {
        case EquationKind::Heat:
            return Rational(-2, p - 1);
        case EquationKind::Wave:
            if (p == 2 && spec.d == 1) return Rational(-1);
            if (p == 2 && spec.d == 2) return Rational(-5, 4);
            return Rational(-3, 2 * (p - 1));
        case EquationKind::Schrodinger:
            return Rational(-1, p - 1);
    }
    throw std::logic_error("unreachable");
}

Rational s_hhl(const EquationSpec& spec) {
    spec.validate();
    const int p = spec.p();
    const int d = spec.d;
    switch (spec.eq) {
        case EquationKind::Heat:
            return Rational(-(d + 2), 2 * p);
        case EquationKind::Wave:
            // The pure square u^2 is special; every other wave nonlinearity
            // follows the generic -(d+1)/(2p) branch.
            if (p == 2 && spec.nl.kind == NonlinearityKind::PurePower)
                return Rational(-d, 2 * p);
            return Rational(-(d + 1), 2 * p);
        case EquationKind::Schrodinger:
            if (spec.nl.kind == NonlinearityKind::ModulusSquare)
                return Rational(-(d + 1), 2 * p);
            return Rational(-(d + 2), 2 * p);
    }
    throw std::logic_error("unreachable");
}

Rational s_det(const EquationSpec& spec) {
    spec.validate();
    return Rational(spec.d, 2) - Rational(2, spec.p() - 1);
}

Rational gibbs_regularity(int d) {
    if (d < 1) throw std::invalid_argument("gibbs_regularity: d must be >= 1");
    return Rational(1) - Rational(d, 2);
}

Threshold gibbs_support(int d) {
    return Threshold{gibbs_regularity(d), true};
}

Rational beta_hhh(const EquationSpec& spec) {
    return gibbs_regularity(spec.d) - s_pr(spec);
}

Rational beta_hhl(const EquationSpec& spec) {
    return gibbs_regularity(spec.d) - s_hhl(spec);
}

Criticality classify(const EquationSpec& spec, const Rational& s, Regime regime) {
    const Rational threshold = regime == Regime::HHH ? s_pr(spec) : s_hhl(spec);
    if (s > threshold) return Criticality::Subcritical;
    if (s == threshold) return Criticality::Critical;
    return Criticality::Supercritical;
}

TimeExponents time_exponents(const EquationSpec& spec, const Rational& s) {
    const Rational gap = s - s_pr(spec);
    const Rational long_time = Rational(spec.p() - 1) * gap;
    return TimeExponents{long_time, Rational(2) * long_time + Rational(2)};
}

Rational predicted_slope(const EquationSpec& spec, const Rational& s, Regime regime) {
    if (regime == Regime::HHH)
        return Rational(-(spec.p() - 1)) * (s - s_pr(spec));
    return Rational(-spec.p()) * (s - s_hhl(spec));
}

Rational predicted_slope_deterministic(const EquationSpec& spec, const Rational& s) {
    return Rational(-(spec.p() - 1)) * (s - s_det(spec));
}

} // namespace probscale::exponents
