/**
 * @file equation.hpp
 * @brief Model equations and nonlinearity descriptors.
 *
 * The three model equations share one parameter set: spatial dimension d
 * and a p-th order polynomial nonlinearity. Conjugation structure
 * (|u|^2, signed products) only exists for the Schrodinger flow.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace probscale {

enum class EquationKind { Heat, Wave, Schrodinger };

inline const char* name(EquationKind eq) {
    switch (eq) {
        case EquationKind::Heat: return "heat";
        case EquationKind::Wave: return "wave";
        case EquationKind::Schrodinger: return "schrodinger";
    }
    return "?";
}

enum class NonlinearityKind {
    PurePower,     ///< u^p
    ModulusSquare, ///< |u|^2, Schrodinger only, forces p = 2
    SignedProduct  ///< u^{s1} ... u^{sp} with s = +1 (plain) or -1 (conjugate)
};

struct NonlinearitySpec {
    int degree = 2;
    NonlinearityKind kind = NonlinearityKind::PurePower;
    std::vector<int> signs; // SignedProduct only; entries are +1/-1

    static NonlinearitySpec power(int p) {
        if (p < 2) throw std::invalid_argument("nonlinearity degree must be >= 2");
        NonlinearitySpec nl;
        nl.degree = p;
        nl.kind = NonlinearityKind::PurePower;
        return nl;
    }

    static NonlinearitySpec modulus_square() {
        NonlinearitySpec nl;
        nl.degree = 2;
        nl.kind = NonlinearityKind::ModulusSquare;
        return nl;
    }

    static NonlinearitySpec signed_product(std::vector<int> s) {
        if (s.size() < 2) throw std::invalid_argument("signed product needs >= 2 factors");
        for (int v : s)
            if (v != 1 && v != -1)
                throw std::invalid_argument("signs must be +1 or -1");
        NonlinearitySpec nl;
        nl.degree = static_cast<int>(s.size());
        nl.kind = NonlinearityKind::SignedProduct;
        nl.signs = std::move(s);
        return nl;
    }

    /// The conjugation signs as an ordered list, for every kind.
    /// PurePower and ModulusSquare expand to their implied sign patterns.
    std::vector<int> sign_pattern() const {
        if (kind == NonlinearityKind::SignedProduct) return signs;
        std::vector<int> s(static_cast<std::size_t>(degree), 1);
        if (kind == NonlinearityKind::ModulusSquare) s[1] = -1;
        return s;
    }

    std::string str() const {
        switch (kind) {
            case NonlinearityKind::PurePower: return "u^" + std::to_string(degree);
            case NonlinearityKind::ModulusSquare: return "|u|^2";
            case NonlinearityKind::SignedProduct: {
                std::string out = "signs=";
                for (int v : signs) out += (v > 0 ? '+' : '-');
                return out;
            }
        }
        return "?";
    }
};

struct EquationSpec {
    EquationKind eq = EquationKind::Schrodinger;
    int d = 1;
    NonlinearitySpec nl;

    EquationSpec() = default;
    EquationSpec(EquationKind e, int dim, NonlinearitySpec n) : eq(e), d(dim), nl(std::move(n)) {
        validate();
    }

    int p() const { return nl.degree; }

    void validate() const {
        if (d < 1) throw std::invalid_argument("dimension d must be >= 1");
        if (nl.degree < 2) throw std::invalid_argument("degree p must be >= 2");
        if (nl.kind == NonlinearityKind::ModulusSquare && nl.degree != 2)
            throw std::invalid_argument("|u|^2 nonlinearity forces p = 2");
        if (nl.kind == NonlinearityKind::SignedProduct &&
            nl.signs.size() != static_cast<std::size_t>(nl.degree))
            throw std::invalid_argument("sign list length must equal p");
        if (eq != EquationKind::Schrodinger && nl.kind != NonlinearityKind::PurePower)
            throw std::invalid_argument("conjugated nonlinearities require the Schrodinger flow");
    }
};

/// Ordered so that larger values mean more regular data relative to the
/// threshold: Subcritical > Critical > Supercritical.
enum class Criticality { Supercritical = 0, Critical = 1, Subcritical = 2 };

inline const char* name(Criticality c) {
    switch (c) {
        case Criticality::Subcritical: return "subcritical";
        case Criticality::Critical: return "critical";
        case Criticality::Supercritical: return "supercritical";
    }
    return "?";
}

/// Interaction regime the threshold refers to: all frequencies at scale N
/// (HHH) or inputs at N with output at scale ~1 (HHL).
enum class Regime { HHH, HHL };

} // namespace probscale
