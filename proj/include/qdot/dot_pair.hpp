#pragma once

#include <cmath>

#include "qdot/errors.hpp"

namespace qdot {

/// Microscopic parameters of one coupled dot pair: bare level energies of the
/// two localized orbitals and their tunnel coupling, all in meV.
struct DotPairParams {
    double e_d = 0.0;       // lower-dot level E_d
    double e_dtilde = 0.0;  // upper-dot level E_dtilde
    double t = 0.0;         // tunnel coupling

    double delta() const { return e_dtilde - e_d; }

    /// The perturbative mixing formulas assume t << delta.
    bool weak_coupling() const { return delta() > 0.0 && t <= 0.3 * delta(); }

    void validate() const {
        if (t < 0.0) throw ValidationError("DotPairParams: tunnel coupling t must be >= 0");
        if (delta() < 0.0)
            throw ValidationError("DotPairParams: e_dtilde must not lie below e_d");
    }
};

/// Hybridized pair levels. gamma is the weight of the lower eigenstate on the
/// far dot; both the perturbative expression t^2/(delta^2 + t^2) and the exact
/// 2x2 value (1 - delta/sqrt(delta^2 + 4 t^2))/2 are carried, since they
/// diverge from each other outside the weak-coupling regime (the perturbative
/// one tends to 1 at delta = 0 where the exact weight is 1/2).
struct MixedPair {
    double e_minus = 0.0;   // lower eigenenergy (state |e>)
    double e_plus = 0.0;    // upper eigenenergy (state |etilde>)
    double gamma_paper = 0.0;
    double gamma_exact = 0.0;
    double amp_e_on_d = 0.0;       // sqrt(1 - gamma_exact)
    double amp_e_on_dtilde = 0.0;  // sqrt(gamma_exact)
    bool weak_coupling_regime = true;
};

inline MixedPair diagonalize_pair(const DotPairParams& p) {
    p.validate();
    const double sum = p.e_d + p.e_dtilde;
    const double delta = p.delta();
    const double root = std::sqrt(delta * delta + 4.0 * p.t * p.t);

    MixedPair out;
    out.e_minus = 0.5 * (sum - root);
    out.e_plus = 0.5 * (sum + root);
    const double denom = delta * delta + p.t * p.t;
    out.gamma_paper = denom > 0.0 ? p.t * p.t / denom : 0.0;
    out.gamma_exact = root > 0.0 ? 0.5 * (1.0 - delta / root) : 0.0;
    out.amp_e_on_d = std::sqrt(1.0 - out.gamma_exact);
    out.amp_e_on_dtilde = std::sqrt(out.gamma_exact);
    out.weak_coupling_regime = p.weak_coupling();
    return out;
}

/// How pair hybridization rescales single-dot quantities: spontaneous emission
/// picks up a factor gamma, optical couplings sqrt(gamma), so the
/// operations-per-coherence-time ratio gains 1/sqrt(gamma).
struct ScalingReport {
    double emission_factor = 1.0;
    double coupling_factor = 1.0;
    double gate_ratio_gain = 1.0;
};

inline ScalingReport scaling_factors(double gamma) {
    if (!(gamma > 0.0) || gamma > 1.0)
        throw ValidationError("scaling_factors: gamma must lie in (0, 1]");
    return {gamma, std::sqrt(gamma), 1.0 / std::sqrt(gamma)};
}

} // namespace qdot
