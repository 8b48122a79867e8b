#pragma once

#include <cmath>
#include <sstream>

#include "qdot/hamiltonians.hpp"
#include "qdot/lindblad.hpp"

// Numerical cross-validation between adjacent rungs of the approximation
// ladder. Evolution is exact (eigendecomposition propagator per step), so the
// reported discrepancies measure the physics of the elimination, not
// integrator error.

namespace qdot {

struct RamanJcComparison {
    double max_population_discrepancy = 0.0;  // on the v/e qubit populations
    double max_etilde_population = 0.0;       // leakage to the virtual level
    double omega_eff_mev = 0.0;
    double period_ns = 0.0;                   // one effective Rabi period
};

/// Evolves the full Raman model and the effective two-photon model side by
/// side over one effective Rabi period, starting from the qubit ground state
/// with `initial_photons` in the cavity, and reports the worst qubit
/// population mismatch plus the leakage into |etilde>.
inline RamanJcComparison compare_raman_vs_jc(const LevelScheme& s, int cavity_dim,
                                             int n_steps = 2000, int initial_photons = 0,
                                             double max_coupling_ratio = 0.2) {
    s.validate();
    if (cavity_dim < 2) throw ValidationError("compare_raman_vs_jc: cavity_dim must be >= 2");
    if (n_steps < 1) throw ValidationError("compare_raman_vs_jc: n_steps must be >= 1");
    if (initial_photons < 0 || initial_photons >= cavity_dim)
        throw ValidationError("compare_raman_vs_jc: initial photon number outside cavity");
    const double ratio = s.coupling_to_detuning_ratio();
    if (ratio > max_coupling_ratio) {
        std::ostringstream os;
        os << "compare_raman_vs_jc: coupling/detuning ratio " << ratio
           << " exceeds the validated bound " << max_coupling_ratio;
        throw RegimeError(os.str());
    }

    RamanJcComparison out;
    if (s.rabi_Ltilde == 0.0 && s.rabi_C == 0.0) return out;  // both models static
    out.omega_eff_mev = omega_eff(s);
    if (out.omega_eff_mev == 0.0)
        throw ValidationError(
            "compare_raman_vs_jc: effective coupling vanishes, no finite comparison period");
    out.period_ns = M_PI * units::hbar_mev_ns / std::abs(out.omega_eff_mev);

    const Matrix h_full = build_raman(s, cavity_dim);
    const Matrix h_eff = build_effective_jc(s, cavity_dim);
    const double dt = out.period_ns / n_steps;
    const Matrix u_full = propagator(h_full, dt);
    const Matrix u_eff = propagator(h_eff, dt);

    Vector psi_full = Vector::Zero(3 * cavity_dim);
    psi_full[0 * cavity_dim + initial_photons] = 1.0;
    Vector psi_eff = Vector::Zero(2 * cavity_dim);
    psi_eff[0 * cavity_dim + initial_photons] = 1.0;

    auto level_population = [cavity_dim](const Vector& psi, int level) {
        double p = 0.0;
        for (int n = 0; n < cavity_dim; ++n) p += std::norm(psi[level * cavity_dim + n]);
        return p;
    };

    for (int i = 0; i <= n_steps; ++i) {
        for (int level = 0; level < 2; ++level) {
            const double diff = std::abs(level_population(psi_full, level) -
                                         level_population(psi_eff, level));
            out.max_population_discrepancy = std::max(out.max_population_discrepancy, diff);
        }
        out.max_etilde_population =
            std::max(out.max_etilde_population, level_population(psi_full, 2));
        if (i < n_steps) {
            psi_full = u_full * psi_full;
            psi_eff = u_eff * psi_eff;
        }
    }
    return out;
}

struct JcXyComparison {
    double max_swap_discrepancy = 0.0;   // populations of |ve>, |ev|
    double max_photon_population = 0.0;  // real photons in the cavity model
    double g_eff_formula_mev = 0.0;
    double g_eff_fitted_mev = 0.0;       // from the observed swap period
    double period_ns = 0.0;              // one exchange period pi hbar / g_eff
};

/// Evolves the two-qubit cavity-keeping model and the XY model from |ev> with
/// an empty cavity over one exchange period. The fitted g_eff comes from the
/// first maximum of the |ve> population (quadratic interpolation around the
/// grid peak).
inline JcXyComparison compare_jc_vs_xy(const LevelScheme& sj, const LevelScheme& sk,
                                       int cavity_dim, int n_steps = 4000,
                                       double min_detuning_ratio = 3.0) {
    sj.validate();
    sk.validate();
    if (cavity_dim < 2) throw ValidationError("compare_jc_vs_xy: cavity_dim must be >= 2");
    if (n_steps < 2) throw ValidationError("compare_jc_vs_xy: n_steps must be >= 2");

    JcXyComparison out;
    out.g_eff_formula_mev = g_eff(sj, sk);
    const double oeff = std::max(std::abs(omega_eff(sj)), std::abs(omega_eff(sk)));
    const double dtil = std::abs(sj.delta_tilde());
    if (oeff == 0.0) return out;  // static on both sides
    if (dtil < min_detuning_ratio * oeff) {
        std::ostringstream os;
        os << "compare_jc_vs_xy: two-photon detuning " << dtil << " meV is below "
           << min_detuning_ratio << " x Omega_eff = " << min_detuning_ratio * oeff
           << " meV; the cavity elimination is outside its validated regime";
        throw RegimeError(os.str());
    }
    out.period_ns = M_PI * units::hbar_mev_ns / std::abs(out.g_eff_formula_mev);

    const Matrix h_jc = build_effective_jc_pair(sj, sk, cavity_dim);
    const Matrix h_xy = build_xy_from_g(out.g_eff_formula_mev);
    const double dt = out.period_ns / n_steps;
    const Matrix u_jc = propagator(h_jc, dt);
    const Matrix u_xy = propagator(h_xy, dt);

    // |ev>, empty cavity; two-qubit state index (a b) -> a*2 + b
    Vector psi_jc = Vector::Zero(4 * cavity_dim);
    psi_jc[(1 * 2 + 0) * cavity_dim + 0] = 1.0;
    Vector psi_xy = Vector::Zero(4);
    psi_xy[2] = 1.0;

    auto two_qubit_population = [cavity_dim](const Vector& psi, int pair_idx) {
        double p = 0.0;
        for (int n = 0; n < cavity_dim; ++n) p += std::norm(psi[pair_idx * cavity_dim + n]);
        return p;
    };

    std::vector<double> p_ve(n_steps + 1);
    for (int i = 0; i <= n_steps; ++i) {
        const double ve_jc = two_qubit_population(psi_jc, 1);
        const double ev_jc = two_qubit_population(psi_jc, 2);
        p_ve[i] = ve_jc;
        out.max_swap_discrepancy =
            std::max({out.max_swap_discrepancy, std::abs(ve_jc - std::norm(psi_xy[1])),
                      std::abs(ev_jc - std::norm(psi_xy[2]))});
        double photons = 0.0;
        for (int pair = 0; pair < 4; ++pair)
            for (int n = 1; n < cavity_dim; ++n)
                photons += n * std::norm(psi_jc[pair * cavity_dim + n]);
        out.max_photon_population = std::max(out.max_photon_population, photons);
        if (i < n_steps) {
            psi_jc = u_jc * psi_jc;
            psi_xy = u_xy * psi_xy;
        }
    }

    // swap peak: full transfer to |ve> happens at t = pi hbar / (2 g)
    int peak = 0;
    for (int i = 1; i <= n_steps; ++i)
        if (p_ve[i] > p_ve[peak]) peak = i;
    double t_peak = peak * dt;
    if (peak > 0 && peak < n_steps) {
        const double denom = p_ve[peak - 1] - 2.0 * p_ve[peak] + p_ve[peak + 1];
        if (denom != 0.0)
            t_peak += dt * 0.5 * (p_ve[peak - 1] - p_ve[peak + 1]) / denom;
    }
    out.g_eff_fitted_mev = t_peak > 0.0 ? M_PI * units::hbar_mev_ns / (2.0 * t_peak) : 0.0;
    return out;
}

} // namespace qdot
