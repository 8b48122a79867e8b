#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "qdot/level_scheme.hpp"
#include "qdot/linalg.hpp"
#include "qdot/pauli.hpp"

// Hamiltonian builders for the three rungs of the approximation ladder:
//
//   1. full three-level Raman model, qubits + quantized cavity mode
//   2. effective two-photon (Jaynes-Cummings-like) model per qubit, cavity kept
//   3. effective two-qubit XY exchange, cavity eliminated
//
// All rungs share one rotating frame so that they can be compared state by
// state. For each qubit the frame co-rotates with its v <-> etilde laser at
// omega_Ltilde and with the cavity at omega_C; in this frame every builder is
// time independent and the diagonal reads
//
//   E(|v>) = 0,   E(|etilde>) = delta1,   E(|e>) = delta1 - delta2 = -delta_tilde,
//
// with the cavity mode itself carrying zero diagonal energy. Couplings enter
// without a 1/2: H = Omega (|a><b| + h.c.), so a resonant pi flip takes
// tau = pi hbar / (2 Omega).
//
// The Raman transfer v -> e emits one cavity photon (v,n) -> (e,n+1); its
// conserved charge is N = a^dag a - sum_q |e><e|_q, which all builders that
// keep the cavity commute with.

namespace qdot {

/// Resonant drive on the v <-> e transition: H = rabi_L sigma^x.
inline Matrix build_drive(double rabi_l_mev) {
    if (!(rabi_l_mev > 0.0)) throw ValidationError("build_drive: rabi_L must be > 0");
    return rabi_l_mev * pauli::sigma_x();
}

/// Effective two-photon coupling Omega_eff = (rabi_Ltilde rabi_C / 2)(1/delta1 + 1/delta2).
inline double omega_eff(const LevelScheme& s) {
    if (s.delta1() == 0.0 || s.delta2() == 0.0)
        throw ValidationError("omega_eff: delta1 and delta2 must be nonzero");
    return 0.5 * s.rabi_Ltilde * s.rabi_C * (1.0 / s.delta1() + 1.0 / s.delta2());
}

namespace detail {

inline Matrix embed(const Matrix& op, int slot, const std::vector<int>& dims) {
    Matrix out = Matrix::Identity(1, 1);
    for (size_t i = 0; i < dims.size(); ++i) {
        if (static_cast<int>(i) == slot)
            out = kron(out, op);
        else
            out = kron(out, identity(dims[i]));
    }
    return out;
}

inline Matrix annihilator(int cavity_dim) {
    Matrix a = Matrix::Zero(cavity_dim, cavity_dim);
    for (int n = 1; n < cavity_dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

inline Matrix level_proj(int level, int nlevels) {
    Matrix p = Matrix::Zero(nlevels, nlevels);
    p(level, level) = 1.0;
    return p;
}

inline Matrix level_transfer(int to, int from, int nlevels) {
    Matrix t = Matrix::Zero(nlevels, nlevels);
    t(to, from) = 1.0;
    return t;
}

} // namespace detail

/// Full Raman-level Hamiltonian on (3 levels)^n_qubits x cavity_dim.
/// Per qubit: detuning diagonal as in the shared frame, laser drive
/// rabi_Ltilde (|etilde><v| + h.c.) and cavity exchange
/// rabi_C (|e><etilde| a^dag + |etilde><e| a).
inline Matrix build_raman(const std::vector<LevelScheme>& schemes, int cavity_dim) {
    if (schemes.empty() || schemes.size() > 2)
        throw ValidationError("build_raman: one or two level schemes required");
    if (cavity_dim < 2) throw ValidationError("build_raman: cavity_dim must be >= 2");
    const int nq = static_cast<int>(schemes.size());
    SystemLayout layout{nq, 3, cavity_dim};
    layout.validate();
    for (const auto& s : schemes) s.validate();

    std::vector<int> dims(nq, 3);
    dims.push_back(cavity_dim);
    const int cav_slot = nq;
    const Matrix a = detail::embed(detail::annihilator(cavity_dim), cav_slot, dims);

    Matrix h = Matrix::Zero(layout.dimension(), layout.dimension());
    for (int q = 0; q < nq; ++q) {
        const auto& s = schemes[q];
        h += s.delta1() * detail::embed(detail::level_proj(2, 3), q, dims);
        h += (s.delta1() - s.delta2()) * detail::embed(detail::level_proj(1, 3), q, dims);

        const Matrix drive = detail::embed(detail::level_transfer(2, 0, 3), q, dims);
        h += s.rabi_Ltilde * (drive + drive.adjoint());

        // etilde -> e emits one cavity photon
        const Matrix lower = detail::embed(detail::level_transfer(1, 2, 3), q, dims);
        const Matrix exchange = lower * a.adjoint();
        h += s.rabi_C * (exchange + exchange.adjoint());
    }
    return h;
}

inline Matrix build_raman(const LevelScheme& s, int cavity_dim) {
    return build_raman(std::vector<LevelScheme>{s}, cavity_dim);
}

/// Rung 2 for a single qubit: two levels x cavity with coupling
/// Omega_eff (|e><v| a^dag + |v><e| a) and -delta_tilde on |e>.
inline Matrix build_effective_jc(const LevelScheme& s, int cavity_dim) {
    if (cavity_dim < 2) throw ValidationError("build_effective_jc: cavity_dim must be >= 2");
    s.validate();
    const double oeff = omega_eff(s);

    std::vector<int> dims{2, cavity_dim};
    const Matrix a = detail::embed(detail::annihilator(cavity_dim), 1, dims);
    const Matrix up = detail::embed(pauli::sigma_plus(), 0, dims);
    Matrix h = -s.delta_tilde() * detail::embed(detail::level_proj(1, 2), 0, dims);
    const Matrix coupling = up * a.adjoint();
    h += oeff * (coupling + coupling.adjoint());
    return h;
}

/// Rung 2 for two qubits sharing the cavity mode.
inline Matrix build_effective_jc_pair(const LevelScheme& sj, const LevelScheme& sk,
                                      int cavity_dim) {
    if (cavity_dim < 2)
        throw ValidationError("build_effective_jc_pair: cavity_dim must be >= 2");
    sj.validate();
    sk.validate();
    std::vector<int> dims{2, 2, cavity_dim};
    const Matrix a = detail::embed(detail::annihilator(cavity_dim), 2, dims);

    Matrix h = Matrix::Zero(4 * cavity_dim, 4 * cavity_dim);
    const LevelScheme* schemes[2] = {&sj, &sk};
    for (int q = 0; q < 2; ++q) {
        const auto& s = *schemes[q];
        h += -s.delta_tilde() * detail::embed(detail::level_proj(1, 2), q, dims);
        const Matrix coupling = detail::embed(pauli::sigma_plus(), q, dims) * a.adjoint();
        h += omega_eff(s) * (coupling + coupling.adjoint());
    }
    return h;
}

/// Exchange strength g_eff = Omega_eff^(j) Omega_eff^(k) / delta_tilde after
/// eliminating the cavity. Requires matched two-photon detunings.
inline double g_eff(const LevelScheme& sj, const LevelScheme& sk,
                    double match_tol_mev = 1e-9) {
    const double dj = sj.delta_tilde();
    const double dk = sk.delta_tilde();
    if (std::abs(dj - dk) > match_tol_mev) {
        std::ostringstream os;
        os << "g_eff: two-photon detunings differ, " << dj << " vs " << dk << " meV";
        throw ValidationError(os.str());
    }
    if (dj == 0.0) throw ValidationError("g_eff: two-photon detuning must be nonzero");
    return omega_eff(sj) * omega_eff(sk) / dj;
}

/// Rung 3: XY exchange on the two-qubit computational space,
/// H = g (sigma_j^+ sigma_k^- + sigma_k^+ sigma_j^-). Basis |vv>,|ve>,|ev>,|ee>.
inline Matrix build_xy_from_g(double g_mev) {
    Matrix h = Matrix::Zero(4, 4);
    h(1, 2) = g_mev;
    h(2, 1) = g_mev;
    return h;
}

inline Matrix build_xy(const LevelScheme& sj, const LevelScheme& sk) {
    return build_xy_from_g(g_eff(sj, sk));
}

/// Conserved charge of the cavity-keeping rungs: photon number minus the
/// number of qubits in |e>. levels_per_qubit selects the Raman (3) or
/// effective (2) layout.
inline Matrix conserved_charge(const SystemLayout& layout) {
    layout.validate();
    if (layout.cavity_dim < 2)
        throw ValidationError("conserved_charge: layout must keep the cavity");
    std::vector<int> dims(layout.n_qubits, layout.levels_per_qubit);
    dims.push_back(layout.cavity_dim);
    const Matrix a = detail::embed(detail::annihilator(layout.cavity_dim),
                                   layout.n_qubits, dims);
    Matrix n = a.adjoint() * a;
    for (int q = 0; q < layout.n_qubits; ++q)
        n -= detail::embed(detail::level_proj(1, layout.levels_per_qubit), q, dims);
    return n;
}

} // namespace qdot
