#pragma once

#include <cmath>

#include "qdot/hamiltonians.hpp"
#include "qdot/lindblad.hpp"

namespace qdot {

enum class QubitOrdinal { first, second };

/// Spontaneous-emission channel sigma^- = |v><e| on one qubit.
struct DecayChannel {
    QubitOrdinal qubit = QubitOrdinal::first;
    double rate_per_ns = 0.0;
};

/// Emission rate of the pair qubit from the intra-dot lifetime: the pair rate
/// is gamma / tau_intra, i.e. the lifetime stretches to tau_intra / gamma.
inline double emission_rate_per_ns(double gamma, double tau_d_intra_s) {
    if (!(gamma > 0.0) || gamma > 1.0)
        throw ValidationError("emission_rate: gamma must lie in (0, 1]");
    if (!(tau_d_intra_s > 0.0))
        throw ValidationError("emission_rate: intra-dot lifetime must be > 0");
    return units::per_second_to_per_ns(gamma / tau_d_intra_s);
}

inline double decoherence_time_s(double gamma, double tau_d_intra_s) {
    if (!(gamma > 0.0) || gamma > 1.0)
        throw ValidationError("decoherence_time: gamma must lie in (0, 1]");
    if (!(tau_d_intra_s > 0.0))
        throw ValidationError("decoherence_time: intra-dot lifetime must be > 0");
    return tau_d_intra_s / gamma;
}

/// sigma^- on the chosen qubit, embedded in the layout's full space.
inline Matrix collapse_operator(const DecayChannel& ch, const SystemLayout& layout) {
    layout.validate();
    if (ch.rate_per_ns < 0.0) throw ValidationError("DecayChannel: rate must be >= 0");
    const int slot = ch.qubit == QubitOrdinal::first ? 0 : 1;
    if (slot >= layout.n_qubits)
        throw ValidationError("DecayChannel: layout has no such qubit");
    std::vector<int> dims(layout.n_qubits, layout.levels_per_qubit);
    if (layout.cavity_dim > 0) dims.push_back(layout.cavity_dim);
    return detail::embed(detail::level_transfer(0, 1, layout.levels_per_qubit), slot, dims);
}

struct DecayedGate {
    Matrix rho_final;
    double fidelity = 0.0;  // <psi_ideal| rho_final |psi_ideal>
};

/// Runs a gate Hamiltonian for `duration_ns` under the given collapse
/// channels and scores the result against the closed-system evolution of the
/// same (pure) initial state.
inline DecayedGate gate_under_decay(const Matrix& h, const std::vector<CollapseChannel>& channels,
                                    double duration_ns, const Matrix& rho0, int n_steps = 4000) {
    validate_density_matrix(rho0);
    const double purity = (rho0 * rho0).trace().real();
    if (purity < 1.0 - 1e-8)
        throw ValidationError("gate_under_decay: initial state must be pure");

    TimeGrid grid{0.0, duration_ns, n_steps};
    DecayedGate out;
    out.rho_final = integrate_lindblad(h, channels, rho0, grid).back();

    // ideal target: closed-system evolution of the dominant eigenvector
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho0);
    Vector psi0 = es.eigenvectors().col(es.eigenvalues().size() - 1);
    const Vector psi_ideal = propagator(h, duration_ns) * psi0;
    out.fidelity = (psi_ideal.adjoint() * out.rho_final * psi_ideal)(0, 0).real();
    return out;
}

inline DecayedGate gate_under_decay(const Matrix& h, const std::vector<CollapseChannel>& channels,
                                    double duration_ns, const Vector& psi0, int n_steps = 4000) {
    return gate_under_decay(h, channels, duration_ns, Matrix(psi0 * psi0.adjoint()), n_steps);
}

/// Number of coherent operations: decoherence time over gate time.
inline double gate_ratio(double tau_d_s, double tau_g_s) {
    if (!(tau_d_s > 0.0) || !(tau_g_s > 0.0))
        throw ValidationError("gate_ratio: both times must be > 0");
    return tau_d_s / tau_g_s;
}

} // namespace qdot
