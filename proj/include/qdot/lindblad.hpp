#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "qdot/linalg.hpp"

namespace qdot {

/// Uniform time grid in ns.
struct TimeGrid {
    double t_start_ns = 0.0;
    double t_end_ns = 0.0;
    int n_steps = 0;

    void validate() const {
        if (!(t_end_ns > t_start_ns))
            throw ValidationError("TimeGrid: t_end must exceed t_start");
        if (n_steps < 1)
            throw ValidationError("TimeGrid: n_steps must be >= 1");
    }

    double dt_ns() const { return (t_end_ns - t_start_ns) / n_steps; }
    double time_ns(int i) const { return t_start_ns + i * dt_ns(); }
};

struct CollapseChannel {
    Matrix op;
    double rate_per_ns = 0.0;
};

inline void validate_density_matrix(const Matrix& rho, double tol = 1e-10) {
    if (rho.rows() != rho.cols())
        throw ValidationError("density matrix must be square");
    if (hermiticity_defect(rho) > tol)
        throw ValidationError("density matrix is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
        throw ValidationError("density matrix does not have unit trace");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    if (es.eigenvalues().minCoeff() < -tol)
        throw ValidationError("density matrix is not positive semidefinite");
}

/// d rho/dt for the master equation
///   drho/dt = -(i/hbar)[H, rho] + sum_k G_k (L rho L^dag - 1/2 {L^dag L, rho}).
/// Trace-free for any input matrix, so fixed-step Runge-Kutta stages preserve
/// the trace exactly up to roundoff.
inline Matrix lindblad_rhs(const Matrix& h, const std::vector<CollapseChannel>& channels,
                           const Matrix& rho) {
    const Complex minus_i_over_hbar(0.0, -1.0 / units::hbar_mev_ns);
    Matrix out = minus_i_over_hbar * (h * rho - rho * h);
    for (const auto& ch : channels) {
        const Matrix ldl = ch.op.adjoint() * ch.op;
        out += ch.rate_per_ns *
               (ch.op * rho * ch.op.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    }
    return out;
}

/// Fixed-step classical fourth-order integration of the master equation.
/// Returns the state at every grid point (n_steps + 1 entries).
inline std::vector<Matrix> integrate_lindblad(const Matrix& h,
                                              const std::vector<CollapseChannel>& channels,
                                              const Matrix& rho0, const TimeGrid& grid) {
    grid.validate();
    if (hermiticity_defect(h) > 1e-12)
        throw ValidationError("integrate_lindblad: Hamiltonian is not Hermitian");
    validate_density_matrix(rho0);
    for (const auto& ch : channels) {
        if (ch.rate_per_ns < 0.0)
            throw ValidationError("integrate_lindblad: negative collapse rate");
        if (ch.op.rows() != h.rows() || ch.op.cols() != h.cols())
            throw ValidationError("integrate_lindblad: collapse operator dimension mismatch");
    }

    const double dt = grid.dt_ns();
    std::vector<Matrix> trajectory;
    trajectory.reserve(grid.n_steps + 1);
    Matrix rho = rho0;
    trajectory.push_back(rho);
    for (int step = 0; step < grid.n_steps; ++step) {
        const Matrix k1 = lindblad_rhs(h, channels, rho);
        const Matrix k2 = lindblad_rhs(h, channels, rho + 0.5 * dt * k1);
        const Matrix k3 = lindblad_rhs(h, channels, rho + 0.5 * dt * k2);
        const Matrix k4 = lindblad_rhs(h, channels, rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double drift = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
        if (!std::isfinite(drift) || drift > 1e-6) {
            std::ostringstream os;
            os << "integrate_lindblad: trace drift " << drift << " after step " << step + 1
               << "; the step size is too large for the given rates, use a finer grid";
            throw RegimeError(os.str());
        }
        trajectory.push_back(rho);
    }
    return trajectory;
}

} // namespace qdot
