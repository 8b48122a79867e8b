#pragma once

#include <complex>
#include <sstream>
#include <utility>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qdot/errors.hpp"
#include "qdot/units.hpp"

namespace qdot {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// ||M - M^dagger||_max
inline double hermiticity_defect(const Matrix& m) {
    return max_abs(m - m.adjoint());
}

/// ||M^dagger M - I||_max
inline double unitarity_defect(const Matrix& m) {
    return max_abs(m.adjoint() * m - identity(m.cols()));
}

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
    return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

inline bool is_unitary(const Matrix& m, double tol = 1e-10) {
    return m.rows() == m.cols() && unitarity_defect(m) <= tol;
}

/// Kronecker product; the first factor carries the slowest-varying index.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b);
}

struct EigResult {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // columns, unitary
};

/// Eigendecomposition of a Hermitian matrix. Rejects non-Hermitian input.
inline EigResult hermitian_eig(const Matrix& h, double tol = 1e-12) {
    if (h.rows() != h.cols())
        throw ValidationError("hermitian_eig: matrix is not square");
    const double defect = hermiticity_defect(h);
    if (defect > tol) {
        std::ostringstream os;
        os << "hermitian_eig: input is not Hermitian, ||H - H^dagger||_max = " << defect;
        throw ValidationError(os.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw ValidationError("hermitian_eig: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Exact propagator U = exp(-i H t / hbar) for a time-independent Hermitian H
/// in meV, duration in ns. Unitary by construction for any duration.
inline Matrix propagator(const Matrix& h, double duration_ns) {
    if (duration_ns < 0.0)
        throw ValidationError("propagator: negative duration");
    const EigResult eig = hermitian_eig(h);
    Vector phases(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        phases[i] = std::polar(1.0, -eig.values[i] * duration_ns / units::hbar_mev_ns);
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

} // namespace qdot
