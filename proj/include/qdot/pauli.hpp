#pragma once

#include "qdot/linalg.hpp"

// Qubit basis ordering is |v> = index 0, |e> = index 1 everywhere.
// Operators follow the projector definitions
//   sigma^+ = |e><v|,  sigma^- = |v><e|,
//   sigma^x = |e><v| + |v><e|,
//   sigma^y = -i|e><v| + i|v><e|,
//   sigma^z = |e><e| - |v><v|,
// so in this ordering sigma^z = diag(-1, +1). The triple still satisfies
// sigma^x sigma^y = i sigma^z.

namespace qdot::pauli {

inline Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix sigma_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, 1), Complex(0, -1), Complex(0, 0);
    return m;
}

inline Matrix sigma_z() {
    Matrix m(2, 2);
    m << -1, 0, 0, 1;
    return m;
}

/// |e><v|
inline Matrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1;
    return m;
}

/// |v><e|
inline Matrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1;
    return m;
}

} // namespace qdot::pauli
