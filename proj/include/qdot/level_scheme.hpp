#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qdot/errors.hpp"

namespace qdot {

/// Working levels of one qubit plus its drive fields, energies in meV.
/// |v> is the ground (logic 0) state, |e> the stored excitation (logic 1),
/// |etilde> the auxiliary upper level used only virtually.
///
/// The two detunings are derived quantities:
///   delta1 = E_etilde - E_v - omega_Ltilde   (laser vs v <-> etilde)
///   delta2 = E_etilde - E_e - omega_C        (cavity vs e <-> etilde)
/// and delta_tilde = delta2 - delta1 is the two-photon mismatch.
struct LevelScheme {
    double e_v = 0.0;
    double e_e = 10.0;
    double e_etilde = 20.0;
    double omega_L = 10.0;       // resonant drive for the v <-> e transition
    double omega_Ltilde = 19.0;  // off-resonant drive for v <-> etilde
    double omega_C = 9.0;        // cavity photon energy, couples e <-> etilde
    double rabi_L = 1e-4;
    double rabi_Ltilde = 0.1;
    double rabi_C = 1.2407e-3;

    double delta1() const { return e_etilde - e_v - omega_Ltilde; }
    double delta2() const { return e_etilde - e_e - omega_C; }
    double delta_tilde() const { return delta2() - delta1(); }

    /// max coupling over min detuning; the adiabatic elimination is trusted
    /// only when this is small.
    double coupling_to_detuning_ratio() const {
        const double coupling = std::max(rabi_Ltilde, rabi_C);
        const double detuning = std::min(std::abs(delta1()), std::abs(delta2()));
        return detuning > 0.0 ? coupling / detuning
                              : std::numeric_limits<double>::infinity();
    }

    void validate() const {
        if (!(e_v < e_e && e_e < e_etilde))
            throw ValidationError("LevelScheme: require e_v < e_e < e_etilde");
        if (rabi_L < 0.0 || rabi_Ltilde < 0.0 || rabi_C < 0.0)
            throw ValidationError("LevelScheme: Rabi couplings must be >= 0");
    }

    /// Canonical scheme with given detunings and couplings; level positions
    /// are fixed and the field frequencies are solved for.
    static LevelScheme from_detunings(double delta1_mev, double delta2_mev,
                                      double rabi_ltilde_mev, double rabi_c_mev) {
        LevelScheme s;
        s.e_v = 0.0;
        s.e_e = 10.0;
        s.e_etilde = 20.0;
        s.omega_L = s.e_e - s.e_v;
        s.omega_Ltilde = s.e_etilde - s.e_v - delta1_mev;
        s.omega_C = s.e_etilde - s.e_e - delta2_mev;
        s.rabi_Ltilde = rabi_ltilde_mev;
        s.rabi_C = rabi_c_mev;
        return s;
    }
};

/// Dimension bookkeeping for a composed system. Ordering convention:
/// qubit j (slowest index) x qubit k x cavity, qubit levels |v>=0, |e>=1,
/// |etilde>=2, cavity Fock states 0..cavity_dim-1.
struct SystemLayout {
    int n_qubits = 1;
    int levels_per_qubit = 2;
    int cavity_dim = 0;  // 0 when the cavity has been eliminated

    int dimension() const {
        int d = 1;
        for (int q = 0; q < n_qubits; ++q) d *= levels_per_qubit;
        return d * std::max(cavity_dim, 1);
    }

    void validate() const {
        if (n_qubits != 1 && n_qubits != 2)
            throw ValidationError("SystemLayout: n_qubits must be 1 or 2");
        if (levels_per_qubit != 2 && levels_per_qubit != 3)
            throw ValidationError("SystemLayout: levels_per_qubit must be 2 or 3");
        if (cavity_dim < 0)
            throw ValidationError("SystemLayout: cavity_dim must be >= 0");
        if (dimension() > 64) {
            std::ostringstream os;
            os << "SystemLayout: total dimension " << dimension() << " exceeds the cap of 64";
            throw ValidationError(os.str());
        }
    }

    int index(std::span<const int> qubit_levels, int photon = 0) const {
        int idx = 0;
        for (int q = 0; q < n_qubits; ++q) idx = idx * levels_per_qubit + qubit_levels[q];
        return idx * std::max(cavity_dim, 1) + photon;
    }

    std::string basis_label(int idx) const {
        static const char* names[] = {"v", "e", "et"};
        const int cav = std::max(cavity_dim, 1);
        const int photon = idx % cav;
        int rest = idx / cav;
        std::vector<int> lv(n_qubits);
        for (int q = n_qubits - 1; q >= 0; --q) {
            lv[q] = rest % levels_per_qubit;
            rest /= levels_per_qubit;
        }
        std::string out;
        for (int q = 0; q < n_qubits; ++q) out += names[lv[q]];
        if (cavity_dim > 0) out += std::to_string(photon);
        return out;
    }

    /// Inverse of basis_label; rejects labels not matching the layout.
    int parse_label(const std::string& label) const {
        for (int i = 0; i < dimension(); ++i)
            if (basis_label(i) == label) return i;
        throw ValidationError("SystemLayout: unknown basis label '" + label + "'");
    }
};

} // namespace qdot
