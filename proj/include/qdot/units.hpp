#pragma once

#include <string>

#include "qdot/errors.hpp"

// Unit conventions used throughout the library:
//   energy          meV
//   time            ns (analysis-level times in seconds are suffixed _s)
//   rates           per ns
// Every energy<->frequency conversion goes through the helpers below so the
// choice of h vs hbar is explicit at each call site.

namespace qdot::units {

/// hbar in meV ns (CODATA).
inline constexpr double hbar_mev_ns = 6.582119569e-4;

/// Planck constant in meV s (CODATA).
inline constexpr double planck_mev_s = 4.135667696e-12;

/// Plain (cycles) frequency in Hz of an energy: f = E / h.
inline double mev_to_hz(double e_mev) { return e_mev / planck_mev_s; }

/// Energy in meV of a plain frequency: E = h f.
inline double hz_to_mev(double f_hz) { return f_hz * planck_mev_s; }

/// Angular frequency in rad/ns of an energy: omega = E / hbar.
inline double mev_to_rad_per_ns(double e_mev) { return e_mev / hbar_mev_ns; }

inline double per_second_to_per_ns(double rate_per_s) { return rate_per_s * 1e-9; }

inline double ns_to_s(double t_ns) { return t_ns * 1e-9; }
inline double s_to_ns(double t_s) { return t_s * 1e9; }

/// How a stated "frequency" Omega is read when forming gate times tau = pi/Omega:
/// plain treats Omega as cycles/s (f = E/h), angular as rad/s (omega = E/hbar).
/// The two differ by exactly 2 pi.
enum class FrequencyConvention { plain, angular };

inline std::string to_string(FrequencyConvention c) {
    return c == FrequencyConvention::plain ? "plain" : "angular";
}

inline FrequencyConvention convention_from_string(const std::string& s) {
    if (s == "plain") return FrequencyConvention::plain;
    if (s == "angular") return FrequencyConvention::angular;
    throw ValidationError("unknown frequency convention '" + s + "' (expected plain|angular)");
}

/// Frequency in 1/s assigned to an energy under the given convention.
inline double mev_to_frequency(double e_mev, FrequencyConvention c) {
    double f = mev_to_hz(e_mev);
    return c == FrequencyConvention::plain ? f : 2.0 * 3.14159265358979323846 * f;
}

} // namespace qdot::units
