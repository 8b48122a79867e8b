#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qdot/linalg.hpp"
#include "qdot/pauli.hpp"

// Gate algebra on the two-qubit computational space {|vv>,|ve>,|ev>,|ee>}
// (qubit j is the first letter, |v> = logic 0).
//
// Rotation convention: rotation(n, a) = exp(+i a n.sigma); note the positive
// exponent. The joint evolution U(phi) = exp(+i phi (s_j^+ s_k^- + h.c.)) is
// likewise defined with a positive exponent, so it equals the adjoint of the
// physical evolution exp(-i H t/hbar) under H = g (s_j^+ s_k^- + h.c.) with
// phi = g t / hbar.
//
// A PulseSequence stores its steps in written (left-to-right) order; the
// compiled matrix is the ordinary operator product, i.e. the rightmost step
// acts first.

namespace qdot {

enum class QubitId { j, k };

struct RotationStep {
    QubitId qubit = QubitId::j;
    std::array<double, 3> axis{0.0, 0.0, 1.0};
    double angle = 0.0;  // radians
};

struct JointStep {
    double phi = 0.0;
};

struct GlobalPhaseStep {
    double theta = 0.0;
};

using PulseStep = std::variant<RotationStep, JointStep, GlobalPhaseStep>;

struct PulseSequence {
    std::vector<PulseStep> steps;
    std::string label;
};

/// exp(+i angle n.sigma) = cos(angle) I + i sin(angle) n.sigma for a unit axis.
inline Matrix rotation(const std::array<double, 3>& axis, double angle) {
    const double norm2 = axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2];
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw ValidationError("rotation: axis must have unit norm");
    const Matrix n_sigma =
        axis[0] * pauli::sigma_x() + axis[1] * pauli::sigma_y() + axis[2] * pauli::sigma_z();
    return std::cos(angle) * identity(2) + Complex(0, 1) * std::sin(angle) * n_sigma;
}

inline Matrix on_qubit(const Matrix& m, QubitId q) {
    return q == QubitId::j ? kron(m, identity(2)) : kron(identity(2), m);
}

/// Identity on |vv>,|ee>; [[cos phi, i sin phi],[i sin phi, cos phi]] on
/// {|ve>,|ev>}.
inline Matrix joint_evolution(double phi) {
    Matrix u = identity(4);
    u(1, 1) = std::cos(phi);
    u(2, 2) = std::cos(phi);
    u(1, 2) = Complex(0, 1) * std::sin(phi);
    u(2, 1) = Complex(0, 1) * std::sin(phi);
    return u;
}

inline Matrix step_matrix(const PulseStep& step) {
    return std::visit(
        [](const auto& s) -> Matrix {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, RotationStep>) {
                return on_qubit(rotation(s.axis, s.angle), s.qubit);
            } else if constexpr (std::is_same_v<T, JointStep>) {
                return joint_evolution(s.phi);
            } else {
                return std::polar(1.0, s.theta) * identity(4);
            }
        },
        step);
}

/// Operator product of the steps in written order (rightmost acts first).
inline Matrix compile_sequence(const PulseSequence& seq) {
    if (seq.steps.empty()) throw ValidationError("compile_sequence: empty sequence");
    Matrix u = identity(4);
    for (const auto& step : seq.steps) u *= step_matrix(step);
    return u;
}

inline Matrix cps_target() {
    Matrix t = identity(4);
    t(3, 3) = -1.0;
    return t;
}

namespace detail {
inline PulseSequence cps_steps(double trailing_angle, const std::string& label) {
    const double s3 = std::sqrt(3.0);
    PulseSequence seq;
    seq.label = label;
    seq.steps = {
        GlobalPhaseStep{M_PI / 4.0},
        RotationStep{QubitId::j, {1.0 / s3, 1.0 / s3, -1.0 / s3}, M_PI / 3.0},
        RotationStep{QubitId::k, {1.0 / s3, -1.0 / s3, 1.0 / s3}, M_PI / 3.0},
        JointStep{M_PI / 4.0},
        RotationStep{QubitId::j, {0.0, 1.0, 0.0}, -M_PI / 2.0},
        JointStep{M_PI / 4.0},
        RotationStep{QubitId::j, {1.0, 0.0, 0.0}, trailing_angle},
        RotationStep{QubitId::k, {1.0, 0.0, 0.0}, trailing_angle},
    };
    return seq;
}
} // namespace detail

/// The conditional-phase pulse sequence in its textbook-quoted form:
/// e^{i pi/4} R_j(n_j, pi/3) R_k(n_k, pi/3) U(pi/4) R_j(y, -pi/2) U(pi/4)
/// R_j(x, -pi/2) R_k(x, -pi/2), with n_j = (1,1,-1)/sqrt(3) and
/// n_k = (1,-1,1)/sqrt(3). Composes to fidelity 0.25 against cps_target();
/// see cps_sequence_exact().
inline PulseSequence cps_sequence() { return detail::cps_steps(-M_PI / 2.0, "cps-quoted"); }

/// The quoted sequence with the two trailing x-rotation angles halved
/// (pi/2 pulses instead of pi pulses). Composes to cps_target() exactly; this
/// is the variant search_variants() recovers from the quoted form.
inline PulseSequence cps_sequence_exact() {
    return detail::cps_steps(-M_PI / 4.0, "cps-trailing-half-angle");
}

inline std::pair<PulseSequence, Matrix> compile_cps() {
    PulseSequence seq = cps_sequence();
    Matrix u = compile_sequence(seq);
    return {std::move(seq), std::move(u)};
}

struct VerificationReport {
    double fidelity = 0.0;       // |tr(T^dag U)|^2 / d^2
    double max_deviation = 0.0;  // max |e^{-i phase} U - T| elementwise
    double optimal_phase = 0.0;  // arg tr(T^dag U)
    bool pass = false;           // max_deviation < 1e-8
};

inline VerificationReport verify_matrix(const Matrix& u, const Matrix& target) {
    if (u.rows() != target.rows() || u.cols() != target.cols())
        throw ValidationError("verify: dimension mismatch");
    const Complex overlap = (target.adjoint() * u).trace();
    const double d = static_cast<double>(u.rows());
    VerificationReport rep;
    rep.fidelity = std::norm(overlap) / (d * d);
    rep.optimal_phase = overlap == Complex(0, 0) ? 0.0 : std::arg(overlap);
    rep.max_deviation = max_abs(std::polar(1.0, -rep.optimal_phase) * u - target);
    rep.pass = rep.max_deviation < 1e-8;
    return rep;
}

inline VerificationReport verify_sequence(const PulseSequence& seq, const Matrix& target) {
    return verify_matrix(compile_sequence(seq), target);
}

struct VariantRecord {
    std::vector<double> multipliers;  // per-step angle multiplier
    bool flipped_joint_convention = false;
    double fidelity = 0.0;
};

struct SearchReport {
    PulseSequence best;
    VerificationReport best_report;
    std::vector<VariantRecord> ranked;  // descending fidelity
};

namespace detail {
inline PulseStep scaled_step(const PulseStep& step, double mult, bool flip_joint) {
    PulseStep out = step;
    std::visit(
        [&](auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, RotationStep>)
                s.angle *= mult;
            else if constexpr (std::is_same_v<T, JointStep>)
                s.phi *= flip_joint ? -mult : mult;
            else
                s.theta *= mult;
        },
        out);
    return out;
}
} // namespace detail

/// Exhaustive search over convention-drift variants of a sequence: per-step
/// angle sign flips, half angles for rotation steps (a pi pulse transcribed
/// where a pi/2 pulse was meant, and vice versa), and the two possible sign
/// conventions of the joint evolution. Returns the ranked list and the best
/// variant's compiled verification.
inline SearchReport search_variants(const PulseSequence& base, const Matrix& target) {
    if (base.steps.empty()) throw ValidationError("search_variants: empty sequence");
    if (base.steps.size() > 10)
        throw ValidationError("search_variants: sequences longer than 10 steps not supported");

    static const std::vector<double> rotation_mults = {1.0, -1.0, 0.5, -0.5};
    static const std::vector<double> sign_mults = {1.0, -1.0};

    std::vector<const std::vector<double>*> options;
    options.reserve(base.steps.size());
    for (const auto& step : base.steps)
        options.push_back(std::holds_alternative<RotationStep>(step) ? &rotation_mults
                                                                     : &sign_mults);

    SearchReport report;
    std::vector<double> mults(base.steps.size(), 1.0);
    std::vector<size_t> choice(base.steps.size(), 0);

    const auto evaluate = [&](bool flip_joint) {
        PulseSequence candidate;
        candidate.steps.reserve(base.steps.size());
        for (size_t i = 0; i < base.steps.size(); ++i)
            candidate.steps.push_back(detail::scaled_step(base.steps[i], mults[i], flip_joint));
        const double f = verify_matrix(compile_sequence(candidate), target).fidelity;
        report.ranked.push_back({mults, flip_joint, f});
    };

    // odometer over per-step multiplier choices
    while (true) {
        for (size_t i = 0; i < base.steps.size(); ++i) mults[i] = (*options[i])[choice[i]];
        evaluate(false);
        evaluate(true);
        size_t pos = 0;
        while (pos < choice.size() && ++choice[pos] == options[pos]->size()) {
            choice[pos] = 0;
            ++pos;
        }
        if (pos == choice.size()) break;
    }

    // quantize the sort key so that numerically tied variants keep their
    // enumeration order (the most literal variant wins ties)
    const auto key = [](double f) { return std::llround(f * 1e12); };
    std::stable_sort(report.ranked.begin(), report.ranked.end(),
                     [&key](const VariantRecord& a, const VariantRecord& b) {
                         return key(a.fidelity) > key(b.fidelity);
                     });

    const VariantRecord& top = report.ranked.front();
    report.best.label = base.label.empty() ? "best-variant" : base.label + "-best-variant";
    for (size_t i = 0; i < base.steps.size(); ++i)
        report.best.steps.push_back(
            detail::scaled_step(base.steps[i], top.multipliers[i], top.flipped_joint_convention));
    report.best_report = verify_sequence(report.best, target);
    return report;
}

/// exp(+i pi sigma^y / 4), the Hadamard-like rotation used to turn the
/// conditional phase gate into CNOT.
inline Matrix hadamard_like() { return rotation({0.0, 1.0, 0.0}, M_PI / 4.0); }

struct CnotResult {
    Matrix matrix;
    bool cps_verified = false;
    std::string warning;
};

/// CNOT with control j (active on |e>) and target k, built by conjugating a
/// conditional-phase matrix with hadamard_like() on qubit k. The orientation
/// is H_k CPS H_k^{-1}: with the positive-exponent rotation convention this
/// is the orientation that reproduces the CNOT truth table exactly, while the
/// opposite one leaves -1 phases on the two flipped basis states.
inline CnotResult cnot(const Matrix& cps) {
    if (cps.rows() != 4 || cps.cols() != 4)
        throw ValidationError("cnot: conditional-phase input must be 4x4");
    CnotResult out;
    const VerificationReport check = verify_matrix(cps, cps_target());
    out.cps_verified = check.fidelity > 1.0 - 1e-10;
    if (!out.cps_verified)
        out.warning = "input conditional-phase matrix is unverified (fidelity " +
                      std::to_string(check.fidelity) + " against the ideal target)";
    const Matrix h_k = on_qubit(hadamard_like(), QubitId::k);
    out.matrix = h_k * cps * h_k.adjoint();
    return out;
}

inline CnotResult cnot() { return cnot(cps_target()); }

// --- JSON serialization of pulse sequences -------------------------------
// A sequence is a JSON list of steps; angles are radians as plain numbers and
// round-trip bit exactly.

inline void to_json(nlohmann::json& out, const PulseStep& step) {
    std::visit(
        [&out](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, RotationStep>) {
                out = {{"kind", "rotation"},
                       {"qubit", s.qubit == QubitId::j ? "j" : "k"},
                       {"axis", s.axis},
                       {"angle", s.angle}};
            } else if constexpr (std::is_same_v<T, JointStep>) {
                out = {{"kind", "joint"}, {"phi", s.phi}};
            } else {
                out = {{"kind", "global_phase"}, {"theta", s.theta}};
            }
        },
        step);
}

inline void from_json(const nlohmann::json& in, PulseStep& step) {
    const std::string kind = in.at("kind").get<std::string>();
    if (kind == "rotation") {
        RotationStep s;
        const std::string q = in.at("qubit").get<std::string>();
        if (q != "j" && q != "k")
            throw ValidationError("pulse step: qubit must be 'j' or 'k'");
        s.qubit = q == "j" ? QubitId::j : QubitId::k;
        s.axis = in.at("axis").get<std::array<double, 3>>();
        s.angle = in.at("angle").get<double>();
        step = s;
    } else if (kind == "joint") {
        step = JointStep{in.at("phi").get<double>()};
    } else if (kind == "global_phase") {
        step = GlobalPhaseStep{in.at("theta").get<double>()};
    } else {
        throw ValidationError("pulse step: unknown kind '" + kind + "'");
    }
}

inline void to_json(nlohmann::json& out, const PulseSequence& seq) {
    out = {{"label", seq.label}, {"steps", seq.steps}};
}

inline void from_json(const nlohmann::json& in, PulseSequence& seq) {
    seq.label = in.value("label", "");
    seq.steps = in.at("steps").get<std::vector<PulseStep>>();
}

} // namespace qdot
