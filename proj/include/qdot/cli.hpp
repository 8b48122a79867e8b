#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdot/budget.hpp"
#include "qdot/config.hpp"
#include "qdot/decoherence.hpp"
#include "qdot/dot_pair.hpp"
#include "qdot/elimination.hpp"
#include "qdot/gates.hpp"
#include "qdot/hamiltonians.hpp"

// Command-line front end. Subcommands map one-to-one onto library operations:
//   spectrum   pair mixing and eigenenergies
//   budget     coherence/operation-time chain with reference match flags
//   gate       verify-cps | compile | search | cnot
//   evolve     trajectory CSV for the raman | jc | xy models
//   compare    raman-jc | jc-xy elimination error reports (JSON)
//   decohere   pi-pulse fidelity vs emission rate sweep (CSV)
//
// Exit codes: 0 success, 1 validation/usage error, 2 numerical-regime
// rejection. Output is deterministic for a fixed config.

namespace qdot::cli {

inline constexpr const char* version = "qdot 1.0.0";

namespace detail {

using qdot::detail::fmt_g;

inline void write_output(const std::string& path, const std::string& content,
                         std::ostream& fallback) {
    if (path.empty()) {
        fallback << content;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot open output file '" + path + "'");
    f << content;
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string matrix_to_text(const Matrix& m) {
    std::string out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%12.6g%+.6gi", m(i, j).real(), m(i, j).imag());
            out += buf;
            out += (j + 1 == m.cols()) ? "\n" : "  ";
        }
    }
    return out;
}

inline std::string spectrum_text(const DotPairParams& p) {
    const MixedPair m = diagonalize_pair(p);
    std::string out;
    auto line = [&out](const char* k, double v) {
        out += std::string(k) + ": " + fmt_g(v) + "\n";
    };
    line("t_mev", p.t);
    line("delta_mev", p.delta());
    line("e_minus_mev", m.e_minus);
    line("e_plus_mev", m.e_plus);
    line("gamma_paper", m.gamma_paper);
    line("gamma_exact", m.gamma_exact);
    line("amp_e_on_d", m.amp_e_on_d);
    line("amp_e_on_dtilde", m.amp_e_on_dtilde);
    out += std::string("weak_coupling_regime: ") + (m.weak_coupling_regime ? "yes" : "no") + "\n";
    if (m.gamma_paper > 0.0) {
        const ScalingReport s = scaling_factors(m.gamma_paper);
        line("emission_factor", s.emission_factor);
        line("coupling_factor", s.coupling_factor);
        line("gate_ratio_gain", s.gate_ratio_gain);
    }
    return out;
}

inline nlohmann::json verification_to_json(const VerificationReport& r) {
    return {{"fidelity", r.fidelity},
            {"max_deviation", r.max_deviation},
            {"optimal_phase", r.optimal_phase},
            {"pass", r.pass}};
}

inline std::string verification_to_text(const std::string& name, const VerificationReport& r) {
    std::string out = "sequence: " + name + "\n";
    out += "fidelity: " + fmt_g(r.fidelity) + "\n";
    out += "max_deviation: " + fmt_g(r.max_deviation) + "\n";
    out += "optimal_phase: " + fmt_g(r.optimal_phase) + "\n";
    out += std::string("pass: ") + (r.pass ? "yes" : "no") + "\n";
    return out;
}

inline PulseSequence sequence_by_name(const std::string& name) {
    if (name == "quoted") return cps_sequence();
    if (name == "exact") return cps_sequence_exact();
    throw ValidationError("unknown sequence '" + name + "' (expected quoted|exact)");
}

struct EvolveSetup {
    Matrix h;
    SystemLayout layout;
    std::string default_initial;
};

inline EvolveSetup evolve_setup(const RunConfig& cfg) {
    EvolveSetup s;
    const int nq = cfg.layout.n_qubits;
    if (cfg.evolve.model == "raman") {
        std::vector<LevelScheme> schemes{cfg.scheme};
        if (nq == 2) schemes.push_back(cfg.scheme_k);
        s.h = build_raman(schemes, cfg.layout.cavity_dim);
        s.layout = SystemLayout{nq, 3, cfg.layout.cavity_dim};
        s.default_initial = nq == 2 ? "vv0" : "v0";
    } else if (cfg.evolve.model == "jc") {
        s.h = nq == 2 ? build_effective_jc_pair(cfg.scheme, cfg.scheme_k, cfg.layout.cavity_dim)
                      : build_effective_jc(cfg.scheme, cfg.layout.cavity_dim);
        s.layout = SystemLayout{nq, 2, cfg.layout.cavity_dim};
        s.default_initial = nq == 2 ? "vv0" : "v0";
    } else {
        if (nq != 2)
            throw ValidationError("evolve: the xy model needs layout.n_qubits = 2");
        s.h = build_xy(cfg.scheme, cfg.scheme_k);
        s.layout = SystemLayout{2, 2, 0};
        s.default_initial = "ev";
    }
    return s;
}

inline std::string evolve_csv(const RunConfig& cfg) {
    cfg.grid.validate();
    const EvolveSetup setup = evolve_setup(cfg);
    const int dim = setup.layout.dimension();

    std::string initial =
        cfg.evolve.initial.empty() ? setup.default_initial : cfg.evolve.initial;
    Vector psi = Vector::Zero(dim);
    psi[setup.layout.parse_label(initial)] = 1.0;

    std::vector<int> etilde_states;
    for (int i = 0; i < dim; ++i)
        if (setup.layout.basis_label(i).find("et") != std::string::npos)
            etilde_states.push_back(i);

    std::string csv = "t_ns";
    for (int i = 0; i < dim; ++i) csv += ",p_" + setup.layout.basis_label(i);
    csv += ",leakage\n";

    const Matrix u = propagator(setup.h, cfg.grid.dt_ns());
    // advance to t_start if the grid does not begin at zero
    if (cfg.grid.t_start_ns != 0.0) psi = propagator(setup.h, cfg.grid.t_start_ns) * psi;

    for (int step = 0; step <= cfg.grid.n_steps; ++step) {
        csv += fmt_g(cfg.grid.time_ns(step));
        for (int i = 0; i < dim; ++i) csv += "," + fmt_g(std::norm(psi[i]));
        double leak = 0.0;
        for (int i : etilde_states) leak += std::norm(psi[i]);
        csv += "," + fmt_g(leak) + "\n";
        if (step < cfg.grid.n_steps) psi = u * psi;
    }
    return csv;
}

inline std::string decohere_csv(const RunConfig& cfg) {
    const DecohereOptions& d = cfg.decohere;
    d.validate();
    const Matrix h = build_drive(d.rabi_l_mev);
    const double tau = M_PI * units::hbar_mev_ns / (2.0 * d.rabi_l_mev);
    const SystemLayout layout{1, 2, 0};
    const Matrix sm = collapse_operator({QubitOrdinal::first, 0.0}, layout);
    Vector psi0 = Vector::Zero(2);
    psi0[0] = 1.0;

    std::string csv = "gamma_per_ns,fidelity\n";
    const double log_min = std::log(d.gamma_min_per_ns);
    const double log_max = std::log(d.gamma_max_per_ns);
    for (int i = 0; i < d.n_points; ++i) {
        const double g =
            std::exp(log_min + (log_max - log_min) * i / double(d.n_points - 1));
        const DecayedGate res = gate_under_decay(h, {{sm, g}}, tau, psi0);
        csv += fmt_g(g) + "," + fmt_g(res.fidelity) + "\n";
    }
    return csv;
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"coupled quantum-dot qubit simulator"};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);

    std::string config_path, out_path, format = "text";
    std::vector<std::string> overrides;

    // spectrum
    double opt_t = 0.01, opt_delta = 10.0, opt_ed = 0.0;
    auto* sc_spectrum = app.add_subcommand("spectrum", "pair mixing factor and eigenenergies");
    sc_spectrum->add_option("--t", opt_t, "tunnel coupling in meV");
    sc_spectrum->add_option("--delta", opt_delta, "bare level separation in meV");
    sc_spectrum->add_option("--ed", opt_ed, "lower dot level in meV");
    sc_spectrum->add_option("--out", out_path, "output path (default stdout)");

    // budget
    auto* sc_budget = app.add_subcommand("budget", "coherence and operation-time chain");
    sc_budget->add_option("--config", config_path, "JSON config file");
    sc_budget->add_option("--set", overrides, "section.key=value override");
    sc_budget->add_option("--format", format, "text|json|csv");
    sc_budget->add_option("--out", out_path, "output path (default stdout)");

    // gate
    auto* sc_gate = app.add_subcommand("gate", "pulse-sequence operations");
    sc_gate->require_subcommand(1);
    std::string seq_name = "quoted", cps_source = "ideal";
    auto* sc_verify = sc_gate->add_subcommand("verify-cps",
                                              "verify the conditional-phase sequence");
    auto* sc_compile = sc_gate->add_subcommand("compile", "emit a sequence and its matrix");
    auto* sc_search = sc_gate->add_subcommand("search", "rank convention-drift variants");
    auto* sc_cnot = sc_gate->add_subcommand("cnot", "CNOT from the conditional-phase gate");
    for (auto* sc : {sc_verify, sc_compile, sc_search, sc_cnot}) {
        sc->add_option("--format", format, "text|json");
        sc->add_option("--out", out_path, "output path (default stdout)");
    }
    sc_compile->add_option("--sequence", seq_name, "quoted|exact");
    sc_cnot->add_option("--cps", cps_source, "ideal|quoted|exact conditional-phase source");

    // evolve
    auto* sc_evolve = app.add_subcommand("evolve", "trajectory CSV for one model");
    std::string model_flag;
    sc_evolve->add_option("--config", config_path, "JSON config file");
    sc_evolve->add_option("--set", overrides, "section.key=value override");
    sc_evolve->add_option("--model", model_flag, "raman|jc|xy (overrides config)");
    sc_evolve->add_option("--out", out_path, "output path (default stdout)");

    // compare
    auto* sc_compare = app.add_subcommand("compare", "cross-validate adjacent model rungs");
    std::string which;
    sc_compare->add_option("which", which, "raman-jc|jc-xy")->required();
    sc_compare->add_option("--config", config_path, "JSON config file");
    sc_compare->add_option("--set", overrides, "section.key=value override");
    sc_compare->add_option("--out", out_path, "output path (default stdout)");

    // decohere
    auto* sc_decohere = app.add_subcommand("decohere", "pi-pulse fidelity vs emission rate");
    sc_decohere->add_option("--config", config_path, "JSON config file");
    sc_decohere->add_option("--set", overrides, "section.key=value override");
    sc_decohere->add_option("--out", out_path, "output path (default stdout)");

    try {
        std::vector<std::string> argv_copy(args);
        std::reverse(argv_copy.begin(), argv_copy.end());
        app.parse(argv_copy);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << version << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        err << app.help();
        return 1;
    }

    try {
        if (sc_spectrum->parsed()) {
            DotPairParams p{opt_ed, opt_ed + opt_delta, opt_t};
            detail::write_output(out_path, detail::spectrum_text(p), out);
            return 0;
        }

        if (sc_budget->parsed()) {
            const RunConfig cfg = load_config(config_path, overrides);
            const BudgetReport rep = compute_budget(cfg.budget);
            detail::write_output(out_path, emit_report(rep, report_format_from_string(format)),
                                 out);
            return 0;
        }

        if (sc_gate->parsed()) {
            const bool json = format == "json";
            if (!json && format != "text")
                throw ValidationError("gate output format must be text|json");
            std::string payload;

            if (sc_verify->parsed()) {
                const auto [seq, u] = compile_cps();
                const VerificationReport literal = verify_matrix(u, cps_target());
                nlohmann::json j{{"sequence", seq.label},
                                 {"verification", detail::verification_to_json(literal)}};
                std::string text = detail::verification_to_text(seq.label, literal);
                if (!literal.pass) {
                    const SearchReport sr = search_variants(seq, cps_target());
                    j["best_variant"] = {
                        {"label", sr.best.label},
                        {"multipliers", sr.ranked.front().multipliers},
                        {"flipped_joint_convention", sr.ranked.front().flipped_joint_convention},
                        {"verification", detail::verification_to_json(sr.best_report)}};
                    j["sequence_json"] = sr.best;
                    text += "quoted sequence failed; best variant found by search:\n";
                    text += detail::verification_to_text(sr.best.label, sr.best_report);
                }
                payload = json ? nlohmann::json(j).dump(2) + "\n" : text;
            } else if (sc_compile->parsed()) {
                const PulseSequence seq = detail::sequence_by_name(seq_name);
                const Matrix u = compile_sequence(seq);
                if (json) {
                    nlohmann::json j{{"sequence", seq}, {"matrix", detail::matrix_to_json(u)}};
                    payload = j.dump(2) + "\n";
                } else {
                    payload = "label: " + seq.label + "\n" + nlohmann::json(seq).dump(2) + "\n" +
                              detail::matrix_to_text(u);
                }
            } else if (sc_search->parsed()) {
                const PulseSequence base = cps_sequence();
                const SearchReport sr = search_variants(base, cps_target());
                const VerificationReport literal = verify_sequence(base, cps_target());
                nlohmann::json top = nlohmann::json::array();
                const size_t n_top = std::min<size_t>(10, sr.ranked.size());
                for (size_t i = 0; i < n_top; ++i)
                    top.push_back({{"multipliers", sr.ranked[i].multipliers},
                                   {"flipped_joint_convention",
                                    sr.ranked[i].flipped_joint_convention},
                                   {"fidelity", sr.ranked[i].fidelity}});
                if (json) {
                    nlohmann::json j{{"base", base.label},
                                     {"base_fidelity", literal.fidelity},
                                     {"candidates", sr.ranked.size()},
                                     {"best", detail::verification_to_json(sr.best_report)},
                                     {"top", top}};
                    payload = j.dump(2) + "\n";
                } else {
                    payload = "base: " + base.label +
                              " fidelity " + detail::fmt_g(literal.fidelity) + "\n" +
                              "candidates: " + std::to_string(sr.ranked.size()) + "\n" +
                              "best fidelity: " + detail::fmt_g(sr.best_report.fidelity) + "\n";
                    for (size_t i = 0; i < n_top; ++i) {
                        payload += "  [" + std::to_string(i) + "] F=" +
                                   detail::fmt_g(sr.ranked[i].fidelity) + " mult=";
                        for (double m : sr.ranked[i].multipliers)
                            payload += detail::fmt_g(m) + " ";
                        payload += sr.ranked[i].flipped_joint_convention ? "(joint flipped)\n"
                                                                         : "\n";
                    }
                }
            } else if (sc_cnot->parsed()) {
                Matrix cps;
                if (cps_source == "ideal")
                    cps = cps_target();
                else
                    cps = compile_sequence(detail::sequence_by_name(cps_source));
                const CnotResult res = cnot(cps);
                Matrix cnot_exact = Matrix::Zero(4, 4);
                cnot_exact(0, 0) = cnot_exact(1, 1) = 1.0;
                cnot_exact(2, 3) = cnot_exact(3, 2) = 1.0;
                const VerificationReport check = verify_matrix(res.matrix, cnot_exact);
                if (json) {
                    nlohmann::json j{{"cps_source", cps_source},
                                     {"cps_verified", res.cps_verified},
                                     {"matrix", detail::matrix_to_json(res.matrix)},
                                     {"fidelity_vs_cnot", check.fidelity}};
                    if (!res.warning.empty()) j["warning"] = res.warning;
                    payload = j.dump(2) + "\n";
                } else {
                    payload = "cps_source: " + cps_source + "\n";
                    payload += std::string("cps_verified: ") +
                               (res.cps_verified ? "yes" : "no") + "\n";
                    if (!res.warning.empty()) payload += "warning: " + res.warning + "\n";
                    payload += "fidelity_vs_cnot: " + detail::fmt_g(check.fidelity) + "\n";
                    payload += detail::matrix_to_text(res.matrix);
                }
            }
            detail::write_output(out_path, payload, out);
            return 0;
        }

        if (sc_evolve->parsed()) {
            RunConfig cfg = load_config(config_path, overrides);
            if (!model_flag.empty()) cfg.evolve.model = model_flag;
            if (cfg.evolve.model != "raman" && cfg.evolve.model != "jc" &&
                cfg.evolve.model != "xy")
                throw ValidationError("evolve: model must be raman|jc|xy");
            detail::write_output(out_path, detail::evolve_csv(cfg), out);
            return 0;
        }

        if (sc_compare->parsed()) {
            const RunConfig cfg = load_config(config_path, overrides);
            nlohmann::json j;
            if (which == "raman-jc") {
                const int steps = cfg.compare.n_steps > 0 ? cfg.compare.n_steps : 2000;
                const RamanJcComparison r = compare_raman_vs_jc(
                    cfg.scheme, cfg.layout.cavity_dim, steps, cfg.compare.initial_photons,
                    cfg.compare.max_coupling_ratio);
                j = {{"comparison", "raman-jc"},
                     {"max_population_discrepancy", r.max_population_discrepancy},
                     {"max_etilde_population", r.max_etilde_population},
                     {"omega_eff_mev", r.omega_eff_mev},
                     {"period_ns", r.period_ns}};
            } else if (which == "jc-xy") {
                const int steps = cfg.compare.n_steps > 0 ? cfg.compare.n_steps : 4000;
                const JcXyComparison r =
                    compare_jc_vs_xy(cfg.scheme, cfg.scheme_k, cfg.layout.cavity_dim, steps,
                                     cfg.compare.min_detuning_ratio);
                j = {{"comparison", "jc-xy"},
                     {"max_swap_discrepancy", r.max_swap_discrepancy},
                     {"max_photon_population", r.max_photon_population},
                     {"g_eff_formula_mev", r.g_eff_formula_mev},
                     {"g_eff_fitted_mev", r.g_eff_fitted_mev},
                     {"period_ns", r.period_ns}};
            } else {
                throw ValidationError("compare: expected raman-jc or jc-xy, got '" + which +
                                      "'");
            }
            detail::write_output(out_path, j.dump(2) + "\n", out);
            return 0;
        }

        if (sc_decohere->parsed()) {
            const RunConfig cfg = load_config(config_path, overrides);
            detail::write_output(out_path, detail::decohere_csv(cfg), out);
            return 0;
        }
    } catch (const RegimeError& e) {
        err << "regime error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace qdot::cli
