#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdot/budget.hpp"
#include "qdot/level_scheme.hpp"
#include "qdot/lindblad.hpp"

// Single JSON configuration document with a strict schema: unknown keys are
// rejected with the offending path, and all physical invariants are
// revalidated after parsing. `--set section.key=value` overrides are applied
// to the document before extraction.

namespace qdot {

struct EvolveOptions {
    std::string model = "raman";  // raman | jc | xy
    std::string initial;          // basis label; empty = model default
};

struct CompareOptions {
    int n_steps = 0;  // 0 = per-comparison default
    int initial_photons = 0;
    double max_coupling_ratio = 0.2;
    double min_detuning_ratio = 3.0;
};

struct DecohereOptions {
    double rabi_l_mev = 0.01;
    double gamma_min_per_ns = 1e-5;
    double gamma_max_per_ns = 1e-1;
    int n_points = 5;

    void validate() const {
        if (!(rabi_l_mev > 0.0)) throw ValidationError("decohere.rabi_L must be > 0");
        if (!(gamma_min_per_ns > 0.0) || !(gamma_max_per_ns >= gamma_min_per_ns))
            throw ValidationError("decohere: need 0 < gamma_min <= gamma_max");
        if (n_points < 2) throw ValidationError("decohere.n_points must be >= 2");
    }
};

struct RunConfig {
    BudgetInputs budget;
    LevelScheme scheme;
    LevelScheme scheme_k;
    bool scheme_k_given = false;
    SystemLayout layout{1, 3, 3};
    TimeGrid grid;
    EvolveOptions evolve;
    CompareOptions compare;
    DecohereOptions decohere;
};

namespace detail {

class StrictSection {
public:
    StrictSection(const nlohmann::json& j, std::string path) : obj_(j), path_(std::move(path)) {
        if (!obj_.is_object())
            throw ValidationError("config: section '" + path_ + "' must be a JSON object");
    }

    template <typename T>
    void get(const char* key, T& target) {
        known_.insert(key);
        if (!obj_.contains(key)) return;
        try {
            target = obj_.at(key).get<T>();
        } catch (const nlohmann::json::exception&) {
            throw ValidationError("config: key '" + path_ + "." + key + "' has the wrong type");
        }
    }

    template <typename T>
    void get_optional(const char* key, std::optional<T>& target) {
        known_.insert(key);
        if (!obj_.contains(key)) return;
        try {
            target = obj_.at(key).get<T>();
        } catch (const nlohmann::json::exception&) {
            throw ValidationError("config: key '" + path_ + "." + key + "' has the wrong type");
        }
    }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!known_.count(it.key()))
                throw ValidationError("config: unknown key '" + path_ + "." + it.key() + "'");
    }

private:
    const nlohmann::json& obj_;
    std::string path_;
    std::set<std::string> known_;
};

inline void parse_scheme(const nlohmann::json& j, const std::string& path, LevelScheme& s) {
    StrictSection sec(j, path);
    sec.get("e_v", s.e_v);
    sec.get("e_e", s.e_e);
    sec.get("e_etilde", s.e_etilde);
    sec.get("omega_L", s.omega_L);
    sec.get("omega_Ltilde", s.omega_Ltilde);
    sec.get("omega_C", s.omega_C);
    sec.get("rabi_L", s.rabi_L);
    sec.get("rabi_Ltilde", s.rabi_Ltilde);
    sec.get("rabi_C", s.rabi_C);
    sec.finish();
    s.validate();
}

} // namespace detail

inline RunConfig parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ValidationError("config: top level must be a JSON object");
    RunConfig cfg;
    detail::StrictSection top(doc, "");
    static const char* sections[] = {"budget",  "scheme",  "scheme_k", "layout",
                                     "grid",    "evolve",  "compare",  "decohere"};
    for (const char* s : sections) {
        nlohmann::json ignored;
        top.get(s, ignored);
    }
    top.finish();

    if (doc.contains("budget")) {
        detail::StrictSection sec(doc.at("budget"), "budget");
        sec.get("t", cfg.budget.t_mev);
        sec.get("delta_pair", cfg.budget.delta_pair_mev);
        sec.get("rabi_Ltilde", cfg.budget.rabi_ltilde_mev);
        sec.get("rabi_C_hz", cfg.budget.rabi_c_hz);
        sec.get("delta1", cfg.budget.delta1_mev);
        sec.get("delta_tilde_over_omega_eff", cfg.budget.delta_tilde_over_omega_eff);
        sec.get("tau_d_intra_s", cfg.budget.tau_d_intra_s);
        std::string conv = units::to_string(cfg.budget.convention);
        sec.get("convention", conv);
        cfg.budget.convention = units::convention_from_string(conv);
        sec.get_optional("omega_eff_override_hz", cfg.budget.omega_eff_override_hz);
        sec.get_optional("gamma_override", cfg.budget.gamma_override);
        sec.finish();
        cfg.budget.validate();
    }
    if (doc.contains("scheme")) detail::parse_scheme(doc.at("scheme"), "scheme", cfg.scheme);
    cfg.scheme_k = cfg.scheme;
    if (doc.contains("scheme_k")) {
        detail::parse_scheme(doc.at("scheme_k"), "scheme_k", cfg.scheme_k);
        cfg.scheme_k_given = true;
    }
    if (doc.contains("layout")) {
        detail::StrictSection sec(doc.at("layout"), "layout");
        sec.get("n_qubits", cfg.layout.n_qubits);
        sec.get("levels_per_qubit", cfg.layout.levels_per_qubit);
        sec.get("cavity_dim", cfg.layout.cavity_dim);
        sec.finish();
        cfg.layout.validate();
    }
    if (doc.contains("grid")) {
        detail::StrictSection sec(doc.at("grid"), "grid");
        sec.get("t_start_ns", cfg.grid.t_start_ns);
        sec.get("t_end_ns", cfg.grid.t_end_ns);
        sec.get("n_steps", cfg.grid.n_steps);
        sec.finish();
        cfg.grid.validate();
    }
    if (doc.contains("evolve")) {
        detail::StrictSection sec(doc.at("evolve"), "evolve");
        sec.get("model", cfg.evolve.model);
        sec.get("initial", cfg.evolve.initial);
        sec.finish();
        if (cfg.evolve.model != "raman" && cfg.evolve.model != "jc" && cfg.evolve.model != "xy")
            throw ValidationError("config: evolve.model must be raman|jc|xy");
    }
    if (doc.contains("compare")) {
        detail::StrictSection sec(doc.at("compare"), "compare");
        sec.get("n_steps", cfg.compare.n_steps);
        sec.get("initial_photons", cfg.compare.initial_photons);
        sec.get("max_coupling_ratio", cfg.compare.max_coupling_ratio);
        sec.get("min_detuning_ratio", cfg.compare.min_detuning_ratio);
        sec.finish();
    }
    if (doc.contains("decohere")) {
        detail::StrictSection sec(doc.at("decohere"), "decohere");
        sec.get("rabi_L", cfg.decohere.rabi_l_mev);
        sec.get("gamma_min_per_ns", cfg.decohere.gamma_min_per_ns);
        sec.get("gamma_max_per_ns", cfg.decohere.gamma_max_per_ns);
        sec.get("n_points", cfg.decohere.n_points);
        sec.finish();
        cfg.decohere.validate();
    }
    return cfg;
}

/// Applies one `section.key=value` override to the document. Values parse as
/// JSON scalars, falling back to a plain string.
inline void apply_override(nlohmann::json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ValidationError("--set expects section.key=value, got '" + assignment + "'");
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    const auto dot = path.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == path.size())
        throw ValidationError("--set expects section.key=value, got '" + assignment + "'");
    nlohmann::json value = nlohmann::json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    doc[path.substr(0, dot)][path.substr(dot + 1)] = value;
}

inline nlohmann::json load_config_document(const std::string& config_path,
                                           const std::vector<std::string>& overrides) {
    nlohmann::json doc = nlohmann::json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ValidationError("config: cannot open '" + config_path + "'");
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("config: parse error in '" + config_path + "': " + e.what());
        }
    }
    for (const auto& o : overrides) apply_override(doc, o);
    return doc;
}

inline RunConfig load_config(const std::string& config_path,
                             const std::vector<std::string>& overrides) {
    return parse_config(load_config_document(config_path, overrides));
}

} // namespace qdot
