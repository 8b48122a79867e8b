#include <catch2/catch_amalgamated.hpp>

#include "qdot/budget.hpp"
#include "qdot/dot_pair.hpp"

using namespace qdot;

namespace {
BudgetInputs reference_inputs() { return BudgetInputs{}; }

const BudgetRow& row(const BudgetReport& rep, const std::string& name) {
    for (const auto& r : rep.rows)
        if (r.name == name) return r;
    throw std::runtime_error("no row " + name);
}
}

TEST_CASE("reference chain with the adopted 30 kHz effective coupling") {
    BudgetInputs in = reference_inputs();
    in.omega_eff_override_hz = 30e3;
    const BudgetReport rep = compute_budget(in);

    REQUIRE(rep.gamma == Catch::Approx(1e-6).epsilon(1e-3));
    REQUIRE(rep.omega_l_mev == Catch::Approx(1e-4).epsilon(1e-3));
    REQUIRE(rep.g_eff_hz == Catch::Approx(10e3).epsilon(1e-9));
    REQUIRE(rep.tau_g2_s == Catch::Approx(M_PI / 10e3).epsilon(1e-9));
    REQUIRE(rep.tau_d_s == Catch::Approx(10.0).epsilon(1e-3));
    REQUIRE(rep.n_one_bit == Catch::Approx(7.7e7).epsilon(0.01));
    REQUIRE(rep.n_two_bit == Catch::Approx(3.18e4).epsilon(0.01));

    for (const char* name : {"g_eff", "tau_G2", "tau_d", "n_one_bit", "n_two_bit"}) {
        REQUIRE(row(rep, name).match.has_value());
        REQUIRE(*row(rep, name).match);
    }
}

TEST_CASE("without the override the effective coupling lands at 30 MHz and is flagged") {
    const BudgetReport rep = compute_budget(reference_inputs());
    REQUIRE(rep.omega_eff_hz == Catch::Approx(30e6).epsilon(0.01));
    const BudgetRow& r = row(rep, "omega_eff");
    REQUIRE(r.match.has_value());
    REQUIRE_FALSE(*r.match);
    REQUIRE(r.note.find("1e+03 x") != std::string::npos);
    REQUIRE_FALSE(rep.flags.empty());
    REQUIRE(emit_report(rep, ReportFormat::text).find("flag: omega_eff") != std::string::npos);
}

TEST_CASE("single-dot baseline reproduces the one-bit count and flags the two-bit claim") {
    BudgetInputs in = reference_inputs();
    in.gamma_override = 1.0;
    in.omega_eff_override_hz = 30e3;
    const BudgetReport rep = compute_budget(in);

    REQUIRE(rep.n_one_bit == Catch::Approx(7.7e4).epsilon(0.01));
    const BudgetRow& r = row(rep, "n_two_bit");
    REQUIRE(r.reference == 10.0);
    REQUIRE_FALSE(*r.match);
    REQUIRE(r.note.find("documented inconsistency") != std::string::npos);
}

TEST_CASE("budget gamma agrees with the pair diagonalization") {
    for (double t : {0.001, 0.01, 0.1}) {
        BudgetInputs in = reference_inputs();
        in.t_mev = t;
        const BudgetReport rep = compute_budget(in);
        const MixedPair m = diagonalize_pair({0.0, in.delta_pair_mev, t});
        REQUIRE(std::abs(rep.gamma - m.gamma_paper) < 1e-15);
    }
}

TEST_CASE("convention switch rescales every gate time by exactly two pi") {
    BudgetInputs in = reference_inputs();
    const BudgetReport plain = compute_budget(in);
    in.convention = units::FrequencyConvention::angular;
    const BudgetReport angular = compute_budget(in);

    const double two_pi = 2.0 * M_PI;
    REQUIRE(std::abs(plain.tau_g1_s / angular.tau_g1_s - two_pi) < 1e-12 * two_pi);
    REQUIRE(std::abs(plain.tau_g2_s / angular.tau_g2_s - two_pi) < 1e-12 * two_pi);
    REQUIRE(std::abs(angular.n_one_bit / plain.n_one_bit - two_pi) < 1e-12 * two_pi);
    const double ratio_plain = plain.n_two_bit / plain.n_one_bit;
    const double ratio_angular = angular.n_two_bit / angular.n_one_bit;
    REQUIRE(std::abs(ratio_plain - ratio_angular) < 1e-12 * ratio_plain);
}

TEST_CASE("plain convention puts the one-bit gate in the hundreds of nanoseconds") {
    const BudgetReport rep = compute_budget(reference_inputs());
    REQUIRE(rep.tau_g1_s == Catch::Approx(1.30e-7).epsilon(0.01));
    BudgetInputs in = reference_inputs();
    in.convention = units::FrequencyConvention::angular;
    REQUIRE(compute_budget(in).tau_g1_s == Catch::Approx(2.07e-8).epsilon(0.01));
}

TEST_CASE("monotonicity in the tunnel coupling") {
    double prev_gamma = 1.0, prev_tau_d = 0.0, prev_tau_g1 = 0.0;
    bool first = true;
    for (double t : {0.1, 0.05, 0.02, 0.01, 0.005}) {
        BudgetInputs in = reference_inputs();
        in.t_mev = t;
        const BudgetReport rep = compute_budget(in);
        if (!first) {
            REQUIRE(rep.gamma < prev_gamma);
            REQUIRE(rep.tau_d_s > prev_tau_d);
            REQUIRE(rep.tau_g1_s > prev_tau_g1);
        }
        prev_gamma = rep.gamma;
        prev_tau_d = rep.tau_d_s;
        prev_tau_g1 = rep.tau_g1_s;
        first = false;
    }
}

TEST_CASE("json report round-trips to an identical report") {
    BudgetInputs in = reference_inputs();
    in.omega_eff_override_hz = 30e3;
    const BudgetReport rep = compute_budget(in);
    const std::string text = emit_report(rep, ReportFormat::json);
    const BudgetReport back = nlohmann::json::parse(text).get<BudgetReport>();
    REQUIRE(back == rep);
}

TEST_CASE("csv has one line per derived quantity") {
    const BudgetReport rep = compute_budget(reference_inputs());
    const std::string csv = emit_report(rep, ReportFormat::csv);
    size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    REQUIRE(lines == rep.rows.size() + 1);
    REQUIRE(csv.rfind("name,formula,value,unit,reference,match", 0) == 0);
}

TEST_CASE("input validation") {
    BudgetInputs in = reference_inputs();
    in.t_mev = 0.0;
    REQUIRE_THROWS_AS(compute_budget(in), ValidationError);
    in = reference_inputs();
    in.delta_tilde_over_omega_eff = 2.0;
    REQUIRE_THROWS_AS(compute_budget(in), ValidationError);
    in = reference_inputs();
    in.gamma_override = 1.5;
    REQUIRE_THROWS_AS(compute_budget(in), ValidationError);
    in = reference_inputs();
    in.omega_eff_override_hz = -3.0;
    REQUIRE_THROWS_AS(compute_budget(in), ValidationError);
}
