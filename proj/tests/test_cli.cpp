#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "qdot/cli.hpp"

using namespace qdot;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempFile {
public:
    explicit TempFile(const std::string& contents) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("qdot_cli_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++) + ".json");
        std::ofstream f(path_);
        f << contents;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

} // namespace

TEST_CASE("spectrum prints the mixing factor and eigenenergies") {
    const CliResult r = run_cli({"spectrum", "--t", "0.01", "--delta", "10"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("gamma_paper: 9.99999") != std::string::npos);
    REQUIRE(r.out.find("e_minus_mev:") != std::string::npos);
    REQUIRE(r.out.find("e_plus_mev:") != std::string::npos);
}

TEST_CASE("budget text output carries the reference table and flags") {
    const CliResult r = run_cli({"budget", "--format", "text"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("gamma") != std::string::npos);
    REQUIRE(r.out.find("flag: omega_eff") != std::string::npos);
}

TEST_CASE("budget honors config files and --set overrides") {
    TempFile cfg(R"({"budget": {"omega_eff_override_hz": 30e3}})");
    const CliResult r =
        run_cli({"budget", "--config", cfg.path(), "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("omega_eff_hz").get<double>() == Catch::Approx(30e3));

    const CliResult r2 = run_cli({"budget", "--config", cfg.path(), "--set",
                                  "budget.tau_d_intra_s=1e-4", "--format", "json"});
    REQUIRE(r2.code == 0);
    REQUIRE(nlohmann::json::parse(r2.out).at("tau_d_s").get<double>() ==
            Catch::Approx(100.0).epsilon(1e-2));
}

TEST_CASE("strict config rejects unknown keys by path") {
    TempFile cfg(R"({"budget": {"tunneling": 0.01}})");
    const CliResult r = run_cli({"budget", "--config", cfg.path()});
    REQUIRE(r.code == 1);
    REQUIRE(r.err.find("budget.tunneling") != std::string::npos);
}

TEST_CASE("invalid physical inputs exit with code 1 and name the constraint") {
    const CliResult r = run_cli({"budget", "--set", "budget.t=-0.5"});
    REQUIRE(r.code == 1);
    REQUIRE(r.err.find("t must be > 0") != std::string::npos);
}

TEST_CASE("identical invocations produce byte-identical output") {
    const std::vector<std::string> args{"budget", "--format", "text"};
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    REQUIRE(a.code == 0);
    REQUIRE(a.out == b.out);

    const CliResult c = run_cli({"gate", "verify-cps", "--format", "json"});
    const CliResult d = run_cli({"gate", "verify-cps", "--format", "json"});
    REQUIRE(c.out == d.out);
}

TEST_CASE("gate verify-cps exits zero and reports the failing quoted form") {
    const CliResult r = run_cli({"gate", "verify-cps"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("pass: no") != std::string::npos);
    REQUIRE(r.out.find("best variant") != std::string::npos);
    REQUIRE(r.out.find("pass: yes") != std::string::npos);
}

TEST_CASE("gate compile emits sequence JSON that parses back") {
    const CliResult r = run_cli({"gate", "compile", "--sequence", "exact", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const PulseSequence seq = j.at("sequence").get<PulseSequence>();
    REQUIRE(seq.steps.size() == 8);
    REQUIRE(j.at("matrix").size() == 4);
}

TEST_CASE("gate search reports candidate count and top list") {
    const CliResult r = run_cli({"gate", "search", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("base_fidelity").get<double>() == Catch::Approx(0.25).margin(1e-9));
    REQUIRE(j.at("best").at("fidelity").get<double>() > 1.0 - 1e-10);
    REQUIRE(j.at("top").size() == 10);
}

TEST_CASE("gate cnot with quoted source attaches a warning") {
    const CliResult ideal = run_cli({"gate", "cnot", "--format", "json"});
    REQUIRE(ideal.code == 0);
    auto ji = nlohmann::json::parse(ideal.out);
    REQUIRE(ji.at("cps_verified").get<bool>());
    REQUIRE(ji.at("fidelity_vs_cnot").get<double>() > 1.0 - 1e-10);

    const CliResult quoted = run_cli({"gate", "cnot", "--cps", "quoted", "--format", "json"});
    REQUIRE(quoted.code == 0);
    auto jq = nlohmann::json::parse(quoted.out);
    REQUIRE_FALSE(jq.at("cps_verified").get<bool>());
    REQUIRE(jq.contains("warning"));

    const CliResult exact = run_cli({"gate", "cnot", "--cps", "exact", "--format", "json"});
    auto je = nlohmann::json::parse(exact.out);
    REQUIRE(je.at("cps_verified").get<bool>());
    REQUIRE(je.at("fidelity_vs_cnot").get<double>() > 1.0 - 1e-10);
}

TEST_CASE("evolve emits a trajectory CSV with per-state populations") {
    TempFile cfg(R"({
      "scheme": {"omega_Ltilde": 19.0, "omega_C": 9.0, "rabi_Ltilde": 0.02, "rabi_C": 0.02},
      "layout": {"n_qubits": 1, "cavity_dim": 3},
      "grid": {"t_start_ns": 0.0, "t_end_ns": 10.0, "n_steps": 10}
    })");
    const CliResult r = run_cli({"evolve", "--model", "raman", "--config", cfg.path()});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.rfind("t_ns,p_v0,p_v1,p_v2,p_e0,p_e1,p_e2,p_et0,p_et1,p_et2,leakage", 0) == 0);
    size_t lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    REQUIRE(lines == 12);  // header + 11 samples
    REQUIRE(r.out.find("\n0,1,0,0,") != std::string::npos);  // starts in |v0>
}

TEST_CASE("evolve xy model defaults to the swap start") {
    TempFile cfg(R"({
      "scheme": {"omega_Ltilde": 19.0, "omega_C": 9.9, "rabi_Ltilde": 0.1, "rabi_C": 0.05},
      "layout": {"n_qubits": 2, "cavity_dim": 3},
      "grid": {"t_start_ns": 0.0, "t_end_ns": 100.0, "n_steps": 4}
    })");
    const CliResult r = run_cli({"evolve", "--model", "xy", "--config", cfg.path()});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.rfind("t_ns,p_vv,p_ve,p_ev,p_ee,leakage", 0) == 0);
}

TEST_CASE("compare raman-jc emits the error report") {
    TempFile cfg(R"({
      "scheme": {"omega_Ltilde": 19.0, "omega_C": 9.0, "rabi_Ltilde": 0.02, "rabi_C": 0.02},
      "layout": {"cavity_dim": 3}
    })");
    const CliResult r = run_cli({"compare", "raman-jc", "--config", cfg.path()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("max_population_discrepancy").get<double>() < 5e-2);
    REQUIRE(j.at("max_etilde_population").get<double>() < 2e-3);
}

TEST_CASE("compare rejects out-of-regime inputs with exit code 2") {
    TempFile cfg(R"({
      "scheme": {"omega_Ltilde": 19.0, "omega_C": 9.0, "rabi_Ltilde": 0.5, "rabi_C": 0.5},
      "layout": {"cavity_dim": 3}
    })");
    const CliResult r = run_cli({"compare", "raman-jc", "--config", cfg.path()});
    REQUIRE(r.code == 2);
    REQUIRE(r.err.find("regime") != std::string::npos);
}

TEST_CASE("decohere sweep is monotone in the rate") {
    const CliResult r = run_cli({"decohere"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    REQUIRE(header == "gamma_per_ns,fidelity");
    double prev_f = 2.0;
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        const auto comma = line.find(',');
        const double f = std::stod(line.substr(comma + 1));
        REQUIRE(f < prev_f);
        prev_f = f;
        ++rows;
    }
    REQUIRE(rows == 5);
}

TEST_CASE("unknown subcommand prints usage to the error stream") {
    const CliResult r = run_cli({"frobnicate"});
    REQUIRE(r.code == 1);
    REQUIRE(r.err.find("Usage") != std::string::npos);
    REQUIRE(r.out.empty());
}

TEST_CASE("--out writes the file instead of stdout") {
    const auto path = std::filesystem::temp_directory_path() /
                      ("qdot_out_" + std::to_string(::getpid()) + ".txt");
    const CliResult r = run_cli({"spectrum", "--out", path.string()});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    REQUIRE(ss.str().find("gamma_paper") != std::string::npos);
    std::filesystem::remove(path);
}
