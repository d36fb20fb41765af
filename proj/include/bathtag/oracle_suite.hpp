// oracle_suite.hpp: Randomized comparison of the analytic probe models against
// the Fock-space integrator.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bathtag/bath_core.hpp"

namespace bathtag {

struct OracleThresholds {
    double bloch{1e-6};
    double moment{1e-6};
    double q{1e-5};
    double distance{1e-5};
    double tail{1e-8};
};

struct OracleReport {
    double max_bloch_dev{0.0};
    double max_moment_dev{0.0};
    double max_q_dev{0.0};
    double max_distance_dev{0.0};
    double tail_population{0.0};
    int cases{0};
    bool passed{true};
    std::string failure;  // first offending case, empty on success
};

struct OracleCase {
    ProbeKind probe{ProbeKind::TLS};
    double beta_omega{1.0};
    double t{0.0};
    std::string input;
    int dim{2};
    double bloch_dev{0.0};
    double moment_dev{0.0};
    double q_dev{0.0};
    double distance_dev{0.0};
    double tail{0.0};
    std::string error;  // non-empty if the oracle itself failed
};

struct OracleSuiteConfig {
    int cases_per_probe{20};
    bool tls{true};
    bool qho{true};
    std::optional<int> dim;             // fixed truncation; default auto from 64
    std::optional<double> dt;           // fixed step; default 1e-3 / Gamma_max
    std::optional<double> beta_omega;   // fixed temperature; default random with N_b <= 3
    double gamma{1.0};
    double omega0{1.0};
    std::uint64_t seed{20190315};
    int threads{0};                     // 0 = hardware concurrency
    OracleThresholds thresholds{};
};

// Cases are drawn deterministically from the seed, evaluated concurrently and
// returned in generation order.
std::vector<OracleCase> run_oracle_cases(const OracleSuiteConfig& config);

OracleReport summarize(const std::vector<OracleCase>& cases, const OracleThresholds& thresholds);

inline OracleReport run_oracle_suite(const OracleSuiteConfig& config) {
    return summarize(run_oracle_cases(config), config.thresholds);
}

std::string describe(const OracleCase& c);

}  // namespace bathtag
