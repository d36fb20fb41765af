// bath_core.hpp: Occupation numbers, thermal ratio and thermalization rates
//
// Units: hbar = k_B = 1. The inverse temperature carries an explicit
// zero-temperature sentinel so that beta -> infinity limits are exact.

#pragma once

#include <string_view>

namespace bathtag {

enum class Statistics { Bosonic, Fermionic };
enum class ProbeKind { TLS, QHO };

std::string_view to_string(Statistics s) noexcept;
std::string_view to_string(ProbeKind p) noexcept;

// +1 for bosons, -1 for fermions.
constexpr int statistics_sign(Statistics s) noexcept {
    return s == Statistics::Bosonic ? 1 : -1;
}

// Statistics whose occupation number the probe itself follows at equilibrium:
// a TLS populates like a fermionic mode, a QHO like a bosonic one.
constexpr Statistics native_statistics(ProbeKind p) noexcept {
    return p == ProbeKind::TLS ? Statistics::Fermionic : Statistics::Bosonic;
}

// Inverse temperature, 1/energy. Non-negative; may be exactly infinite.
class Beta {
public:
    // Zero temperature.
    constexpr Beta() = default;
    explicit Beta(double value);

    static Beta infinite() noexcept { return Beta{}; }

    bool is_infinite() const noexcept { return infinite_; }
    bool is_zero() const noexcept { return !infinite_ && value_ == 0.0; }
    // Returns +inf for the zero-temperature sentinel.
    double value() const noexcept;

private:
    double value_{0.0};
    bool infinite_{true};
};

struct BathSpec {
    Statistics statistics{Statistics::Bosonic};
    Beta beta{};
    double gamma{1.0};   // bare dissipation rate
    double omega0{1.0};  // probe level spacing

    // Throws std::invalid_argument on gamma <= 0 or omega0 <= 0.
    void validate() const;

    // Same environment, other statistics hypothesis.
    BathSpec with(Statistics s) const {
        BathSpec out = *this;
        out.statistics = s;
        return out;
    }
};

// Builds a spec from the dimensionless product beta*omega0 (may be +inf).
BathSpec make_bath(Statistics s, double beta_omega, double gamma = 1.0, double omega0 = 1.0);

// beta*omega0, +inf at zero temperature.
double beta_omega(const BathSpec& bath) noexcept;

struct RateTable {
    double rate_tls_fermionic{};
    double rate_tls_bosonic{};
    double rate_qho_fermionic{};
    double rate_qho_bosonic{};
};

// Bose-Einstein 1/(e^{x}-1) or Fermi-Dirac 1/(e^{x}+1) with x = beta*omega0.
// Zero at infinite beta. Throws std::domain_error("divergent occupation")
// for bosons at beta = 0.
double occupation_number(Statistics s, Beta beta, double omega0);

// n_th = N_b/N_f = coth(beta*omega0/2) >= 1; exactly 1 at zero temperature.
// Throws std::domain_error("infinite-temperature ratio") at beta = 0.
double thermal_ratio(Beta beta, double omega0);

// gamma * N_q / N_p, with q the bath statistics and p the probe's native
// statistics. Reduces to gamma at zero temperature for all pairings.
double characteristic_rate(ProbeKind probe, const BathSpec& bath);

RateTable rate_table(Beta beta, double gamma, double omega0);

// d<zeta^dag zeta>/dt = -gamma (N_q/N_p) <zeta^dag zeta> + gamma N_q.
double balance_rhs(ProbeKind probe, const BathSpec& bath, double mean_excitation);

}  // namespace bathtag
