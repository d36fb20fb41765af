#include "bathtag/bath_core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bathtag {

std::string_view to_string(Statistics s) noexcept {
    return s == Statistics::Bosonic ? "bosonic" : "fermionic";
}

std::string_view to_string(ProbeKind p) noexcept {
    return p == ProbeKind::TLS ? "TLS" : "QHO";
}

Beta::Beta(double value) : value_(value), infinite_(std::isinf(value)) {
    if (std::isnan(value) || value < 0.0)
        throw std::invalid_argument("inverse temperature must be >= 0");
    if (infinite_) value_ = 0.0;
}

double Beta::value() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

void BathSpec::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("gamma must be a positive finite rate");
    if (!(omega0 > 0.0) || !std::isfinite(omega0))
        throw std::invalid_argument("omega0 must be a positive finite energy");
}

BathSpec make_bath(Statistics s, double beta_omega, double gamma, double omega0) {
    BathSpec bath{s, Beta{}, gamma, omega0};
    bath.validate();
    bath.beta = Beta{beta_omega / omega0};
    return bath;
}

double beta_omega(const BathSpec& bath) noexcept {
    return bath.beta.is_infinite() ? std::numeric_limits<double>::infinity()
                                   : bath.beta.value() * bath.omega0;
}

double occupation_number(Statistics s, Beta beta, double omega0) {
    if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be positive");
    if (beta.is_infinite()) return 0.0;
    const double x = beta.value() * omega0;
    if (s == Statistics::Bosonic) {
        if (x == 0.0) throw std::domain_error("divergent occupation");
        return 1.0 / std::expm1(x);
    }
    return 1.0 / (std::exp(x) + 1.0);
}

double thermal_ratio(Beta beta, double omega0) {
    if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be positive");
    if (beta.is_infinite()) return 1.0;
    if (beta.is_zero()) throw std::domain_error("infinite-temperature ratio");
    // coth(x/2) = 1 + 2/(e^x - 1), accurate at both ends of the range
    return 1.0 + 2.0 / std::expm1(beta.value() * omega0);
}

namespace {

// N_q / N_p expressed through n_th so that it stays finite at low temperature.
double occupation_ratio(Statistics bath, Statistics probe, Beta beta, double omega0) {
    if (bath == probe) return 1.0;
    const double n_th = thermal_ratio(beta, omega0);
    return bath == Statistics::Bosonic ? n_th : 1.0 / n_th;
}

}  // namespace

double characteristic_rate(ProbeKind probe, const BathSpec& bath) {
    bath.validate();
    if (bath.beta.is_infinite()) return bath.gamma;
    if (bath.beta.is_zero())
        throw std::domain_error("divergent occupation");
    return bath.gamma *
           occupation_ratio(bath.statistics, native_statistics(probe), bath.beta, bath.omega0);
}

RateTable rate_table(Beta beta, double gamma, double omega0) {
    BathSpec fermi{Statistics::Fermionic, beta, gamma, omega0};
    BathSpec bose{Statistics::Bosonic, beta, gamma, omega0};
    return RateTable{
        characteristic_rate(ProbeKind::TLS, fermi),
        characteristic_rate(ProbeKind::TLS, bose),
        characteristic_rate(ProbeKind::QHO, fermi),
        characteristic_rate(ProbeKind::QHO, bose),
    };
}

double balance_rhs(ProbeKind probe, const BathSpec& bath, double mean_excitation) {
    if (!(mean_excitation >= 0.0))
        throw std::domain_error("mean excitation must be non-negative");
    if (probe == ProbeKind::TLS && mean_excitation > 1.0)
        throw std::domain_error("TLS mean excitation cannot exceed 1");
    const double rate = characteristic_rate(probe, bath);
    const double n_q = occupation_number(bath.statistics, bath.beta, bath.omega0);
    return -rate * mean_excitation + bath.gamma * n_q;
}

}  // namespace bathtag
