// fock_oracle.hpp: Truncated Fock-basis density matrices for brute-force checks
//
// The probe lowering operator zeta is the truncated annihilator a of the chosen
// dimension; for the TLS it is sigma_- on the (ground, excited) = (0, 1) basis.
// Evolution integrates the unified Lindblad generator
//   -i[omega0 zeta^dag zeta, rho] + gamma N_q D[zeta^dag] rho + gamma (1 + s_q N_q) D[zeta] rho
// with a fixed-step classical Runge-Kutta scheme.

#pragma once

#include <variant>

#include <Eigen/Dense>

#include "bathtag/bath_core.hpp"
#include "bathtag/gaussian_probe.hpp"
#include "bathtag/tls_probe.hpp"

namespace bathtag {

inline constexpr double kInitialTailThreshold = 1e-10;
inline constexpr double kEigenClampThreshold = -1e-10;
inline constexpr double kPositivityBreakdown = -1e-8;

struct FockDensity {
    Eigen::MatrixXcd matrix;

    int dim() const noexcept { return static_cast<int>(matrix.rows()); }
    double trace() const { return matrix.trace().real(); }
    // Population of the highest retained level.
    double tail_population() const { return matrix(dim() - 1, dim() - 1).real(); }
    // Unit trace (1e-9), Hermitian (1e-12) and eigenvalues >= -1e-10.
    void validate() const;
};

using InitialState = std::variant<BlochVector, GaussianParams>;

// TLS states ignore `dim` and embed in dimension 2. Gaussian states are built by
// exponentiating the squeeze and displacement generators in a padded basis and
// projecting; throws std::domain_error("increase truncation") if the discarded
// population reaches kInitialTailThreshold.
FockDensity build_initial_state(const InitialState& spec, int dim);

// Doubles the dimension from start_dim until the tail criterion is met.
FockDensity build_initial_state_auto(const InitialState& spec, int start_dim = 64,
                                     int max_dim = 1024);

Eigen::MatrixXcd lindblad_generator(const Eigen::MatrixXcd& rho, const BathSpec& bath);

// One RK4 step. Throws std::domain_error("step size too large") if any
// population drops below -1e-8 or a non-finite entry appears.
FockDensity lindblad_step(const FockDensity& rho, const BathSpec& bath, ProbeKind probe, double dt);

// 1e-3 / max(Gamma_b, Gamma_f) for the probe.
double default_time_step(const BathSpec& bath, ProbeKind probe);

struct FockEvolution {
    FockDensity rho;
    double max_tail_population{0.0};
};

FockEvolution evolve_density(const FockDensity& rho0, const BathSpec& bath, ProbeKind probe,
                             double t, double dt);

// Sum of |eigenvalues| of a - b.
double trace_norm_distance(const FockDensity& a, const FockDensity& b);

// tr[a^r b^(1-r)] via Hermitian eigendecompositions with eigenvalue clamping.
double chernoff_direct(const FockDensity& a, const FockDensity& b, double r);

BlochVector bloch_from_density(const FockDensity& rho);
LadderMoments ladder_from_density(const FockDensity& rho);

}  // namespace bathtag
