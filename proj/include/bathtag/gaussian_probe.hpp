// gaussian_probe.hpp: Single-mode Gaussian states of the oscillator probe
//
// Quadratures x = (a + a^dag)/sqrt(2), y = (a - a^dag)/(sqrt(2) i); covariance
// sigma_ij = <{dr_i, dr_j}>, so the vacuum has sigma = identity. A state is
// D^dag(xi) S^dag(chi) rho_th S(chi) D(xi) with first moments xi and
// sigma = nu S S^T, where S is the 2x2 symplectic image of the squeezer
// exp[(chi^* a^2 - chi a^dag^2)/2], chi = |chi| e^{i chi_phase}.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bathtag/bath_core.hpp"
#include "bathtag/discriminate.hpp"
#include "bathtag/tls_probe.hpp"  // Frame

namespace bathtag {

struct GaussianParams {
    double nu{1.0};                           // 2 N_b(beta_state) + 1
    Eigen::Vector2d xi{Eigen::Vector2d::Zero()};
    double chi_mod{0.0};
    double chi_phase{0.0};                    // 2 phi, in (-pi, pi]

    void validate() const;

    static GaussianParams ground() { return {}; }
    static GaussianParams thermal_occupation(double n_mean);
    static GaussianParams coherent(const Eigen::Vector2d& xi);
    static GaussianParams squeezed_vacuum(double chi_mod, double chi_phase = 0.0);
    // Displaced thermal state at the bath temperature, no squeezing.
    static GaussianParams displaced_thermal(const Eigen::Vector2d& xi, const BathSpec& bath);
};

struct GaussianMoments {
    Eigen::Vector2d R{Eigen::Vector2d::Zero()};
    Eigen::Matrix2d sigma{Eigen::Matrix2d::Identity()};

    // Symmetric, positive definite, det >= 1 - 1e-10.
    void validate() const;
};

struct LadderMoments {
    std::complex<double> a_mean{};
    std::complex<double> a2_mean{};
    double n_mean{0.0};
};

// 2x2 symplectic matrix of the squeezer acting on (x, y).
Eigen::Matrix2d squeezing_symplectic(double chi_mod, double chi_phase);

GaussianMoments params_to_moments(const GaussianParams& p);
GaussianParams moments_to_params(const GaussianMoments& m);

LadderMoments moments_to_ladder(const GaussianMoments& m);
GaussianMoments ladder_to_moments(const LadderMoments& l);

// Rotating frame drops the e^{-i omega0 t} phases; Lab keeps them.
LadderMoments evolve_ladder_moments(const LadderMoments& m0, const BathSpec& bath, double t,
                                    Frame frame = Frame::Lab);

GaussianParams evolve_gaussian(const GaussianParams& p0, const BathSpec& bath, double t,
                               Frame frame = Frame::Rotating);

// (cosh(2|chi|) nu + |xi|^2 - 1) / 2.
double mean_excitation(const GaussianParams& p);

// Inverse temperature of the state, (2/omega0) arcoth(nu); infinite for nu = 1.
Beta state_beta(const GaussianParams& p, double omega0);

struct ChernoffTerms {
    double nu_r_b{1.0};    // nu_{r beta_b}
    double nu_r_f{1.0};    // nu_{(1-r) beta_f}
    double norm_r_b{1.0};  // N_{beta_b, r}
    double norm_r_f{1.0};  // N_{beta_f, 1-r}
    Eigen::Vector2d delta{Eigen::Vector2d::Zero()};
};

// nu_{r beta} and N_{beta, r} from the state occupation N = (nu - 1)/2, in the
// cancellation-free form; pure states (N = 0) give exactly 1 for both.
double scaled_nu(double occupation, double r);
double chernoff_norm(double occupation, double r);

ChernoffTerms chernoff_terms(const GaussianParams& b, const GaussianParams& f, double r);

// Gaussian tr[rho_b^r rho_f^(1-r)] for r in (0, 1).
double gaussian_chernoff_r(const GaussianParams& b, const GaussianParams& f, double r);

// Reduced formula valid when neither state is squeezed.
double gaussian_chernoff_r_unsqueezed(const GaussianParams& b, const GaussianParams& f, double r);

// Exponent of the compact closed form for a displaced thermal input at the
// bath temperature: -(|delta(t)|^2/2)(1 + 2N_b - N_b f_r). Throws
// std::domain_error("closed form precondition violated") otherwise.
double chernoff_closed_form_exponent(const GaussianParams& input, const BathSpec& bath,
                                     double t, double r);
double chernoff_closed_form(const GaussianParams& input, const BathSpec& bath, double t,
                            double r);

// delta(t) = xi0 (e^{-gamma t/2} - e^{-gamma t/(2 n_th)}), rotating frame.
Eigen::Vector2d closed_form_delta(const Eigen::Vector2d& xi0, const BathSpec& bath, double t);

// 2 n_th log(n_th) / (gamma (n_th - 1)).
double optimal_time_qho(const BathSpec& bath);

struct BestTemperature {
    double occupation{};    // N_b(beta_best)
    double beta_omega{};    // beta_best * omega0
    double t_bar{};         // optimal time at beta_best
    double q_best{};        // Q(t_bar) at beta_best
    double kappa{};         // -ln(q_best) / |xi0|^2
};

// Minimizes Q(t_bar(beta)) of the closed form over the bath temperature.
BestTemperature best_bath_temperature(double xi0_norm, double gamma = 1.0, double omega0 = 1.0);

std::vector<Beta> state_temperature_trajectory(const GaussianParams& p0, const BathSpec& bath,
                                               std::span<const double> t_grid);

// min_r Q_r at each time for a common Gaussian input.
DiscriminationCurve qho_curve(const BathSpec& bath, const GaussianParams& p0,
                              std::span<const double> times);

// min_r Q_r between the two hypotheses at one time.
ChernoffMinimum qho_chernoff(const BathSpec& bath, const GaussianParams& p0, double t);

}  // namespace bathtag
