#include "bathtag/gaussian_probe.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bathtag {

namespace {

using cd = std::complex<double>;

double occupation_of(const GaussianParams& p) {
    return p.nu > 1.0 ? 0.5 * (p.nu - 1.0) : 0.0;
}

}  // namespace

void GaussianParams::validate() const {
    if (!std::isfinite(nu) || nu < 1.0 - 1e-12)
        throw std::domain_error("thermal parameter nu must be >= 1");
    if (!xi.allFinite()) throw std::domain_error("displacement must be finite");
    if (!std::isfinite(chi_mod) || chi_mod < 0.0)
        throw std::domain_error("squeezing modulus must be >= 0");
    if (!std::isfinite(chi_phase) || chi_phase < -std::numbers::pi ||
        chi_phase > std::numbers::pi)
        throw std::domain_error("squeezing phase must lie in (-pi, pi]");
}

GaussianParams GaussianParams::thermal_occupation(double n_mean) {
    if (!(n_mean >= 0.0)) throw std::domain_error("thermal occupation must be >= 0");
    GaussianParams p;
    p.nu = 2.0 * n_mean + 1.0;
    return p;
}

GaussianParams GaussianParams::coherent(const Eigen::Vector2d& xi) {
    GaussianParams p;
    p.xi = xi;
    return p;
}

GaussianParams GaussianParams::squeezed_vacuum(double chi_mod, double chi_phase) {
    GaussianParams p;
    p.chi_mod = chi_mod;
    p.chi_phase = chi_phase;
    p.validate();
    return p;
}

GaussianParams GaussianParams::displaced_thermal(const Eigen::Vector2d& xi, const BathSpec& bath) {
    GaussianParams p;
    p.nu = thermal_ratio(bath.beta, bath.omega0);
    p.xi = xi;
    return p;
}

void GaussianMoments::validate() const {
    if (!R.allFinite() || !sigma.allFinite())
        throw std::domain_error("moments must be finite");
    const double scale = sigma.cwiseAbs().maxCoeff();
    if (std::abs(sigma(0, 1) - sigma(1, 0)) > 1e-12 * std::max(1.0, scale))
        throw std::domain_error("covariance matrix must be symmetric");
    if (!(sigma(0, 0) > 0.0) || sigma.determinant() < 1.0 - 1e-10)
        throw std::domain_error("unphysical covariance");
}

Eigen::Matrix2d squeezing_symplectic(double chi_mod, double chi_phase) {
    const double c = std::cosh(chi_mod), s = std::sinh(chi_mod);
    Eigen::Matrix2d m;
    m << c + s * std::cos(chi_phase), s * std::sin(chi_phase),
         s * std::sin(chi_phase), c - s * std::cos(chi_phase);
    return m;
}

GaussianMoments params_to_moments(const GaussianParams& p) {
    p.validate();
    const Eigen::Matrix2d s = squeezing_symplectic(p.chi_mod, p.chi_phase);
    GaussianMoments m;
    m.R = p.xi;
    m.sigma = p.nu * s * s.transpose();
    return m;
}

GaussianParams moments_to_params(const GaussianMoments& m) {
    if (!m.R.allFinite() || !m.sigma.allFinite())
        throw std::domain_error("unphysical covariance");
    const Eigen::Matrix2d& sg = m.sigma;
    const double det = sg.determinant();
    if (!std::isfinite(det) || det < 1.0 - 1e-8 || !(sg(0, 0) > 0.0) ||
        std::abs(sg(0, 1) - sg(1, 0)) > 1e-10 * std::max(1.0, sg.cwiseAbs().maxCoeff()))
        throw std::domain_error("unphysical covariance");

    GaussianParams p;
    p.nu = std::max(1.0, std::sqrt(det));
    p.xi = m.R;
    const double a = sg(0, 0) - sg(1, 1);
    const double b = sg(0, 1) + sg(1, 0);
    const double aniso = std::hypot(a, b);
    p.chi_mod = 0.5 * std::asinh(aniso / (2.0 * p.nu));
    p.chi_phase = aniso > 0.0 ? std::atan2(b, a) : 0.0;
    if (p.chi_phase <= -std::numbers::pi) p.chi_phase = std::numbers::pi;
    return p;
}

LadderMoments moments_to_ladder(const GaussianMoments& m) {
    LadderMoments l;
    l.a_mean = cd(m.R(0), m.R(1)) / std::numbers::sqrt2;
    const cd centred_a2(0.25 * (m.sigma(0, 0) - m.sigma(1, 1)), 0.5 * m.sigma(0, 1));
    l.a2_mean = centred_a2 + l.a_mean * l.a_mean;
    l.n_mean = 0.25 * (m.sigma(0, 0) + m.sigma(1, 1) - 2.0) + std::norm(l.a_mean);
    return l;
}

GaussianMoments ladder_to_moments(const LadderMoments& l) {
    const cd centred_a2 = l.a2_mean - l.a_mean * l.a_mean;
    const double centred_n = l.n_mean - std::norm(l.a_mean);
    GaussianMoments m;
    m.R << std::numbers::sqrt2 * l.a_mean.real(), std::numbers::sqrt2 * l.a_mean.imag();
    m.sigma << 2.0 * centred_a2.real() + 2.0 * centred_n + 1.0, 2.0 * centred_a2.imag(),
               2.0 * centred_a2.imag(), -2.0 * centred_a2.real() + 2.0 * centred_n + 1.0;
    return m;
}

LadderMoments evolve_ladder_moments(const LadderMoments& m0, const BathSpec& bath, double t,
                                    Frame frame) {
    if (!(t >= 0.0)) throw std::domain_error("evolution time must be non-negative");
    const double rate = characteristic_rate(ProbeKind::QHO, bath);
    const double n_b = occupation_number(Statistics::Bosonic, bath.beta, bath.omega0);
    const double decay = std::exp(-rate * t);

    LadderMoments out;
    out.a_mean = m0.a_mean * std::exp(-0.5 * rate * t);
    out.a2_mean = m0.a2_mean * decay;
    out.n_mean = m0.n_mean * decay + n_b * (1.0 - decay);
    if (frame == Frame::Lab) {
        const double phase = bath.omega0 * t;
        out.a_mean *= std::polar(1.0, -phase);
        out.a2_mean *= std::polar(1.0, -2.0 * phase);
    }
    return out;
}

GaussianParams evolve_gaussian(const GaussianParams& p0, const BathSpec& bath, double t,
                               Frame frame) {
    const LadderMoments l0 = moments_to_ladder(params_to_moments(p0));
    return moments_to_params(ladder_to_moments(evolve_ladder_moments(l0, bath, t, frame)));
}

double mean_excitation(const GaussianParams& p) {
    p.validate();
    return 0.5 * (std::cosh(2.0 * p.chi_mod) * p.nu + p.xi.squaredNorm() - 1.0);
}

Beta state_beta(const GaussianParams& p, double omega0) {
    if (!(omega0 > 0.0)) throw std::invalid_argument("omega0 must be positive");
    if (!(p.nu > 1.0)) return Beta::infinite();
    return Beta{std::log1p(2.0 / (p.nu - 1.0)) / omega0};
}

double scaled_nu(double occupation, double r) {
    if (!(occupation > 0.0)) return 1.0;
    return 1.0 + 2.0 / std::expm1(r * std::log1p(1.0 / occupation));
}

double chernoff_norm(double occupation, double r) {
    if (!(occupation > 0.0)) return 1.0;
    // 1 / [(1+N)^r - N^r] without the cancellation
    return 1.0 / (std::pow(occupation, r) * std::expm1(r * std::log1p(1.0 / occupation)));
}

ChernoffTerms chernoff_terms(const GaussianParams& b, const GaussianParams& f, double r) {
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("Gaussian Chernoff exponent must lie in (0, 1)");
    const double n_b = occupation_of(b), n_f = occupation_of(f);
    ChernoffTerms terms;
    terms.nu_r_b = scaled_nu(n_b, r);
    terms.nu_r_f = scaled_nu(n_f, 1.0 - r);
    terms.norm_r_b = chernoff_norm(n_b, r);
    terms.norm_r_f = chernoff_norm(n_f, 1.0 - r);
    terms.delta = b.xi - f.xi;
    return terms;
}

double gaussian_chernoff_r(const GaussianParams& b, const GaussianParams& f, double r) {
    const ChernoffTerms terms = chernoff_terms(b, f, r);
    const GaussianMoments mb = params_to_moments(b);
    const GaussianMoments mf = params_to_moments(f);
    const Eigen::Matrix2d combined = (terms.nu_r_b / std::max(b.nu, 1.0)) * mb.sigma +
                                     (terms.nu_r_f / std::max(f.nu, 1.0)) * mf.sigma;
    const double det = combined.determinant();
    if (!std::isfinite(det) || !(det > 0.0))
        throw std::domain_error("singular Chernoff covariance sum");
    const double quad = terms.delta.dot(combined.inverse() * terms.delta);
    return 2.0 * terms.norm_r_b * terms.norm_r_f * std::exp(-quad) / std::sqrt(det);
}

double gaussian_chernoff_r_unsqueezed(const GaussianParams& b, const GaussianParams& f, double r) {
    if (b.chi_mod != 0.0 || f.chi_mod != 0.0)
        throw std::domain_error("reduced Chernoff formula requires unsqueezed states");
    const ChernoffTerms terms = chernoff_terms(b, f, r);
    const double width = terms.nu_r_b + terms.nu_r_f;
    return 2.0 * terms.norm_r_b * terms.norm_r_f / width *
           std::exp(-terms.delta.squaredNorm() / width);
}

Eigen::Vector2d closed_form_delta(const Eigen::Vector2d& xi0, const BathSpec& bath, double t) {
    const double n_th = thermal_ratio(bath.beta, bath.omega0);
    const double half = 0.5 * bath.gamma * t;
    return xi0 * (std::exp(-half) - std::exp(-half / n_th));
}

double chernoff_closed_form_exponent(const GaussianParams& input, const BathSpec& bath,
                                     double t, double r) {
    bath.validate();
    input.validate();
    if (!(t >= 0.0)) throw std::domain_error("evolution time must be non-negative");
    if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("Chernoff exponent r must lie in [0, 1]");
    const double nu_bath = thermal_ratio(bath.beta, bath.omega0);
    if (input.chi_mod != 0.0 || std::abs(input.nu - nu_bath) > 1e-12 * nu_bath)
        throw std::domain_error("closed form precondition violated");

    const double n = occupation_number(Statistics::Bosonic, bath.beta, bath.omega0);
    // N_b f_r = N^{1-r}(N+1)^r + N^r(N+1)^{1-r}, finite as N -> 0
    const double nf_r = std::pow(n, 1.0 - r) * std::pow(n + 1.0, r) +
                        std::pow(n, r) * std::pow(n + 1.0, 1.0 - r);
    const double delta2 = closed_form_delta(input.xi, bath, t).squaredNorm();
    return -0.5 * delta2 * (1.0 + 2.0 * n - nf_r);
}

double chernoff_closed_form(const GaussianParams& input, const BathSpec& bath, double t,
                            double r) {
    return std::exp(chernoff_closed_form_exponent(input, bath, t, r));
}

double optimal_time_qho(const BathSpec& bath) {
    bath.validate();
    if (bath.beta.is_infinite()) throw std::domain_error("no discrimination at zero temperature");
    const double n_th = thermal_ratio(bath.beta, bath.omega0);
    const double excess = n_th - 1.0;
    if (excess == 0.0) return 2.0 / bath.gamma;
    return 2.0 * n_th * std::log1p(excess) / (bath.gamma * excess);
}

BestTemperature best_bath_temperature(double xi0_norm, double gamma, double omega0) {
    if (!(xi0_norm > 0.0)) throw std::domain_error("best temperature needs |xi0| > 0");
    const Eigen::Vector2d xi0(xi0_norm, 0.0);

    auto bath_at = [&](double log_occupation) {
        const double beta_omega = std::log1p(std::exp(-log_occupation));
        return make_bath(Statistics::Bosonic, beta_omega, gamma, omega0);
    };
    auto q_at = [&](double log_occupation) {
        const BathSpec bath = bath_at(log_occupation);
        const GaussianParams input = GaussianParams::displaced_thermal(xi0, bath);
        return chernoff_closed_form(input, bath, optimal_time_qho(bath), 0.5);
    };

    MinimizeOptions opts;
    opts.prescan_points = 41;
    opts.x_tolerance = 1e-10;
    const ScalarMinimum m = minimize_scalar(q_at, std::log(1e-3), std::log(1e3), opts);

    const BathSpec bath = bath_at(m.x);
    BestTemperature out;
    out.occupation = std::exp(m.x);
    out.beta_omega = beta_omega(bath);
    out.t_bar = optimal_time_qho(bath);
    out.q_best = m.value;
    out.kappa = -std::log(m.value) / (xi0_norm * xi0_norm);
    return out;
}

std::vector<Beta> state_temperature_trajectory(const GaussianParams& p0, const BathSpec& bath,
                                               std::span<const double> t_grid) {
    std::vector<Beta> out;
    out.reserve(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (i > 0 && t_grid[i] < t_grid[i - 1])
            throw std::invalid_argument("time grid must be ascending");
        out.push_back(state_beta(evolve_gaussian(p0, bath, t_grid[i]), bath.omega0));
    }
    return out;
}

ChernoffMinimum qho_chernoff(const BathSpec& bath, const GaussianParams& p0, double t) {
    const GaussianParams b = evolve_gaussian(p0, bath.with(Statistics::Bosonic), t);
    const GaussianParams f = evolve_gaussian(p0, bath.with(Statistics::Fermionic), t);
    return minimize_chernoff_over_r(
        [&](double r) { return gaussian_chernoff_r(b, f, r); }, kOpenUnitInterval);
}

DiscriminationCurve qho_curve(const BathSpec& bath, const GaussianParams& p0,
                              std::span<const double> times) {
    const BathSpec bose = bath.with(Statistics::Bosonic);
    const BathSpec fermi = bath.with(Statistics::Fermionic);
    return assemble_curve(times, [&](double t) {
        const GaussianParams b = evolve_gaussian(p0, bose, t);
        const GaussianParams f = evolve_gaussian(p0, fermi, t);
        CurveSample s;
        s.chernoff_r = [b, f](double r) { return gaussian_chernoff_r(b, f, r); };
        s.r_interval = kOpenUnitInterval;
        return s;
    });
}

}  // namespace bathtag
