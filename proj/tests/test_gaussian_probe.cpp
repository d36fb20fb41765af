// test_gaussian_probe.cpp: Gaussian parameterization, dynamics and Chernoff quantities

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bathtag/fock_oracle.hpp"
#include "bathtag/gaussian_probe.hpp"
#include "oracles.hpp"

using namespace bathtag;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

BathSpec bath_at(double beta_omega, Statistics s = Statistics::Bosonic) {
    return make_bath(s, beta_omega);
}

GaussianParams random_params(oracle::Rng& rng) {
    GaussianParams p;
    p.nu = rng.uniform(1.0, 4.0);
    p.xi = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    p.chi_mod = rng.uniform(0.0, 0.8);
    p.chi_phase = rng.uniform(-kPi + 1e-9, kPi);
    return p;
}

GaussianParams rotate(const GaussianParams& p, double phi) {
    Eigen::Matrix2d o;
    o << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    GaussianMoments m = params_to_moments(p);
    m.R = o * m.R;
    m.sigma = o * m.sigma * o.transpose();
    return moments_to_params(m);
}

std::pair<GaussianParams, GaussianParams> hypotheses(const GaussianParams& p0, const BathSpec& bath,
                                                     double t) {
    return {evolve_gaussian(p0, bath.with(Statistics::Bosonic), t),
            evolve_gaussian(p0, bath.with(Statistics::Fermionic), t)};
}

// Closed form at r = 1/2 and t = t_bar as a function of N_b, written out directly.
double q_best_profile(double n_b, double xi0) {
    const double n_th = 2 * n_b + 1;
    const double t = 2 * n_th * std::log(n_th) / (n_th - 1);
    const double delta = xi0 * (std::exp(-t / 2) - std::exp(-t / (2 * n_th)));
    return std::exp(-0.5 * delta * delta * (1 + 2 * n_b - 2 * std::sqrt(n_b * (n_b + 1))));
}

}  // namespace

TEST_CASE("reference covariances") {
    CHECK(params_to_moments(GaussianParams::ground()).sigma.isApprox(Eigen::Matrix2d::Identity()));
    const GaussianMoments th = params_to_moments(GaussianParams::thermal_occupation(1.0));
    CHECK(th.sigma.isApprox(3.0 * Eigen::Matrix2d::Identity()));
    const GaussianMoments sq = params_to_moments(GaussianParams::squeezed_vacuum(0.4));
    CHECK(sq.sigma.determinant() == doctest::Approx(1.0));
    CHECK(sq.sigma(0, 0) == doctest::Approx(std::exp(0.8)));
    CHECK(sq.sigma(1, 1) == doctest::Approx(std::exp(-0.8)));
}

TEST_CASE("parameter and moment round trips") {
    oracle::Rng rng(31);
    for (int i = 0; i < 1000; ++i) {
        const GaussianParams p = random_params(rng);
        const GaussianMoments m = params_to_moments(p);
        CHECK(m.sigma.determinant() == doctest::Approx(p.nu * p.nu).epsilon(1e-10));
        const GaussianMoments back = params_to_moments(moments_to_params(m));
        CHECK((back.sigma - m.sigma).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((back.R - m.R).cwiseAbs().maxCoeff() < 1e-12);
        const GaussianMoments via_ladder = ladder_to_moments(moments_to_ladder(m));
        CHECK((via_ladder.sigma - m.sigma).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(moments_to_ladder(m).n_mean == doctest::Approx(mean_excitation(p)).epsilon(1e-10));
    }
}

TEST_CASE("unphysical covariance is rejected") {
    GaussianMoments m;
    m.sigma << 0.5, 0.0, 0.0, 0.5;
    CHECK_THROWS_WITH_AS(moments_to_params(m), doctest::Contains("unphysical covariance"),
                         std::domain_error);
}

TEST_CASE("mean excitation of the equal-energy inputs") {
    CHECK(mean_excitation(GaussianParams::coherent({std::sqrt(2.0), 0.0})) == doctest::Approx(1.0));
    CHECK(mean_excitation(GaussianParams::thermal_occupation(1.0)) == doctest::Approx(1.0));
    CHECK(mean_excitation(GaussianParams::squeezed_vacuum(0.5 * std::acosh(3.0))) == doctest::Approx(1.0));
}

TEST_CASE("moment evolution obeys the damped oscillator equations") {
    oracle::Rng rng(37);
    for (int i = 0; i < 20; ++i) {
        const Statistics s = i % 2 ? Statistics::Bosonic : Statistics::Fermionic;
        const BathSpec bath = make_bath(s, rng.uniform(0.2, 3.0), rng.uniform(0.3, 2.0), rng.uniform(0.5, 2.0));
        const double rate = characteristic_rate(ProbeKind::QHO, bath);
        const double n_eq = occupation_number(Statistics::Bosonic, bath.beta, bath.omega0);
        const LadderMoments l0 = moments_to_ladder(params_to_moments(random_params(rng)));
        const double t = rng.uniform(0.1, 3.0);
        auto at = [&](double tt) { return evolve_ladder_moments(l0, bath, tt, Frame::Lab); };
        const LadderMoments l = at(t);
        using cd = std::complex<double>;
        const cd da = oracle::derivative([&](double tt) { return at(tt).a_mean; }, t);
        const cd da2 = oracle::derivative([&](double tt) { return at(tt).a2_mean; }, t);
        const double dn = oracle::derivative([&](double tt) { return at(tt).n_mean; }, t);
        const cd w(-0.5 * rate, -bath.omega0);
        CHECK(std::abs(da - w * l.a_mean) < 1e-7);
        CHECK(std::abs(da2 - 2.0 * w * l.a2_mean) < 1e-7);
        CHECK(dn == doctest::Approx(-rate * (l.n_mean - n_eq)).epsilon(1e-7));
    }
}

TEST_CASE("evolution keeps det sigma >= 1 and reaches the bath state") {
    oracle::Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        const GaussianParams p0 = random_params(rng);
        const BathSpec bath = bath_at(rng.uniform(0.1, 4.0), i % 2 ? Statistics::Bosonic : Statistics::Fermionic);
        for (double t : {0.1, 0.5, 1.0, 3.0, 10.0})
            CHECK(params_to_moments(evolve_gaussian(p0, bath, t)).sigma.determinant() >= 1.0 - 1e-10);
        const GaussianParams late = evolve_gaussian(p0, bath, 80.0 * thermal_ratio(bath.beta, 1.0));
        CHECK(late.nu == doctest::Approx(thermal_ratio(bath.beta, 1.0)).epsilon(1e-9));
        CHECK(late.xi.norm() < 1e-12);
        CHECK(late.chi_mod < 1e-6);
    }
}

TEST_CASE("state temperature trajectory") {
    const BathSpec bath = bath_at(0.5);
    const GaussianParams p0 = GaussianParams::thermal_occupation(0.2);
    const std::vector<double> grid{0.0, 1.0, 3.0, 100.0};
    const auto tb = state_temperature_trajectory(p0, bath.with(Statistics::Bosonic), grid);
    const auto tf = state_temperature_trajectory(p0, bath.with(Statistics::Fermionic), grid);
    const double beta0 = state_beta(p0, 1.0).value();
    CHECK(tb[0].value() == doctest::Approx(beta0));
    CHECK(tb[3].value() == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(tf[3].value() == doctest::Approx(0.5).epsilon(1e-8));
    for (int k = 1; k <= 2; ++k)
        CHECK(std::abs(tf[k].value() - 0.5) > std::abs(tb[k].value() - 0.5));
    CHECK(state_beta(GaussianParams::ground(), 1.0).is_infinite());
}

TEST_CASE("scaled nu and normalization match their exponential definitions") {
    oracle::Rng rng(43);
    for (int i = 0; i < 500; ++i) {
        const double n = std::exp(rng.uniform(std::log(1e-3), std::log(50.0)));
        const double r = rng.uniform(0.01, 0.99);
        const double e = std::pow(n / (n + 1), r);  // e^{-r beta omega0}
        CHECK(scaled_nu(n, r) == doctest::Approx((1 + e) / (1 - e)).epsilon(1e-12));
        CHECK(chernoff_norm(n, r) == doctest::Approx(1 / (std::pow(1 + n, r) - std::pow(n, r))).epsilon(1e-12));
    }
    CHECK(scaled_nu(0.0, 0.3) == 1.0);
    CHECK(chernoff_norm(0.0, 0.3) == 1.0);
}

TEST_CASE("Gaussian Chernoff of two thermal states equals the diagonal sum") {
    for (auto [nb, nf] : {std::pair{0.3, 1.7}, std::pair{2.0, 0.05}, std::pair{1.0, 1.0}}) {
        const GaussianParams b = GaussianParams::thermal_occupation(nb);
        const GaussianParams f = GaussianParams::thermal_occupation(nf);
        for (double r : {0.1, 0.5, 0.8}) {
            double ref = 0.0;
            for (int k = 0; k < 4000; ++k)
                ref += std::pow(std::pow(nb / (nb + 1), k) / (nb + 1), r) *
                       std::pow(std::pow(nf / (nf + 1), k) / (nf + 1), 1 - r);
            CHECK(gaussian_chernoff_r(b, f, r) == doctest::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("Gaussian Chernoff matches truncated Fock matrices") {
    oracle::Rng rng(47);
    for (int i = 0; i < 8; ++i) {
        GaussianParams p0 = random_params(rng);
        p0.nu = rng.uniform(1.0, 2.0);
        p0.xi *= 0.6;
        p0.chi_mod *= 0.5;
        const BathSpec bath = bath_at(rng.uniform(0.5, 3.0));
        const auto [b, f] = hypotheses(p0, bath, rng.uniform(0.2, 2.0));
        const FockDensity rb = build_initial_state_auto(b), rf = build_initial_state_auto(f);
        REQUIRE(rb.dim() == rf.dim());
        for (double r : {0.25, 0.5, 0.7})
            CHECK(gaussian_chernoff_r(b, f, r) ==
                  doctest::Approx(oracle::chernoff_brute(rb.matrix, rf.matrix, r)).epsilon(1e-8));
    }
}

TEST_CASE("unsqueezed reduction equals the general formula") {
    oracle::Rng rng(53);
    for (int i = 0; i < 300; ++i) {
        GaussianParams b = random_params(rng), f = random_params(rng);
        b.chi_mod = f.chi_mod = 0.0;
        const double r = rng.uniform(0.01, 0.99);
        CHECK(gaussian_chernoff_r_unsqueezed(b, f, r) ==
              doctest::Approx(gaussian_chernoff_r(b, f, r)).epsilon(1e-12));
    }
}

TEST_CASE("closed form agrees with the general Chernoff formula") {
    oracle::Rng rng(59);
    for (int i = 0; i < 200; ++i) {
        const BathSpec bath = bath_at(rng.uniform(0.05, 4.0));
        const GaussianParams input = GaussianParams::displaced_thermal({rng.uniform(-3, 3), rng.uniform(-3, 3)}, bath);
        const double t = rng.uniform(0.0, 12.0);
        const double r = rng.uniform(0.01, 0.99);
        const auto [b, f] = hypotheses(input, bath, t);
        CHECK(chernoff_closed_form(input, bath, t, r) ==
              doctest::Approx(gaussian_chernoff_r(b, f, r)).epsilon(1e-10));
        const Eigen::Vector2d d = closed_form_delta(input.xi, bath, t);
        CHECK((b.xi - f.xi - d).norm() < 1e-12);
    }
    const BathSpec bath = bath_at(1.0);
    CHECK_THROWS_WITH_AS(chernoff_closed_form(GaussianParams::squeezed_vacuum(0.2), bath, 1.0, 0.5),
                         "closed form precondition violated", std::domain_error);
    CHECK_THROWS_AS(chernoff_closed_form(GaussianParams::ground(), bath, 1.0, 0.5), std::domain_error);
}

TEST_CASE("Chernoff quantity is invariant under a common quadrature rotation") {
    oracle::Rng rng(61);
    for (int i = 0; i < 200; ++i) {
        const BathSpec bath = bath_at(rng.uniform(0.2, 3.0));
        const auto [b, f] = hypotheses(random_params(rng), bath, rng.uniform(0.1, 3.0));
        const double phi = rng.uniform(-kPi, kPi), r = rng.uniform(0.05, 0.95);
        CHECK(gaussian_chernoff_r(rotate(b, phi), rotate(f, phi), r) ==
              doctest::Approx(gaussian_chernoff_r(b, f, r)).epsilon(1e-10));
    }
}

TEST_CASE("lab and rotating frames give the same Chernoff quantity") {
    const BathSpec bath = bath_at(0.7);
    const GaussianParams p0{1.4, {0.8, -0.3}, 0.3, 0.9};
    for (double t : {0.3, 1.1, 2.7}) {
        auto lab = [&](Statistics s) {
            const LadderMoments l = evolve_ladder_moments(moments_to_ladder(params_to_moments(p0)),
                                                          bath.with(s), t, Frame::Lab);
            return moments_to_params(ladder_to_moments(l));
        };
        const auto [b, f] = hypotheses(p0, bath, t);
        CHECK(gaussian_chernoff_r(lab(Statistics::Bosonic), lab(Statistics::Fermionic), 0.4) ==
              doctest::Approx(gaussian_chernoff_r(b, f, 0.4)).epsilon(1e-10));
    }
}

TEST_CASE("optimal QHO time agrees with a brute-force argmin") {
    for (double bw : {0.05, 0.3, 1.0, 2.0}) {
        const BathSpec bath = bath_at(bw);
        const GaussianParams input = GaussianParams::displaced_thermal({1.0, 0.0}, bath);
        auto exponent = [&](double t) { return chernoff_closed_form_exponent(input, bath, t, 0.5); };
        const double ref = oracle::grid_argmin(exponent, 0.0, 60.0 * thermal_ratio(bath.beta, 1.0));
        CHECK(optimal_time_qho(bath) == doctest::Approx(ref).epsilon(1e-6));
    }
    CHECK(optimal_time_qho(bath_at(std::log(3.0))) == doctest::Approx(4.0 * std::log(2.0)));
    CHECK_THROWS_AS(optimal_time_qho(bath_at(kInf)), std::domain_error);
}

TEST_CASE("best bath temperature") {
    const BestTemperature best = best_bath_temperature(1.0);
    const double log_ref = oracle::grid_argmin([](double u) { return q_best_profile(std::exp(u), 1.0); },
                                               std::log(1e-2), std::log(1e2));
    CHECK(best.occupation == doctest::Approx(std::exp(log_ref)).epsilon(1e-5));
    CHECK(best.occupation == doctest::Approx(1.96).epsilon(0.01));
    CHECK(best.t_bar == doctest::Approx(4.0).epsilon(0.025));
    CHECK(best.kappa == doctest::Approx(0.0145).epsilon(0.03));
    CHECK(best.q_best == doctest::Approx(std::exp(-best.kappa)));
    // kappa does not depend on the displacement.
    CHECK(best_bath_temperature(2.5).kappa == doctest::Approx(best.kappa).epsilon(1e-6));
}

TEST_CASE("ground-input Chernoff curve shape") {
    for (double inv : {1.5, 5.5, 10.5}) {
        const BathSpec bath = bath_at(1.0 / inv);
        const std::vector<double> t = linear_grid(0.0, 400.0, 801);
        const DiscriminationCurve c = qho_curve(bath, GaussianParams::ground(), t);
        CHECK(c.chernoff_q.front() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(c.chernoff_q.back() == doctest::Approx(1.0).epsilon(1e-9));
        const double lowest = *std::min_element(c.chernoff_q.begin(), c.chernoff_q.end());
        CHECK(lowest < 1.0 - 1e-4);
    }
}

TEST_CASE("zero temperature gives no information") {
    const BathSpec cold = bath_at(kInf);
    for (const GaussianParams& p : {GaussianParams::ground(), GaussianParams::coherent({1.0, 2.0}),
                                    GaussianParams::squeezed_vacuum(0.6, 1.0)})
        for (double t : {0.0, 0.5, 2.0, 9.0})
            CHECK(qho_chernoff(cold, p, t).q == doctest::Approx(1.0).epsilon(1e-12));
}
