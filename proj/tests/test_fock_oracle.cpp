// test_fock_oracle.cpp: truncated density matrices, Lindblad integration, oracle harness

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bathtag/fock_oracle.hpp"
#include "bathtag/oracle_suite.hpp"
#include "oracles.hpp"

using namespace bathtag;

namespace {

BathSpec bath_at(double beta_omega, Statistics s = Statistics::Bosonic) {
    return make_bath(s, beta_omega);
}

// N_b = 3.
const double kWarm = std::log(4.0 / 3.0);

}  // namespace

TEST_CASE("initial states have the expected Fock populations") {
    const FockDensity g = build_initial_state(GaussianParams::ground(), 16);
    CHECK(g.matrix(0, 0).real() == doctest::Approx(1.0));
    CHECK(g.matrix.cwiseAbs().sum() == doctest::Approx(1.0));

    const FockDensity th = build_initial_state(GaussianParams::thermal_occupation(1.0), 64);
    for (int n = 0; n < 20; ++n) CHECK(th.matrix(n, n).real() == doctest::Approx(std::pow(0.5, n + 1)).epsilon(1e-10));
    CHECK(ladder_from_density(th).n_mean == doctest::Approx(1.0).epsilon(1e-9));

    const FockDensity coh = build_initial_state(GaussianParams::coherent({std::sqrt(2.0), 0.0}), 64);
    CHECK(std::abs(ladder_from_density(coh).n_mean - 1.0) < 1e-8);
    double poisson = std::exp(-1.0);
    for (int n = 0; n < 20; ++n) {
        CHECK(coh.matrix(n, n).real() == doctest::Approx(poisson).epsilon(1e-9));
        poisson /= (n + 1);
    }

    const double chi = 0.5;
    const FockDensity sq = build_initial_state(GaussianParams::squeezed_vacuum(chi), 64);
    CHECK(sq.matrix(0, 0).real() == doctest::Approx(1.0 / std::cosh(chi)).epsilon(1e-10));
    for (int n = 1; n < 20; n += 2) CHECK(std::abs(sq.matrix(n, n)) < 1e-14);

    const FockDensity q = build_initial_state(BlochVector{0.3, -0.4, 0.5}, 64);
    CHECK(q.dim() == 2);
    const BlochVector back = bloch_from_density(q);
    CHECK(back.sx == doctest::Approx(0.3));
    CHECK(back.sy == doctest::Approx(-0.4));
    CHECK(back.sz == doctest::Approx(0.5));
}

TEST_CASE("Fock construction reproduces the Gaussian moments") {
    oracle::Rng rng(67);
    for (int i = 0; i < 12; ++i) {
        GaussianParams p;
        p.nu = rng.uniform(1.0, 2.5);
        p.xi = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
        p.chi_mod = rng.uniform(0.0, 0.6);
        p.chi_phase = rng.uniform(-3.0, 3.0);
        const LadderMoments ref = moments_to_ladder(params_to_moments(p));
        const LadderMoments got = ladder_from_density(build_initial_state_auto(p));
        CHECK(std::abs(got.a_mean - ref.a_mean) < 1e-8);
        CHECK(std::abs(got.a2_mean - ref.a2_mean) < 1e-8);
        CHECK(got.n_mean == doctest::Approx(ref.n_mean).epsilon(1e-8));
    }
}

TEST_CASE("truncation tail is policed") {
    const GaussianParams big = GaussianParams::coherent({6.0, 0.0});
    CHECK_THROWS_WITH_AS(build_initial_state(big, 16), doctest::Contains("increase truncation"),
                         std::domain_error);
    const FockDensity auto_dim = build_initial_state_auto(big, 16, 1024);
    CHECK(auto_dim.dim() > 16);
    CHECK(auto_dim.tail_population() < 1e-10);
}

TEST_CASE("density validation") {
    FockDensity rho{Eigen::MatrixXcd::Identity(3, 3)};
    CHECK_THROWS_AS(rho.validate(), std::domain_error);
    rho.matrix /= 3.0;
    CHECK_NOTHROW(rho.validate());
}

TEST_CASE("Gibbs states are stationary") {
    for (Statistics s : {Statistics::Bosonic, Statistics::Fermionic}) {
        const BathSpec bath = bath_at(0.8, s);
        const double w = std::exp(-0.8);
        Eigen::MatrixXcd tls = Eigen::MatrixXcd::Zero(2, 2);
        tls(0, 0) = 1.0 / (1.0 + w);
        tls(1, 1) = w / (1.0 + w);
        CHECK(lindblad_generator(tls, bath).cwiseAbs().maxCoeff() < 1e-14);

        Eigen::MatrixXcd qho = Eigen::MatrixXcd::Zero(40, 40);
        for (int n = 0; n < 40; ++n) qho(n, n) = (1.0 - w) * std::pow(w, n);
        CHECK(lindblad_generator(qho, bath).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("oversized steps are reported") {
    const FockDensity rho = build_initial_state(GaussianParams::thermal_occupation(2.0), 64);
    CHECK_THROWS_WITH_AS(lindblad_step(rho, bath_at(kWarm), ProbeKind::QHO, 5.0),
                         "step size too large", std::domain_error);
}

TEST_CASE("TLS integration follows the Bloch solution") {
    for (Statistics s : {Statistics::Bosonic, Statistics::Fermionic}) {
        const BathSpec bath = bath_at(0.6, s);
        const BlochVector v0{0.6, 0.0, 0.8};
        FockDensity rho = build_initial_state(v0, 2);
        const double dt = default_time_step(bath, ProbeKind::TLS);
        for (double t : {2.0, 4.0, 6.0, 8.0, 10.0}) {
            rho = evolve_density(rho, bath, ProbeKind::TLS, 2.0, dt).rho;
            const BlochVector ref = evolve_bloch(v0, bath, t, Frame::Lab);
            const BlochVector got = bloch_from_density(rho);
            CHECK(std::abs(got.sx - ref.sx) < 1e-6);
            CHECK(std::abs(got.sy - ref.sy) < 1e-6);
            CHECK(std::abs(got.sz - ref.sz) < 1e-6);
        }
    }
}

TEST_CASE("QHO integration follows the moment solution") {
    const BathSpec bath = bath_at(1.2, Statistics::Fermionic);
    const GaussianParams p0{1.3, {0.7, -0.4}, 0.3, 0.5};
    const FockDensity rho0 = build_initial_state(p0, 64);
    const FockEvolution ev = evolve_density(rho0, bath, ProbeKind::QHO, 1.5,
                                            default_time_step(bath, ProbeKind::QHO));
    const LadderMoments ref =
        evolve_ladder_moments(moments_to_ladder(params_to_moments(p0)), bath, 1.5, Frame::Lab);
    const LadderMoments got = ladder_from_density(ev.rho);
    CHECK(std::abs(got.a_mean - ref.a_mean) < 1e-6);
    CHECK(std::abs(got.a2_mean - ref.a2_mean) < 1e-6);
    CHECK(std::abs(got.n_mean - ref.n_mean) < 1e-6);
    CHECK(ev.max_tail_population < 1e-8);
}

TEST_CASE("trace norm and Chernoff on matrices") {
    const FockDensity e0 = build_initial_state(BlochVector::ground(), 2);
    const FockDensity e1 = build_initial_state(BlochVector::excited(), 2);
    CHECK(trace_norm_distance(e0, e0) == doctest::Approx(0.0).scale(1.0));
    CHECK(trace_norm_distance(e0, e1) == doctest::Approx(2.0));

    const FockDensity th = build_initial_state(GaussianParams::thermal_occupation(0.7), 48);
    for (double r : {0.1, 0.5, 0.9}) CHECK(chernoff_direct(th, th, r) == doctest::Approx(1.0).epsilon(1e-10));

    const FockDensity c = build_initial_state(GaussianParams::coherent({0.5, 0.2}), 48);
    CHECK(chernoff_direct(th, c, 0.4) ==
          doctest::Approx(oracle::chernoff_brute(th.matrix, c.matrix, 0.4)).epsilon(1e-10));
}

TEST_CASE("truncation convergence from 64 to 128 levels") {
    const BathSpec bath = bath_at(kWarm);
    const GaussianParams p0 = GaussianParams::coherent({1.0, 0.5});
    auto q_at = [&](int dim) {
        const double dt = default_time_step(bath, ProbeKind::QHO);
        const FockDensity rho0 = build_initial_state(p0, dim);
        const FockDensity b = evolve_density(rho0, bath.with(Statistics::Bosonic), ProbeKind::QHO, 0.5, dt).rho;
        const FockDensity f = evolve_density(rho0, bath.with(Statistics::Fermionic), ProbeKind::QHO, 0.5, dt).rho;
        return chernoff_direct(b, f, 0.5);
    };
    CHECK(std::abs(q_at(64) - q_at(128)) < 1e-8);
}

TEST_CASE("oracle harness") {
    OracleSuiteConfig cfg;
    cfg.cases_per_probe = 2;
    const OracleReport ok = run_oracle_suite(cfg);
    CHECK(ok.passed);
    CHECK(ok.cases == 4);
    CHECK(ok.max_q_dev <= 1e-5);

    cfg.dt = 0.1;
    const OracleReport coarse = run_oracle_suite(cfg);
    CHECK_FALSE(coarse.passed);

    OracleSuiteConfig small;
    small.cases_per_probe = 2;
    small.tls = false;
    small.dim = 8;
    small.beta_omega = kWarm;
    const OracleReport trunc = run_oracle_suite(small);
    CHECK_FALSE(trunc.passed);
    CHECK(trunc.failure.find("increase truncation") != std::string::npos);

    // Same seed, same cases.
    const auto a = run_oracle_cases(small), b = run_oracle_cases(small);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].t == b[i].t);
}
