#include "bathtag/oracle_suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "bathtag/fock_oracle.hpp"
#include "bathtag/gaussian_probe.hpp"
#include "bathtag/tls_probe.hpp"

namespace bathtag {

namespace {

struct CaseSpec {
    ProbeKind probe;
    double beta_omega;
    double t;
    InitialState input;
    std::string label;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

// Keeps rounding residue from printing as "-0.0000" in case labels.
double tidy(double x) {
    return std::abs(x) < 5e-5 ? 0.0 : x;
}

std::vector<CaseSpec> draw_cases(const OracleSuiteConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    // beta*omega0 >= 0.3 keeps N_b below 3
    auto temperature = [&] { return cfg.beta_omega ? *cfg.beta_omega : uniform(0.3, 3.0); };

    std::vector<CaseSpec> out;
    if (cfg.tls) {
        for (int i = 0; i < cfg.cases_per_probe; ++i) {
            const double bw = temperature();
            const double t = uniform(0.2, 5.0) / cfg.gamma;
            const double radius = i == 0 ? 1.0 : uniform(0.5, 1.0);
            const double cos_polar = i == 0 ? 1.0 : uniform(-1.0, 1.0);
            const double azimuth = uniform(0.0, 2.0 * std::numbers::pi);
            const double sin_polar = std::sqrt(1.0 - cos_polar * cos_polar);
            BlochVector v{radius * sin_polar * std::cos(azimuth),
                          radius * sin_polar * std::sin(azimuth), radius * cos_polar};
            out.push_back({ProbeKind::TLS, bw, t, v,
                           fmt("bloch(%.4f,%.4f,%.4f)", tidy(v.sx), tidy(v.sy), tidy(v.sz))});
        }
    }
    if (cfg.qho) {
        for (int i = 0; i < cfg.cases_per_probe; ++i) {
            const double bw = temperature();
            const double t = uniform(0.2, 4.0) / cfg.gamma;
            const double angle = uniform(-std::numbers::pi, std::numbers::pi);
            GaussianParams p;
            std::string label;
            switch (i % 5) {
                case 0:
                    label = "ground";
                    break;
                case 1: {
                    const double amp = uniform(0.3, 1.5);
                    p.xi << amp * std::cos(angle), amp * std::sin(angle);
                    label = fmt("coherent(%.4f,%.4f)", p.xi(0), p.xi(1));
                    break;
                }
                case 2:
                    p.nu = 2.0 * uniform(0.1, 1.0) + 1.0;
                    label = fmt("thermal(nu=%.4f)", p.nu);
                    break;
                case 3:
                    p.chi_mod = uniform(0.1, 0.5);
                    p.chi_phase = angle;
                    label = fmt("squeezed(%.4f,%.4f)", p.chi_mod, p.chi_phase);
                    break;
                default: {
                    p.nu = uniform(1.0, 2.0);
                    p.xi << uniform(-0.8, 0.8), uniform(-0.8, 0.8);
                    p.chi_mod = uniform(0.0, 0.3);
                    p.chi_phase = angle;
                    label = fmt("general(nu=%.4f,chi=%.4f,phase=%.4f)", p.nu, p.chi_mod, p.chi_phase);
                }
            }
            out.push_back({ProbeKind::QHO, bw, t, p, label});
        }
    }
    return out;
}

double ladder_deviation(const LadderMoments& a, const LadderMoments& b) {
    return std::max({std::abs(a.a_mean - b.a_mean), std::abs(a.a2_mean - b.a2_mean),
                     std::abs(a.n_mean - b.n_mean)});
}

double bloch_deviation(const BlochVector& a, const BlochVector& b) {
    return std::max({std::abs(a.sx - b.sx), std::abs(a.sy - b.sy), std::abs(a.sz - b.sz)});
}

OracleCase evaluate(const CaseSpec& spec, const OracleSuiteConfig& cfg) {
    OracleCase c;
    c.probe = spec.probe;
    c.beta_omega = spec.beta_omega;
    c.t = spec.t;
    c.input = spec.label;
    try {
        const BathSpec bose = make_bath(Statistics::Bosonic, spec.beta_omega, cfg.gamma, cfg.omega0);
        const BathSpec fermi = bose.with(Statistics::Fermionic);
        const FockDensity rho0 = cfg.dim ? build_initial_state(spec.input, *cfg.dim)
                                         : build_initial_state_auto(spec.input);
        c.dim = rho0.dim();
        const double dt = cfg.dt ? *cfg.dt : default_time_step(bose, spec.probe);
        const FockEvolution eb = evolve_density(rho0, bose, spec.probe, spec.t, dt);
        const FockEvolution ef = evolve_density(rho0, fermi, spec.probe, spec.t, dt);
        c.tail = std::max(eb.max_tail_population, ef.max_tail_population);

        if (spec.probe == ProbeKind::TLS) {
            const BlochVector v0 = std::get<BlochVector>(spec.input);
            const BlochVector vb = evolve_bloch(v0, bose, spec.t, Frame::Lab);
            const BlochVector vf = evolve_bloch(v0, fermi, spec.t, Frame::Lab);
            c.bloch_dev = std::max(bloch_deviation(vb, bloch_from_density(eb.rho)),
                                   bloch_deviation(vf, bloch_from_density(ef.rho)));
            c.distance_dev =
                std::abs(trace_norm_distance(eb.rho, ef.rho) - trace_distance_tls(vb, vf));
            const QubitChernoffInputs in = QubitChernoffInputs::from_bloch(vb, vf);
            for (double r : {0.25, 0.5, 0.75})
                c.q_dev = std::max(c.q_dev, std::abs(chernoff_direct(eb.rho, ef.rho, r) -
                                                     qubit_chernoff_r(in, r)));
        } else {
            const GaussianParams p0 = std::get<GaussianParams>(spec.input);
            const LadderMoments l0 = moments_to_ladder(params_to_moments(p0));
            c.moment_dev = std::max(
                ladder_deviation(evolve_ladder_moments(l0, bose, spec.t, Frame::Lab),
                                 ladder_from_density(eb.rho)),
                ladder_deviation(evolve_ladder_moments(l0, fermi, spec.t, Frame::Lab),
                                 ladder_from_density(ef.rho)));
            const GaussianParams pb = evolve_gaussian(p0, bose, spec.t, Frame::Lab);
            const GaussianParams pf = evolve_gaussian(p0, fermi, spec.t, Frame::Lab);
            for (double r : {0.3, 0.5, 0.7})
                c.q_dev = std::max(c.q_dev, std::abs(chernoff_direct(eb.rho, ef.rho, r) -
                                                     gaussian_chernoff_r(pb, pf, r)));
        }
        if (c.tail > cfg.thresholds.tail)
            c.error = fmt("increase truncation (tail population %.3g)", c.tail);
    } catch (const std::exception& e) {
        c.error = e.what();
    }
    return c;
}

}  // namespace

std::vector<OracleCase> run_oracle_cases(const OracleSuiteConfig& config) {
    if (config.cases_per_probe < 1) throw std::invalid_argument("need at least one case per probe");
    const std::vector<CaseSpec> specs = draw_cases(config);
    std::vector<OracleCase> results(specs.size());

    unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(specs.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++)
            results[i] = evaluate(specs[i], config);
    };
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    return results;
}

OracleReport summarize(const std::vector<OracleCase>& cases, const OracleThresholds& th) {
    OracleReport report;
    report.cases = static_cast<int>(cases.size());
    for (const OracleCase& c : cases) {
        report.max_bloch_dev = std::max(report.max_bloch_dev, c.bloch_dev);
        report.max_moment_dev = std::max(report.max_moment_dev, c.moment_dev);
        report.max_q_dev = std::max(report.max_q_dev, c.q_dev);
        report.max_distance_dev = std::max(report.max_distance_dev, c.distance_dev);
        report.tail_population = std::max(report.tail_population, c.tail);

        const bool ok = c.error.empty() && c.bloch_dev <= th.bloch && c.moment_dev <= th.moment &&
                        c.q_dev <= th.q && c.distance_dev <= th.distance && c.tail <= th.tail &&
                        std::isfinite(c.q_dev);
        if (!ok && report.passed) {
            report.passed = false;
            report.failure = describe(c);
        }
    }
    return report;
}

std::string describe(const OracleCase& c) {
    std::string s = std::string(to_string(c.probe)) +
                    fmt(" beta_omega=%.6g t=%.6g", c.beta_omega, c.t) + " input=" + c.input +
                    " dim=" + std::to_string(c.dim);
    if (!c.error.empty()) return s + ": " + c.error;
    return s + fmt(": bloch_dev=%.3g moment_dev=%.3g", c.bloch_dev, c.moment_dev) +
           fmt(" q_dev=%.3g distance_dev=%.3g tail=%.3g", c.q_dev, c.distance_dev, c.tail);
}

}  // namespace bathtag
