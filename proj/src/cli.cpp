#include "bathtag/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "bathtag/bath_core.hpp"
#include "bathtag/csv.hpp"
#include "bathtag/discriminate.hpp"
#include "bathtag/gaussian_probe.hpp"
#include "bathtag/oracle_suite.hpp"
#include "bathtag/tls_probe.hpp"

namespace bathtag::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Degenerate : std::runtime_error {
    Degenerate() : std::runtime_error("degenerate: no discrimination") {}
};

struct RunConfig {
    std::string probe{"tls"};
    std::string statistics{"both"};
    std::optional<std::string> beta_omega;
    std::optional<double> inv_beta_omega;
    double gamma{1.0};
    double omega0{1.0};
    std::optional<double> t_max;
    std::optional<int> steps;
    std::optional<std::string> input;
    std::optional<int> dim;
    std::optional<double> dt;
    std::string out_path;
    int precision{12};
    std::string frame{"rotating"};
    bool helstrom{false};
    std::vector<double> sweep;
    int cases{20};
    std::uint64_t seed{20190315};
};

std::optional<double> temperature(const RunConfig& c) {
    if (c.beta_omega) {
        const std::string& s = *c.beta_omega;
        if (s == "inf" || s == "infinity") return kInf;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw UsageError("--beta-omega expects a number or 'inf', got '" + s + "'");
        }
        if (used != s.size() || !(v >= 0.0))
            throw UsageError("--beta-omega expects a non-negative number or 'inf'");
        return v;
    }
    if (c.inv_beta_omega) {
        const double inv = *c.inv_beta_omega;
        if (!(inv >= 0.0) || std::isinf(inv))
            throw UsageError("--inv-beta-omega expects a non-negative finite number");
        return inv == 0.0 ? kInf : 1.0 / inv;
    }
    return std::nullopt;
}

double required_temperature(const RunConfig& c) {
    const auto bw = temperature(c);
    if (!bw) throw UsageError("a bath temperature is required (--beta-omega or --inv-beta-omega)");
    return *bw;
}

BathSpec bath_for(const RunConfig& c, double beta_omega_value) {
    try {
        return make_bath(Statistics::Bosonic, beta_omega_value, c.gamma, c.omega0);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

ProbeKind probe_of(const RunConfig& c) {
    if (c.probe == "tls") return ProbeKind::TLS;
    if (c.probe == "qho") return ProbeKind::QHO;
    throw UsageError("--probe must be tls or qho for this command");
}

Frame frame_of(const RunConfig& c) {
    return c.frame == "lab" ? Frame::Lab : Frame::Rotating;
}

std::pair<std::string, std::vector<double>> split_descriptor(const std::string& text) {
    const auto colon = text.find(':');
    std::pair<std::string, std::vector<double>> out{text.substr(0, colon), {}};
    if (colon == std::string::npos) return out;
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.second.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("malformed --input value '" + text + "'");
        }
    }
    return out;
}

void expect_args(const std::string& text, const std::vector<double>& args, std::size_t n) {
    if (args.size() != n) throw UsageError("malformed --input value '" + text + "'");
}

BlochVector tls_input(const RunConfig& c) {
    const std::string text = c.input.value_or("excited");
    const auto [name, args] = split_descriptor(text);
    BlochVector v;
    if (name == "excited") {
        expect_args(text, args, 0);
        v = BlochVector::excited();
    } else if (name == "ground") {
        expect_args(text, args, 0);
        v = BlochVector::ground();
    } else if (name == "bloch") {
        expect_args(text, args, 2);
        v = BlochVector{args[1], 0.0, args[0]};
    } else {
        throw UsageError("unsupported TLS input '" + text + "'");
    }
    try {
        v.validate();
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
    return v;
}

GaussianParams qho_input(const RunConfig& c, const BathSpec& bath, const std::string& fallback) {
    const std::string text = c.input.value_or(fallback);
    const auto [name, args] = split_descriptor(text);
    try {
        if (name == "ground") {
            expect_args(text, args, 0);
            return GaussianParams::ground();
        }
        if (name == "coherent") {
            expect_args(text, args, 1);
            return GaussianParams::coherent(Eigen::Vector2d(args[0], 0.0));
        }
        if (name == "thermal") {
            expect_args(text, args, 1);
            return GaussianParams::thermal_occupation(args[0]);
        }
        if (name == "squeezed") {
            expect_args(text, args, 1);
            return GaussianParams::squeezed_vacuum(args[0]);
        }
        if (name == "displaced") {
            expect_args(text, args, 1);
            return GaussianParams::displaced_thermal(Eigen::Vector2d(args[0], 0.0), bath);
        }
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unsupported QHO input '" + text + "'");
}

// |xi0| for the closed-form regime, from displaced:amp or coherent:amp.
double displacement_amplitude(const RunConfig& c) {
    if (!c.input) return 1.0;
    const auto [name, args] = split_descriptor(*c.input);
    if ((name != "displaced" && name != "coherent") || args.size() != 1 || !(args[0] > 0.0))
        throw UsageError("this command needs --input displaced:<amp> with amp > 0");
    return args[0];
}

double slowest_rate(ProbeKind probe, const BathSpec& bath) {
    return std::min(characteristic_rate(probe, bath.with(Statistics::Bosonic)),
                    characteristic_rate(probe, bath.with(Statistics::Fermionic)));
}

double t_max_for(const RunConfig& c, ProbeKind probe, const BathSpec& bath) {
    if (c.t_max) {
        if (!(*c.t_max > 0.0)) throw UsageError("--t-max must be positive");
        return *c.t_max;
    }
    return 20.0 / slowest_rate(probe, bath);
}

int steps_for(const RunConfig& c, int fallback) {
    const int steps = c.steps.value_or(fallback);
    if (steps < 2) throw UsageError("--steps must be >= 2");
    return steps;
}

// ---------------------------------------------------------------------------

void cmd_rates(const RunConfig& c, std::ostream& out) {
    const BathSpec bath = bath_for(c, required_temperature(c));
    const RateTable rates = rate_table(bath.beta, bath.gamma, bath.omega0);
    CsvWriter csv(out, c.precision);
    csv.comment("beta_omega=" + format_number(beta_omega(bath), c.precision) +
                " n_th=" + format_number(thermal_ratio(bath.beta, bath.omega0), c.precision) +
                " gamma=" + format_number(bath.gamma, c.precision) +
                " omega0=" + format_number(bath.omega0, c.precision));
    csv.header({"probe", "fermionic", "bosonic"});
    csv.row({std::string("TLS"), rates.rate_tls_fermionic, rates.rate_tls_bosonic});
    csv.row({std::string("QHO"), rates.rate_qho_fermionic, rates.rate_qho_bosonic});
}

void cmd_curve(const RunConfig& c, std::ostream& out) {
    const ProbeKind probe = probe_of(c);
    if (probe == ProbeKind::QHO && c.helstrom)
        throw UsageError("the Helstrom column is not available for the QHO probe "
                         "(only the Chernoff quantity is computed there)");
    const BathSpec bath = bath_for(c, required_temperature(c));
    const std::vector<double> times =
        linear_grid(0.0, t_max_for(c, probe, bath), steps_for(c, 201));
    CsvWriter csv(out, c.precision);

    if (c.statistics != "both") {
        const BathSpec one = bath.with(c.statistics == "bosonic" ? Statistics::Bosonic
                                                                  : Statistics::Fermionic);
        if (probe == ProbeKind::TLS) {
            const BlochVector v0 = tls_input(c);
            csv.header({"t", "sx", "sy", "sz"});
            for (double t : times) {
                const BlochVector v = evolve_bloch(v0, one, t, frame_of(c));
                csv.row({t, v.sx, v.sy, v.sz});
            }
        } else {
            const GaussianParams p0 = qho_input(c, bath, "ground");
            const LadderMoments l0 = moments_to_ladder(params_to_moments(p0));
            csv.header({"t", "a_re", "a_im", "a2_re", "a2_im", "n_mean", "nu", "beta_omega_state"});
            for (double t : times) {
                const LadderMoments l = evolve_ladder_moments(l0, one, t, frame_of(c));
                const GaussianParams p = moments_to_params(ladder_to_moments(l));
                const Beta b = state_beta(p, one.omega0);
                csv.row({t, l.a_mean.real(), l.a_mean.imag(), l.a2_mean.real(), l.a2_mean.imag(),
                         l.n_mean, p.nu, b.is_infinite() ? kInf : b.value() * one.omega0});
            }
        }
        return;
    }

    if (probe == ProbeKind::TLS) {
        const DiscriminationCurve curve = tls_curve(bath, tls_input(c), times, frame_of(c));
        csv.header({"t", "helstrom", "Q", "Q_half", "r_star"});
        for (std::size_t i = 0; i < times.size(); ++i)
            csv.row({times[i], (*curve.helstrom)[i], curve.chernoff_q[i],
                     0.5 * curve.chernoff_q[i], curve.r_star[i]});
    } else {
        const DiscriminationCurve curve = qho_curve(bath, qho_input(c, bath, "ground"), times);
        csv.header({"t", "Q", "Q_half", "r_star"});
        for (std::size_t i = 0; i < times.size(); ++i)
            csv.row({times[i], curve.chernoff_q[i], 0.5 * curve.chernoff_q[i], curve.r_star[i]});
    }
}

struct OptimalRow {
    double t_analytic;
    double t_numeric;
    double value;
};

OptimalRow optimal_row(const RunConfig& c, ProbeKind probe, const BathSpec& bath) {
    if (bath.beta.is_infinite()) throw Degenerate();
    const double t_max = t_max_for(c, probe, bath);
    if (probe == ProbeKind::TLS) {
        if (c.input && *c.input != "excited")
            throw UsageError("the optimal-time formula for the TLS assumes --input excited");
        const BathSpec bose = bath.with(Statistics::Bosonic);
        const BathSpec fermi = bath.with(Statistics::Fermionic);
        const BlochVector v0 = BlochVector::excited();
        const TimeOptimum opt = minimize_over_time(
            [&](double t) {
                return helstrom_error(evolve_bloch(v0, bose, t, Frame::Rotating),
                                      evolve_bloch(v0, fermi, t, Frame::Rotating));
            },
            t_max);
        if (opt.degenerate) throw Degenerate();
        return {optimal_time_tls(bath), opt.t_bar, opt.value};
    }
    const GaussianParams input =
        GaussianParams::displaced_thermal(Eigen::Vector2d(displacement_amplitude(c), 0.0), bath);
    const TimeOptimum opt = minimize_over_time(
        [&](double t) { return chernoff_closed_form_exponent(input, bath, t, 0.5); }, t_max);
    if (opt.degenerate) throw Degenerate();
    return {optimal_time_qho(bath), opt.t_bar, std::exp(opt.value)};
}

void cmd_optimal(const RunConfig& c, std::ostream& out) {
    const ProbeKind probe = probe_of(c);
    CsvWriter csv(out, c.precision);
    std::vector<double> temperatures;
    if (!c.sweep.empty()) {
        if (c.sweep.size() != 2 || !(c.sweep[0] > 0.0) || !(c.sweep[1] >= c.sweep[0]))
            throw UsageError("--sweep-inv-beta-omega expects LO,HI with 0 < LO <= HI");
        for (double inv : linear_grid(c.sweep[0], c.sweep[1], steps_for(c, 21)))
            temperatures.push_back(1.0 / inv);
    } else {
        temperatures.push_back(required_temperature(c));
    }

    std::vector<OptimalRow> rows;
    for (double bw : temperatures) rows.push_back(optimal_row(c, probe, bath_for(c, bw)));

    csv.header({"probe", "beta_omega", "inv_beta_omega", "t_bar_analytic", "t_bar_numeric",
                "rel_diff", "value"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double bw = temperatures[i];
        const OptimalRow& row = rows[i];
        csv.row({std::string(to_string(probe)), bw, 1.0 / bw, row.t_analytic, row.t_numeric,
                 std::abs(row.t_numeric - row.t_analytic) / row.t_analytic, row.value});
    }
}

void cmd_best_temp(const RunConfig& c, std::ostream& out) {
    if (!(c.gamma > 0.0) || !(c.omega0 > 0.0)) throw UsageError("gamma and omega0 must be positive");
    const double amp = displacement_amplitude(c);
    const BestTemperature best = best_bath_temperature(amp, c.gamma, c.omega0);
    CsvWriter csv(out, c.precision);
    csv.header({"xi0", "N_b_best", "beta_omega_best", "gamma_t_bar_best", "kappa", "Q_best"});
    csv.row({amp, best.occupation, best.beta_omega, c.gamma * best.t_bar, best.kappa,
             best.q_best});
}

int cmd_verify(const RunConfig& c, bool probe_given, std::ostream& out, std::ostream& err) {
    OracleSuiteConfig cfg;
    cfg.cases_per_probe = c.cases;
    cfg.seed = c.seed;
    cfg.gamma = c.gamma;
    cfg.omega0 = c.omega0;
    cfg.dim = c.dim;
    cfg.dt = c.dt;
    cfg.beta_omega = temperature(c);
    if (cfg.beta_omega && !(*cfg.beta_omega > 0.0))
        throw UsageError("verify needs a positive bath beta*omega0");
    if (probe_given && c.probe != "both") {
        cfg.tls = c.probe == "tls";
        cfg.qho = c.probe == "qho";
    }
    if (c.cases < 1) throw UsageError("--cases must be >= 1");
    if (c.dim && *c.dim < 2) throw UsageError("--dim must be >= 2");
    if (c.dt && !(*c.dt > 0.0)) throw UsageError("--dt must be positive");

    const std::vector<OracleCase> cases = run_oracle_cases(cfg);
    const OracleReport report = summarize(cases, cfg.thresholds);

    CsvWriter csv(out, c.precision);
    csv.header({"probe", "beta_omega", "t", "input", "dim", "bloch_dev", "moment_dev", "q_dev",
                "distance_dev", "tail", "status"});
    for (const OracleCase& k : cases)
        csv.row({std::string(to_string(k.probe)), k.beta_omega, k.t, k.input, long{k.dim},
                 k.bloch_dev, k.moment_dev, k.q_dev, k.distance_dev, k.tail,
                 k.error.empty() ? std::string("ok") : "error: " + k.error});
    const int p = 4;
    csv.comment("max_bloch_dev=" + format_number(report.max_bloch_dev, p) +
                " max_moment_dev=" + format_number(report.max_moment_dev, p) +
                " max_q_dev=" + format_number(report.max_q_dev, p) +
                " max_distance_dev=" + format_number(report.max_distance_dev, p) +
                " tail_population=" + format_number(report.tail_population, p));
    csv.comment(report.passed ? "PASS" : "FAIL " + report.failure);
    if (!report.passed) {
        err << "verification failed: " << report.failure << '\n';
        return kVerificationFailure;
    }
    return kSuccess;
}

void cmd_sweep_input(const RunConfig& c, std::ostream& out) {
    const ProbeKind probe = probe_of(c);
    const BathSpec bath = bath_for(c, required_temperature(c));
    if (bath.beta.is_infinite()) throw Degenerate();
    const double t_max = t_max_for(c, probe, bath);
    CsvWriter csv(out, c.precision);

    if (probe == ProbeKind::TLS) {
        csv.header({"sz0", "max_distance", "t_at_max"});
        double best_sz = -2.0, best_d = -1.0;
        for (double sz0 : linear_grid(-1.0, 1.0, steps_for(c, 2001))) {
            const BlochVector v0 = BlochVector::pure_xz(sz0);
            const TimeOptimum opt = minimize_over_time(
                [&](double t) { return -tls_hypothesis_distance(v0, bath, t); }, t_max);
            const double d = -opt.value;
            csv.row({sz0, d, opt.t_bar});
            if (d > best_d || (d == best_d && sz0 > best_sz)) {
                best_d = d;
                best_sz = sz0;
            }
        }
        csv.comment("argmax_sz0=" + format_number(best_sz, c.precision) +
                    " max_distance=" + format_number(best_d, c.precision));
        return;
    }

    struct Candidate {
        std::string name;
        GaussianParams p;
    };
    // All three carry <a^dag a(0)> = 1.
    const std::vector<Candidate> inputs{
        {"coherent", GaussianParams::coherent(Eigen::Vector2d(std::sqrt(2.0), 0.0))},
        {"thermal", GaussianParams::thermal_occupation(1.0)},
        {"squeezed", GaussianParams::squeezed_vacuum(0.5 * std::acosh(3.0))},
    };
    csv.header({"input", "mean_excitation", "min_Q", "min_Q_half", "t_argmin"});
    std::string lowest, earliest;
    double lowest_q = kInf, earliest_t = kInf;
    for (const Candidate& in : inputs) {
        const TimeOptimum opt = minimize_over_time(
            [&](double t) { return qho_chernoff(bath, in.p, t).q; }, t_max);
        csv.row({in.name, mean_excitation(in.p), opt.value, 0.5 * opt.value, opt.t_bar});
        if (opt.value < lowest_q) lowest_q = opt.value, lowest = in.name;
        if (opt.t_bar < earliest_t) earliest_t = opt.t_bar, earliest = in.name;
    }
    csv.comment("lowest_min_Q=" + lowest + " earliest_argmin=" + earliest);
}

void add_temperature(CLI::App* sub, RunConfig& c) {
    auto* bw = sub->add_option("--beta-omega", c.beta_omega,
                               "Bath beta*omega0 (dimensionless), or 'inf' for zero temperature");
    auto* inv = sub->add_option("--inv-beta-omega", c.inv_beta_omega,
                                "Bath temperature as 1/(beta*omega0), as on the figure axes");
    bw->excludes(inv);
}

void add_physics(CLI::App* sub, RunConfig& c) {
    sub->add_option("--gamma", c.gamma, "Bare dissipation rate")->capture_default_str();
    sub->add_option("--omega0", c.omega0, "Probe level spacing")->capture_default_str();
}

void add_output(CLI::App* sub, RunConfig& c) {
    sub->add_option("--out", c.out_path, "Write output to this file instead of stdout");
    sub->add_option("--precision", c.precision, "Significant digits")
        ->capture_default_str()
        ->check(CLI::Range(1, 17));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Bath statistics tagging with TLS and oscillator probes"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    const std::vector<std::string> probes{"tls", "qho"};
    const std::vector<std::string> probes_or_both{"tls", "qho", "both"};

    auto* rates = app.add_subcommand("rates", "Thermalization rates for all probe/bath pairings");
    add_temperature(rates, c);
    add_physics(rates, c);
    add_output(rates, c);

    auto* curve = app.add_subcommand("curve", "Discrimination curve (or single-hypothesis trajectory) versus time");
    curve->add_option("--probe", c.probe)->check(CLI::IsMember(probes))->capture_default_str();
    curve->add_option("--statistics", c.statistics, "both: discrimination curve; bosonic|fermionic: state trajectory")
        ->check(CLI::IsMember({"bosonic", "fermionic", "both"}))
        ->capture_default_str();
    add_temperature(curve, c);
    add_physics(curve, c);
    curve->add_option("--t-max", c.t_max, "Final time (default 20 / slowest rate)");
    curve->add_option("--steps", c.steps, "Number of time samples (default 201)");
    curve->add_option("--input", c.input,
                      "excited | ground | bloch:sz,sx | coherent:amp | thermal:n | squeezed:r | displaced:amp");
    curve->add_option("--frame", c.frame)->check(CLI::IsMember({"rotating", "lab"}))->capture_default_str();
    curve->add_flag("--helstrom", c.helstrom, "Request the Helstrom column (TLS only; on by default there)");
    add_output(curve, c);

    auto* optimal = app.add_subcommand("optimal", "Analytic versus numeric optimal measurement time");
    optimal->add_option("--probe", c.probe)->check(CLI::IsMember(probes))->capture_default_str();
    add_temperature(optimal, c);
    add_physics(optimal, c);
    optimal->add_option("--t-max", c.t_max, "Search interval end (default 20 / slowest rate)");
    optimal->add_option("--steps", c.steps, "Sweep points (default 21)");
    optimal->add_option("--input", c.input, "TLS: excited; QHO: displaced:amp (default amp 1)");
    optimal->add_option("--sweep-inv-beta-omega", c.sweep, "LO,HI range of 1/(beta*omega0)")
        ->delimiter(',')
        ->expected(2);
    add_output(optimal, c);

    auto* best = app.add_subcommand("best-temp", "Bath temperature minimizing the closed-form Chernoff quantity");
    best->add_option("--input", c.input, "displaced:amp (default amp 1)");
    add_physics(best, c);
    add_output(best, c);

    bool probe_given = false;
    auto* verify = app.add_subcommand("verify", "Cross-check analytic models against the Fock-space integrator");
    verify->add_option("--probe", c.probe)->check(CLI::IsMember(probes_or_both));
    add_temperature(verify, c);
    add_physics(verify, c);
    verify->add_option("--dim", c.dim, "Fixed Fock truncation (default: 64, doubled as needed)");
    verify->add_option("--dt", c.dt, "Fixed integration step (default 1e-3 / fastest rate)");
    verify->add_option("--cases", c.cases, "Randomized cases per probe")->capture_default_str();
    verify->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    add_output(verify, c);

    auto* sweep = app.add_subcommand("sweep-input", "Compare initial states");
    sweep->add_option("--probe", c.probe)->check(CLI::IsMember(probes))->capture_default_str();
    add_temperature(sweep, c);
    add_physics(sweep, c);
    sweep->add_option("--t-max", c.t_max, "Search interval end (default 20 / slowest rate)");
    sweep->add_option("--steps", c.steps, "Grid points in sz0 for the TLS (default 2001)");
    add_output(sweep, c);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    }
    probe_given = verify->count("--probe") > 0;

    std::ofstream file;
    std::ostream* sink = &out;
    if (!c.out_path.empty()) {
        file.open(c.out_path, std::ios::binary);
        if (!file) {
            err << "usage error: cannot open '" << c.out_path << "' for writing\n";
            return kUsageError;
        }
        sink = &file;
    }

    try {
        if (rates->parsed()) cmd_rates(c, *sink);
        else if (curve->parsed()) cmd_curve(c, *sink);
        else if (optimal->parsed()) cmd_optimal(c, *sink);
        else if (best->parsed()) cmd_best_temp(c, *sink);
        else if (verify->parsed()) return cmd_verify(c, probe_given, *sink, err);
        else if (sweep->parsed()) cmd_sweep_input(c, *sink);
    } catch (const Degenerate& e) {
        err << e.what() << '\n';
        return kUsageError;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    }
    return kSuccess;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace bathtag::cli
