// discriminate.hpp: Chernoff minimization, time optimization, N-copy bound and
// curve assembly shared by the TLS and Gaussian probes.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bathtag/minimize.hpp"

namespace bathtag {

struct DiscriminationCurve {
    std::vector<double> times;
    std::optional<std::vector<double>> helstrom;  // only for probes with a trace-norm route
    std::vector<double> chernoff_q;
    std::vector<double> r_star;
};

struct CopyBound {
    int n_copies{1};
    double bound{0.5};
};

struct ChernoffMinimum {
    double r_star{0.5};
    double q{1.0};
    bool flat{false};
};

// Interval over which the Chernoff exponent r is searched.
struct RInterval {
    double lo{0.0};
    double hi{1.0};
};

// Gaussian formulas are singular at r in {0, 1}.
inline constexpr RInterval kOpenUnitInterval{1e-6, 1.0 - 1e-6};

// Q = min_r Q_r. A constant Q_r yields r* = 1/2 by convention.
ChernoffMinimum minimize_chernoff_over_r(const ScalarFunction& q_of_r,
                                         RInterval interval = {});

struct TimeOptimum {
    double t_bar{};
    double value{};
    bool boundary_optimum{false};
    bool degenerate{false};  // curve flat over [0, t_max]
};

// Golden-section minimization of a curve over [0, t_max].
TimeOptimum minimize_over_time(const ScalarFunction& curve, double t_max,
                               double tolerance = 1e-10);

CopyBound n_copy_bound(double q, int n);

// Evenly spaced grid including both end points.
std::vector<double> linear_grid(double lo, double hi, int points);

// Pointwise evaluation of one hypothesis pair at time t.
struct CurveSample {
    std::optional<double> helstrom;
    ScalarFunction chernoff_r;
    RInterval r_interval{};
};

DiscriminationCurve assemble_curve(std::span<const double> times,
                                   const std::function<CurveSample(double)>& sample);

}  // namespace bathtag
