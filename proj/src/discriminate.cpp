#include "bathtag/discriminate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bathtag {

ChernoffMinimum minimize_chernoff_over_r(const ScalarFunction& q_of_r, RInterval interval) {
    MinimizeOptions opts;
    opts.prescan_points = 21;
    opts.x_tolerance = 1e-10;
    opts.flat_tolerance = 1e-14;
    const ScalarMinimum m = minimize_scalar(q_of_r, interval.lo, interval.hi, opts);
    if (m.flat) return ChernoffMinimum{0.5, q_of_r(0.5), true};
    return ChernoffMinimum{m.x, m.value, false};
}

TimeOptimum minimize_over_time(const ScalarFunction& curve, double t_max, double tolerance) {
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    MinimizeOptions opts;
    opts.prescan_points = 201;
    opts.x_tolerance = tolerance;
    opts.flat_tolerance = 1e-14;
    const ScalarMinimum m = minimize_scalar(curve, 0.0, t_max, opts);
    return TimeOptimum{m.x, m.value, m.boundary && !m.flat, m.flat};
}

CopyBound n_copy_bound(double q, int n) {
    // Rounding can push Q a few ulps above 1 when the hypotheses coincide.
    if (!(q >= 0.0 && q <= 1.0 + 1e-12))
        throw std::domain_error("Chernoff quantity must lie in [0, 1]");
    if (n < 1) throw std::domain_error("number of copies must be >= 1");
    return CopyBound{n, 0.5 * std::pow(std::min(q, 1.0), n)};
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    if (points < 2) throw std::invalid_argument("grid needs at least two points");
    std::vector<double> out(points);
    for (int i = 0; i < points; ++i)
        out[i] = i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1);
    return out;
}

DiscriminationCurve assemble_curve(std::span<const double> times,
                                   const std::function<CurveSample(double)>& sample) {
    DiscriminationCurve curve;
    curve.times.assign(times.begin(), times.end());
    curve.chernoff_q.reserve(times.size());
    curve.r_star.reserve(times.size());

    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::invalid_argument("curve times must be strictly ascending");
        const CurveSample s = sample(times[i]);
        if (s.helstrom) {
            if (!curve.helstrom) {
                if (i != 0) throw std::logic_error("helstrom samples must cover the whole curve");
                curve.helstrom.emplace();
            }
            curve.helstrom->push_back(*s.helstrom);
        }
        const ChernoffMinimum m = minimize_chernoff_over_r(s.chernoff_r, s.r_interval);
        curve.chernoff_q.push_back(m.q);
        curve.r_star.push_back(m.r_star);
    }
    return curve;
}

}  // namespace bathtag
