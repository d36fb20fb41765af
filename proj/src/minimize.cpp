#include "bathtag/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bathtag {

namespace {

double checked(const ScalarFunction& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw std::domain_error("non-finite objective value");
    return v;
}

}  // namespace

ScalarMinimum golden_section(const ScalarFunction& f, double lo, double hi,
                             double x_tolerance, int max_iterations) {
    if (!(hi >= lo)) throw std::invalid_argument("golden_section: empty interval");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;

    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = checked(f, c);
    double fd = checked(f, d);

    for (int it = 0; it < max_iterations && (b - a) > x_tolerance; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = checked(f, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = checked(f, d);
        }
    }

    ScalarMinimum best{0.5 * (a + b), 0.0};
    best.value = checked(f, best.x);
    if (fc < best.value) best = {c, fc};
    if (fd < best.value) best = {d, fd};
    return best;
}

ScalarMinimum minimize_scalar(const ScalarFunction& f, double lo, double hi,
                              const MinimizeOptions& options) {
    if (!(hi > lo)) throw std::invalid_argument("minimize_scalar: empty interval");
    const int n = std::max(options.prescan_points, 3);

    std::vector<double> xs(n), vs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
        vs[i] = checked(f, xs[i]);
    }

    const auto [vmin, vmax] = std::minmax_element(vs.begin(), vs.end());
    if (*vmax - *vmin <= options.flat_tolerance) {
        ScalarMinimum out{0.5 * (lo + hi), 0.0};
        out.value = checked(f, out.x);
        out.flat = true;
        return out;
    }

    ScalarMinimum best{xs[vmin - vs.begin()], *vmin};
    for (int i = 0; i < n; ++i) {
        const bool left_ok = i == 0 || vs[i] <= vs[i - 1];
        const bool right_ok = i == n - 1 || vs[i] <= vs[i + 1];
        if (!left_ok || !right_ok) continue;
        const double a = xs[std::max(i - 1, 0)];
        const double b = xs[std::min(i + 1, n - 1)];
        const ScalarMinimum local = golden_section(f, a, b, options.x_tolerance,
                                                   options.max_iterations);
        if (local.value < best.value) best = local;
    }

    const double edge = 10.0 * options.x_tolerance;
    best.boundary = (best.x - lo) <= edge || (hi - best.x) <= edge;
    return best;
}

}  // namespace bathtag
