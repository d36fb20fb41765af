#include "bathtag/tls_probe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bathtag {

double BlochVector::norm() const noexcept {
    return std::sqrt(sx * sx + sy * sy + sz * sz);
}

void BlochVector::validate() const {
    if (!std::isfinite(sx) || !std::isfinite(sy) || !std::isfinite(sz))
        throw std::domain_error("Bloch vector has non-finite components");
    if (sx * sx + sy * sy + sz * sz > 1.0 + kBlochTolerance)
        throw std::domain_error("Bloch vector lies outside the unit ball");
}

BlochVector BlochVector::pure_xz(double sz) {
    if (!(sz >= -1.0 && sz <= 1.0)) throw std::domain_error("sz must lie in [-1, 1]");
    return {std::sqrt(std::max(0.0, 1.0 - sz * sz)), 0.0, sz};
}

TlsEquilibrium tls_equilibrium(const BathSpec& bath) {
    return {2.0 * occupation_number(Statistics::Fermionic, bath.beta, bath.omega0) - 1.0};
}

BlochVector evolve_bloch(const BlochVector& v0, const BathSpec& bath, double t, Frame frame) {
    if (!(t >= 0.0)) throw std::domain_error("evolution time must be non-negative");
    v0.validate();
    const double rate = characteristic_rate(ProbeKind::TLS, bath);
    const double n_f = occupation_number(Statistics::Fermionic, bath.beta, bath.omega0);
    const double decay = std::exp(-rate * t);
    const double coherence = std::exp(-0.5 * rate * t);

    BlochVector out;
    out.sz = v0.sz * decay + (1.0 - 2.0 * n_f) * (decay - 1.0);
    out.sx = v0.sx * coherence;
    out.sy = v0.sy * coherence;
    if (frame == Frame::Lab) {
        // <sigma_-> picks up e^{-i omega0 t}: counter-clockwise about z
        const double c = std::cos(bath.omega0 * t);
        const double s = std::sin(bath.omega0 * t);
        const double x = out.sx, y = out.sy;
        out.sx = c * x - s * y;
        out.sy = s * x + c * y;
    }
    return out;
}

double trace_distance_tls(const BlochVector& va, const BlochVector& vb) {
    const double dx = va.sx - vb.sx, dy = va.sy - vb.sy, dz = va.sz - vb.sz;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double helstrom_error(const BlochVector& va, const BlochVector& vb) {
    return 0.5 * (1.0 - 0.5 * trace_distance_tls(va, vb));
}

QubitChernoffInputs QubitChernoffInputs::from_bloch(const BlochVector& vb, const BlochVector& vf) {
    QubitChernoffInputs in;
    // Norms within kBlochTolerance of 1 count as pure: a rounding-level smallest
    // eigenvalue would otherwise dominate its small powers near r = 0 or 1.
    auto snap = [](double n) { return n > 1.0 - kBlochTolerance ? 1.0 : n; };
    const double nb = vb.norm(), nf = vf.norm();
    in.lambda_b = 0.5 * (1.0 + snap(nb));
    in.lambda_f = 0.5 * (1.0 + snap(nf));
    if (nb > 0.0 && nf > 0.0) {
        const double cx = vb.sy * vf.sz - vb.sz * vf.sy;
        const double cy = vb.sz * vf.sx - vb.sx * vf.sz;
        const double cz = vb.sx * vf.sy - vb.sy * vf.sx;
        const double dot = vb.sx * vf.sx + vb.sy * vf.sy + vb.sz * vf.sz;
        in.theta = std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot);
    }
    return in;
}

double qubit_chernoff_r(const QubitChernoffInputs& in, double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("Chernoff exponent r must lie in [0, 1]");
    if (!(in.lambda_b >= 0.5 && in.lambda_b <= 1.0 && in.lambda_f >= 0.5 && in.lambda_f <= 1.0))
        throw std::domain_error("greatest eigenvalues must lie in [1/2, 1]");
    const double s = 1.0 - r;
    const double lb = in.lambda_b, lf = in.lambda_f;
    // std::pow(0, 0) == 1, which is the convention needed for rank-deficient states
    const double aligned = std::pow(lb, r) * std::pow(lf, s) +
                           std::pow(1.0 - lb, r) * std::pow(1.0 - lf, s);
    const double crossed = std::pow(lb, r) * std::pow(1.0 - lf, s) +
                           std::pow(1.0 - lb, r) * std::pow(lf, s);
    const double cos2 = std::cos(0.5 * in.theta);
    const double sin2 = std::sin(0.5 * in.theta);
    return aligned * cos2 * cos2 + crossed * sin2 * sin2;
}

double optimal_time_tls(const BathSpec& bath) {
    bath.validate();
    if (bath.beta.is_infinite())
        throw std::domain_error("no discrimination at zero temperature");
    const double n_th = thermal_ratio(bath.beta, bath.omega0);
    const double excess = n_th - 1.0;  // 2 N_b
    if (excess == 0.0) return 1.0 / bath.gamma;
    return std::log1p(excess) / (bath.gamma * excess);
}

double tls_hypothesis_distance(const BlochVector& v0, const BathSpec& bath, double t) {
    const BlochVector b = evolve_bloch(v0, bath.with(Statistics::Bosonic), t, Frame::Rotating);
    const BlochVector f = evolve_bloch(v0, bath.with(Statistics::Fermionic), t, Frame::Rotating);
    return trace_distance_tls(b, f);
}

double TraceNormParabola::operator()(double sz0) const noexcept {
    return sz0 * sz0 * (g - f) - 2.0 * sz0 * sz_eq * g + f + sz_eq * sz_eq * g;
}

bool TraceNormParabola::vertex_admissible() const noexcept {
    if (!(g - f < 0.0)) return false;
    const double v = vertex();
    return v >= -1.0 && v <= 1.0;
}

TraceNormParabola trace_norm_parabola(const BathSpec& bath, double t) {
    if (!(t >= 0.0)) throw std::domain_error("evolution time must be non-negative");
    const double rate_f = characteristic_rate(ProbeKind::TLS, bath.with(Statistics::Fermionic));
    const double rate_b = characteristic_rate(ProbeKind::TLS, bath.with(Statistics::Bosonic));
    const double half = std::exp(-0.5 * rate_f * t) - std::exp(-0.5 * rate_b * t);
    const double full = std::exp(-rate_f * t) - std::exp(-rate_b * t);
    return TraceNormParabola{half * half, full * full, tls_equilibrium(bath).sz_eq};
}

InputScanResult optimal_input_scan(const BathSpec& bath, double t, int grid_size) {
    if (!(t > 0.0)) throw std::domain_error("input scan requires t > 0");
    if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");
    const TraceNormParabola y = trace_norm_parabola(bath, t);

    InputScanResult out;
    double best_y = -1.0;
    auto consider = [&](double sz0) {
        const double value = std::max(0.0, y(sz0));
        if (value > best_y || (value == best_y && sz0 > out.sz0_argmax)) {
            best_y = value;
            out.sz0_argmax = sz0;
        }
    };
    for (int i = 0; i < grid_size; ++i)
        consider(i == grid_size - 1 ? 1.0 : -1.0 + 2.0 * i / (grid_size - 1));
    if (y.vertex_admissible()) {
        out.vertex_considered = true;
        consider(y.vertex());
    }

    if (best_y == 0.0) {
        out.degenerate = true;
        out.sz0_argmax = 1.0;
    }
    out.max_distance = std::sqrt(best_y);
    return out;
}

double tstar(const BathSpec& bath) {
    bath.validate();
    if (bath.beta.is_infinite() || bath.beta.is_zero())
        throw std::domain_error("t* undefined for these parameters");
    const double rate_f = characteristic_rate(ProbeKind::TLS, bath.with(Statistics::Fermionic));
    const double rate_b = characteristic_rate(ProbeKind::TLS, bath.with(Statistics::Bosonic));
    const double n_f = occupation_number(Statistics::Fermionic, bath.beta, bath.omega0);
    const double target = 1.0 / std::sqrt(2.0 - 2.0 * n_f);
    auto residual = [&](double t) {
        return std::exp(-0.5 * rate_f * t) + std::exp(-0.5 * rate_b * t) - target;
    };

    double lo = 0.0, hi = 1.0 / bath.gamma;
    if (!(residual(lo) > 0.0)) throw std::domain_error("t* undefined for these parameters");
    int doublings = 0;
    while (residual(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > 200) throw std::domain_error("t* undefined for these parameters");
    }
    for (int it = 0; it < 400 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

DiscriminationCurve tls_curve(const BathSpec& bath, const BlochVector& v0,
                              std::span<const double> times, Frame frame) {
    const BathSpec bose = bath.with(Statistics::Bosonic);
    const BathSpec fermi = bath.with(Statistics::Fermionic);
    return assemble_curve(times, [&](double t) {
        const BlochVector b = evolve_bloch(v0, bose, t, frame);
        const BlochVector f = evolve_bloch(v0, fermi, t, frame);
        const QubitChernoffInputs in = QubitChernoffInputs::from_bloch(b, f);
        CurveSample s;
        s.helstrom = helstrom_error(b, f);
        s.chernoff_r = [in](double r) { return qubit_chernoff_r(in, r); };
        s.r_interval = RInterval{0.0, 1.0};
        return s;
    });
}

}  // namespace bathtag
