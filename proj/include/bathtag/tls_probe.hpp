// tls_probe.hpp: Two-level probe dynamics and its discrimination figures of merit
//
// Bloch convention: rho = (1 + s.sigma)/2 with sigma_z = |e><e| - |g><g| and
// H = omega0 sigma_+ sigma_-. Longitudinal relaxation runs at the
// characteristic TLS rate Gamma_q, coherences at Gamma_q / 2.

#pragma once

#include <span>

#include "bathtag/bath_core.hpp"
#include "bathtag/discriminate.hpp"

namespace bathtag {

inline constexpr double kBlochTolerance = 1e-12;

struct BlochVector {
    double sx{0.0};
    double sy{0.0};
    double sz{0.0};

    double norm() const noexcept;
    // Throws std::domain_error if |s| > 1 + kBlochTolerance or non-finite.
    void validate() const;

    static BlochVector excited() { return {0.0, 0.0, 1.0}; }
    static BlochVector ground() { return {0.0, 0.0, -1.0}; }
    // Pure state in the x-z plane with the given sz and sx >= 0.
    static BlochVector pure_xz(double sz);
};

enum class Frame { Rotating, Lab };

struct TlsEquilibrium {
    double sz_eq{-1.0};  // 2 N_f(beta) - 1
};

TlsEquilibrium tls_equilibrium(const BathSpec& bath);

BlochVector evolve_bloch(const BlochVector& v0, const BathSpec& bath, double t,
                         Frame frame = Frame::Lab);

double trace_distance_tls(const BlochVector& va, const BlochVector& vb);

// Minimum single-shot error probability (1 - D/2)/2 from the trace distance D.
double helstrom_error(const BlochVector& va, const BlochVector& vb);

struct QubitChernoffInputs {
    double lambda_b{0.5};
    double lambda_f{0.5};
    double theta{0.0};  // angle between the Bloch vectors, [0, pi]

    static QubitChernoffInputs from_bloch(const BlochVector& vb, const BlochVector& vf);
};

// Two-term closed form of tr[rho_b^r rho_f^(1-r)] weighted by cos^2(theta/2)
// and sin^2(theta/2). Uses 0^0 = 1.
double qubit_chernoff_r(const QubitChernoffInputs& in, double r);

// log(n_th) / (gamma (n_th - 1)).
double optimal_time_tls(const BathSpec& bath);

// Trace distance between the bosonic and fermionic hypotheses for one input.
double tls_hypothesis_distance(const BlochVector& v0, const BathSpec& bath, double t);

// Pure-input trace-norm parabola D^2 = Y(sz0, t) and its ingredients.
struct TraceNormParabola {
    double f{};      // (e^{-Gamma_f t/2} - e^{-Gamma_b t/2})^2
    double g{};      // (e^{-Gamma_f t} - e^{-Gamma_b t})^2
    double sz_eq{};

    double operator()(double sz0) const noexcept;
    bool concave() const noexcept { return g - f <= 0.0; }
    // Abscissa of the vertex; meaningful only when g != f.
    double vertex() const noexcept { return g * sz_eq / (g - f); }
    // Negative concavity and vertex inside [-1, 1].
    bool vertex_admissible() const noexcept;
};

TraceNormParabola trace_norm_parabola(const BathSpec& bath, double t);

struct InputScanResult {
    double sz0_argmax{1.0};
    double max_distance{0.0};
    bool degenerate{false};  // every input gives zero distance
    bool vertex_considered{false};
};

// Maximizes the trace distance over pure inputs sz0 in [-1, 1] on a grid of
// grid_size points plus the parabola vertex when admissible.
InputScanResult optimal_input_scan(const BathSpec& bath, double t, int grid_size = 2001);

// Positive root of e^{-Gamma_f t/2} + e^{-Gamma_b t/2} = 1/sqrt(2 - 2 N_f).
double tstar(const BathSpec& bath);

// Helstrom error and min_r Q_r at each time, for a common input v0.
DiscriminationCurve tls_curve(const BathSpec& bath, const BlochVector& v0,
                              std::span<const double> times, Frame frame = Frame::Rotating);

}  // namespace bathtag
