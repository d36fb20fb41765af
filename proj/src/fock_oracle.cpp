#include "bathtag/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace bathtag {

namespace {

using cd = std::complex<double>;
using Eigen::MatrixXcd;

MatrixXcd annihilator(int dim) {
    MatrixXcd a = MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Eigen::VectorXd clamped_eigenvalues(const Eigen::VectorXd& ev) {
    Eigen::VectorXd out = ev;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (out(i) < kEigenClampThreshold)
            throw std::domain_error("density matrix has a negative eigenvalue");
        out(i) = std::clamp(out(i), 0.0, 1.0);
    }
    return out;
}

MatrixXcd matrix_power(const Eigen::SelfAdjointEigenSolver<MatrixXcd>& eig, double p) {
    const Eigen::VectorXd ev = clamped_eigenvalues(eig.eigenvalues());
    Eigen::VectorXd powered(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) powered(i) = std::pow(ev(i), p);
    return eig.eigenvectors() * powered.asDiagonal() * eig.eigenvectors().adjoint();
}

FockDensity tls_density(const BlochVector& v) {
    v.validate();
    FockDensity rho{MatrixXcd::Zero(2, 2)};
    rho.matrix(0, 0) = 0.5 * (1.0 - v.sz);
    rho.matrix(1, 1) = 0.5 * (1.0 + v.sz);
    rho.matrix(0, 1) = cd(0.5 * v.sx, 0.5 * v.sy);
    rho.matrix(1, 0) = std::conj(rho.matrix(0, 1));
    return rho;
}

FockDensity gaussian_density(const GaussianParams& p, int dim) {
    p.validate();
    const int padded = 2 * dim + 16;
    const double occupation = p.nu > 1.0 ? 0.5 * (p.nu - 1.0) : 0.0;

    MatrixXcd thermal = MatrixXcd::Zero(padded, padded);
    if (occupation == 0.0) {
        thermal(0, 0) = 1.0;
    } else {
        const double ratio = occupation / (occupation + 1.0);
        double weight = 1.0 / (occupation + 1.0);
        for (int n = 0; n < padded; ++n, weight *= ratio) thermal(n, n) = weight;
    }

    const MatrixXcd a = annihilator(padded);
    const MatrixXcd ad = a.adjoint();
    const cd chi = std::polar(p.chi_mod, p.chi_phase);
    const MatrixXcd squeeze = (0.5 * (std::conj(chi) * a * a - chi * ad * ad)).exp();

    const MatrixXcd x = (a + ad) / std::sqrt(2.0);
    const MatrixXcd y = (a - ad) / cd(0.0, std::sqrt(2.0));
    const MatrixXcd displace = (cd(0.0, -1.0) * (p.xi(1) * x - p.xi(0) * y)).exp();

    const MatrixXcd full = displace.adjoint() * squeeze.adjoint() * thermal * squeeze * displace;
    FockDensity rho{full.topLeftCorner(dim, dim)};
    const double kept = rho.trace();
    if (!(1.0 - kept < kInitialTailThreshold)) throw std::domain_error("increase truncation");
    rho.matrix = 0.5 * (rho.matrix + rho.matrix.adjoint().eval()) / kept;
    return rho;
}

}  // namespace

void FockDensity::validate() const {
    if (matrix.rows() != matrix.cols() || matrix.rows() < 2)
        throw std::domain_error("density matrix must be square with dim >= 2");
    if (!matrix.allFinite()) throw std::domain_error("density matrix has non-finite entries");
    if (std::abs(trace() - 1.0) > 1e-9) throw std::domain_error("density matrix trace is not 1");
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::domain_error("density matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(matrix, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < kEigenClampThreshold)
        throw std::domain_error("density matrix has a negative eigenvalue");
}

FockDensity build_initial_state(const InitialState& spec, int dim) {
    if (const auto* bloch = std::get_if<BlochVector>(&spec)) return tls_density(*bloch);
    if (dim < 2) throw std::invalid_argument("truncation dimension must be >= 2");
    return gaussian_density(std::get<GaussianParams>(spec), dim);
}

FockDensity build_initial_state_auto(const InitialState& spec, int start_dim, int max_dim) {
    for (int dim = start_dim;; dim *= 2) {
        try {
            return build_initial_state(spec, dim);
        } catch (const std::domain_error&) {
            if (dim * 2 > max_dim) throw;
        }
    }
}

MatrixXcd lindblad_generator(const MatrixXcd& rho, const BathSpec& bath) {
    const int d = static_cast<int>(rho.rows());
    const double n_q = occupation_number(bath.statistics, bath.beta, bath.omega0);
    const double up = bath.gamma * n_q;
    const double down = bath.gamma * (1.0 + statistics_sign(bath.statistics) * n_q);
    const double w = bath.omega0;

    // <m| zeta zeta^dag |m> in the truncated basis: the top level has no partner
    auto anti = [d](int m) { return m < d - 1 ? static_cast<double>(m + 1) : 0.0; };

    Eigen::VectorXd root(d + 1);
    for (int k = 0; k <= d; ++k) root(k) = std::sqrt(static_cast<double>(k));

    MatrixXcd out(d, d);
    for (int n = 0; n < d; ++n) {
        for (int m = 0; m < d; ++m) {
            const cd r = rho(m, n);
            cd v = cd(0.0, -w * (m - n)) * r;
            v -= 0.5 * (down * (m + n) + up * (anti(m) + anti(n))) * r;
            if (m + 1 < d && n + 1 < d) v += down * root(m + 1) * root(n + 1) * rho(m + 1, n + 1);
            if (m > 0 && n > 0) v += up * root(m) * root(n) * rho(m - 1, n - 1);
            out(m, n) = v;
        }
    }
    return out;
}

FockDensity lindblad_step(const FockDensity& rho, const BathSpec& bath, ProbeKind probe, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (probe == ProbeKind::TLS && rho.dim() != 2)
        throw std::invalid_argument("TLS densities must have dimension 2");
    const MatrixXcd& r0 = rho.matrix;
    const MatrixXcd k1 = lindblad_generator(r0, bath);
    const MatrixXcd k2 = lindblad_generator(r0 + 0.5 * dt * k1, bath);
    const MatrixXcd k3 = lindblad_generator(r0 + 0.5 * dt * k2, bath);
    const MatrixXcd k4 = lindblad_generator(r0 + dt * k3, bath);

    FockDensity out{r0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)};
    if (!out.matrix.allFinite()) throw std::domain_error("step size too large");
    for (int m = 0; m < out.dim(); ++m)
        if (out.matrix(m, m).real() < kPositivityBreakdown)
            throw std::domain_error("step size too large");
    return out;
}

double default_time_step(const BathSpec& bath, ProbeKind probe) {
    const double rate = std::max(characteristic_rate(probe, bath.with(Statistics::Bosonic)),
                                 characteristic_rate(probe, bath.with(Statistics::Fermionic)));
    return 1e-3 / rate;
}

FockEvolution evolve_density(const FockDensity& rho0, const BathSpec& bath, ProbeKind probe,
                             double t, double dt) {
    if (!(t >= 0.0)) throw std::domain_error("evolution time must be non-negative");
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    bath.validate();

    // Truncation leakage only makes sense for the oscillator basis.
    const bool track_tail = probe == ProbeKind::QHO;
    FockEvolution ev{rho0, track_tail ? rho0.tail_population() : 0.0};
    const long steps = t == 0.0 ? 0 : static_cast<long>(std::ceil(t / dt - 1e-9));
    const double h = steps > 0 ? t / static_cast<double>(steps) : 0.0;
    for (long i = 0; i < steps; ++i) {
        ev.rho = lindblad_step(ev.rho, bath, probe, h);
        if (track_tail)
            ev.max_tail_population = std::max(ev.max_tail_population, ev.rho.tail_population());
    }
    ev.rho.matrix = 0.5 * (ev.rho.matrix + ev.rho.matrix.adjoint().eval());

    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(ev.rho.matrix, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < kPositivityBreakdown)
        throw std::domain_error("step size too large");
    return ev;
}

double trace_norm_distance(const FockDensity& a, const FockDensity& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("densities must share a dimension");
    Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(a.matrix - b.matrix, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().sum();
}

double chernoff_direct(const FockDensity& a, const FockDensity& b, double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("Chernoff exponent r must lie in [0, 1]");
    if (a.dim() != b.dim()) throw std::invalid_argument("densities must share a dimension");
    const Eigen::SelfAdjointEigenSolver<MatrixXcd> ea(a.matrix);
    const Eigen::SelfAdjointEigenSolver<MatrixXcd> eb(b.matrix);
    const MatrixXcd pa = matrix_power(ea, r);
    const MatrixXcd pb = matrix_power(eb, 1.0 - r);
    // tr[A B] = sum_ij A_ij B_ji
    return (pa.cwiseProduct(pb.transpose())).sum().real();
}

BlochVector bloch_from_density(const FockDensity& rho) {
    if (rho.dim() != 2) throw std::invalid_argument("Bloch vector needs a 2x2 density");
    const cd coherence = rho.matrix(0, 1);
    return {2.0 * coherence.real(), 2.0 * coherence.imag(),
            rho.matrix(1, 1).real() - rho.matrix(0, 0).real()};
}

LadderMoments ladder_from_density(const FockDensity& rho) {
    LadderMoments l;
    const int d = rho.dim();
    for (int m = 0; m < d; ++m) {
        l.n_mean += m * rho.matrix(m, m).real();
        if (m + 1 < d) l.a_mean += std::sqrt(static_cast<double>(m + 1)) * rho.matrix(m + 1, m);
        if (m + 2 < d)
            l.a2_mean += std::sqrt(static_cast<double>((m + 1) * (m + 2))) * rho.matrix(m + 2, m);
    }
    return l;
}

}  // namespace bathtag
