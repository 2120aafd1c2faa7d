#include "ceu/lattice.hpp"

#include <cmath>
#include <stdexcept>

#include "ceu/fft.hpp"

namespace ceu {

Lattice::Lattice(int n, double lo, double hi) : n_points(n), y_min(lo), y_max(hi) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("Lattice: n_points must be even and >= 2");
    if (!(hi > lo)) throw std::invalid_argument("Lattice: y_max must exceed y_min");
}

double ProbabilityDensity::integral() const {
    double s = 0.0;
    for (double v : vals) s += v;
    return s * spacing;
}

double ProbabilityDensity::mean() const {
    double s = 0.0;
    for (std::size_t j = 0; j < vals.size(); ++j) s += coord(j) * vals[j];
    return s * spacing;
}

double ProbabilityDensity::variance() const {
    const double m = mean();
    double s = 0.0;
    for (std::size_t j = 0; j < vals.size(); ++j) {
        const double d = coord(j) - m;
        s += d * d * vals[j];
    }
    return s * spacing;
}

void ProbabilityDensity::normalize() {
    const double z = integral();
    if (!(z > 0.0)) throw std::runtime_error("ProbabilityDensity: vanishing mass");
    for (double& v : vals) v /= z;
}

void ProbabilityDensity::clamp_and_normalize() {
    for (double& v : vals)
        if (v < 0.0) v = 0.0;
    normalize();
}

double WaveFunction::norm_sq() const {
    double s = 0.0;
    for (const cd& a : amps) s += std::norm(a);
    return s * lattice.dy();
}

void WaveFunction::normalize() {
    const double n2 = norm_sq();
    if (!(n2 > 0.0)) throw std::runtime_error("WaveFunction: vanishing norm");
    const double inv = 1.0 / std::sqrt(n2);
    for (cd& a : amps) a *= inv;
}

double DensityMatrix::trace() const {
    return elems.diagonal().real().sum() * lattice.dy();
}

double DensityMatrix::hermiticity_residual() const {
    return (elems - elems.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::smallest_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(elems, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() * lattice.dy();
}

DensityMatrix DensityMatrix::from_pure(const WaveFunction& psi) {
    const int n = psi.lattice.n_points;
    DensityMatrix rho;
    rho.lattice = psi.lattice;
    rho.elems.resize(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) rho.elems(j, k) = psi.amps[j] * std::conj(psi.amps[k]);
    return rho;
}

WaveFunction make_gaussian(const Lattice& lat, double y0, double sigma, double p0) {
    if (!(sigma > 0.0)) throw std::invalid_argument("make_gaussian: sigma must be positive");
    // analytic mass outside the window
    const double tail = 0.5 * (std::erfc((lat.y_max - y0) / (sigma * std::sqrt(2.0))) +
                               std::erfc((y0 - lat.y_min) / (sigma * std::sqrt(2.0))));
    if (tail > 1e-10)
        throw std::domain_error("make_gaussian: window overflow, tail mass " + std::to_string(tail));
    WaveFunction psi;
    psi.lattice = lat;
    psi.amps.resize(lat.n_points);
    for (int j = 0; j < lat.n_points; ++j) {
        const double y = lat.y(j);
        const double arg = -(y - y0) * (y - y0) / (4.0 * sigma * sigma);
        psi.amps[j] = std::exp(arg) * cd(std::cos(p0 * y), std::sin(p0 * y));
    }
    psi.normalize();
    return psi;
}

WaveFunction to_conjugate(const WaveFunction& psi) {
    const Lattice& lat = psi.lattice;
    const int n = lat.n_points;
    const double dy = lat.dy();
    const double xmin = lat.x_min();
    std::vector<cd> work(n);
    // e^{-i x_k y_j} = e^{-i x_k y_min} e^{-i x_min j dy} e^{-2 pi i k j / n}
    for (int j = 0; j < n; ++j) {
        const double ph = -xmin * j * dy;
        work[j] = psi.amps[j] * cd(std::cos(ph), std::sin(ph));
    }
    work = fft::transform(std::move(work), -1);
    WaveFunction out;
    // the result lives on the conjugate grid
    out.lattice = Lattice(n, xmin, xmin + n * lat.dx());
    out.amps.resize(n);
    const double scale = dy / std::sqrt(2.0 * M_PI);
    for (int k = 0; k < n; ++k) {
        const double ph = -lat.x(k) * lat.y_min;
        out.amps[k] = scale * cd(std::cos(ph), std::sin(ph)) * work[k];
    }
    return out;
}

WaveFunction from_conjugate(const WaveFunction& phi) {
    // symmetric position window implied by the conjugate grid spacing
    const double dy0 = phi.lattice.dx();
    const int np = phi.lattice.n_points;
    return from_conjugate(phi, Lattice(np, -0.5 * np * dy0, 0.5 * np * dy0));
}

WaveFunction from_conjugate(const WaveFunction& phi, const Lattice& target) {
    const Lattice& lat = target;
    const int n = lat.n_points;
    const double dx = lat.dx();
    std::vector<cd> work(n);
    for (int k = 0; k < n; ++k) {
        const double ph = lat.x(k) * lat.y_min;
        work[k] = phi.amps[k] * cd(std::cos(ph), std::sin(ph));
    }
    work = fft::transform(std::move(work), +1);
    WaveFunction out;
    out.lattice = lat;
    out.amps.resize(n);
    const double scale = dx / std::sqrt(2.0 * M_PI);
    for (int j = 0; j < n; ++j) {
        const double ph = lat.x_min() * j * lat.dy();
        out.amps[j] = scale * cd(std::cos(ph), std::sin(ph)) * work[j];
    }
    return out;
}

ProbabilityDensity density_of(const WaveFunction& psi, Representation rep) {
    const WaveFunction* src = &psi;
    WaveFunction tilde;
    if (rep == Representation::conjugate) {
        tilde = to_conjugate(psi);
        src = &tilde;
    }
    ProbabilityDensity w;
    w.spacing = rep == Representation::position ? psi.lattice.dy() : psi.lattice.dx();
    w.origin = rep == Representation::position ? psi.lattice.y_min : psi.lattice.x_min();
    w.vals.resize(src->amps.size());
    for (std::size_t j = 0; j < src->amps.size(); ++j) w.vals[j] = std::norm(src->amps[j]);
    w.normalize();
    return w;
}

ProbabilityDensity density_of(const DensityMatrix& rho, Representation rep) {
    const Lattice& lat = rho.lattice;
    const int n = lat.n_points;
    ProbabilityDensity w;
    if (rep == Representation::position) {
        w.spacing = lat.dy();
        w.origin = lat.y_min;
        w.vals.resize(n);
        for (int j = 0; j < n; ++j) w.vals[j] = rho.elems(j, j).real();
    } else {
        // W(x_k) = dy^2/(2 pi) * sum_u e^{-i x_k u dy} S_u with the diagonal
        // sums S_u = sum_l rho(l+u, l); the phase depends on j-l only.
        const double dy = lat.dy();
        w.spacing = lat.dx();
        w.origin = lat.x_min();
        w.vals.assign(n, 0.0);
        std::vector<cd> diag_sums(2 * n - 1, cd(0.0, 0.0));
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) diag_sums[j - l + n - 1] += rho.elems(j, l);
        for (int k = 0; k < n; ++k) {
            const double xk = lat.x(k);
            cd acc(0.0, 0.0);
            for (int u = -(n - 1); u <= n - 1; ++u) {
                const double ph = -xk * u * dy;
                acc += diag_sums[u + n - 1] * cd(std::cos(ph), std::sin(ph));
            }
            w.vals[k] = acc.real() * dy * dy / (2.0 * M_PI);
        }
    }
    w.clamp_and_normalize();
    return w;
}

} // namespace ceu
