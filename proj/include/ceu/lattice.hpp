#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace ceu {

using cd = std::complex<double>;

/// Uniform grid on the line. The conjugate grid is the symmetric window
/// of width 2*pi/dy implied by the unitary discrete Fourier pairing
/// (hbar = 1 everywhere).
struct Lattice {
    int n_points = 0;
    double y_min = 0.0;
    double y_max = 0.0;

    Lattice() = default;
    Lattice(int n, double lo, double hi);

    double dy() const { return (y_max - y_min) / n_points; }
    double dx() const { return 2.0 * M_PI / (n_points * dy()); }
    double x_min() const { return -0.5 * n_points * dx(); }
    double y(int j) const { return y_min + j * dy(); }
    double x(int k) const { return x_min() + k * dx(); }

    bool operator==(const Lattice& o) const {
        return n_points == o.n_points && y_min == o.y_min && y_max == o.y_max;
    }
};

/// Real nonnegative samples on a uniform axis, unit integral.
struct ProbabilityDensity {
    std::vector<double> vals;
    double spacing = 0.0;
    double origin = 0.0; // coordinate of vals[0]

    double coord(std::size_t j) const { return origin + j * spacing; }
    double integral() const;
    double mean() const;
    double variance() const;
    void normalize();
    void clamp_and_normalize(); // zero out FFT noise, then renormalize
};

/// Pure-state amplitudes on the grid, units dy^(-1/2).
struct WaveFunction {
    Lattice lattice;
    std::vector<cd> amps;

    double norm_sq() const; // sum |amps|^2 dy
    void normalize();
};

/// Dense position-representation kernel rho(y_j, y_k), units dy^(-1).
struct DensityMatrix {
    Lattice lattice;
    Eigen::MatrixXcd elems;

    double trace() const; // sum of diagonal times dy
    double hermiticity_residual() const;
    double smallest_eigenvalue() const; // of elems*dy, checked on demand

    static DensityMatrix from_pure(const WaveFunction& psi);
};

enum class Representation { position, conjugate };

/// Normalized Gaussian wave packet exp(-(y-y0)^2/(4 sigma^2) + i p0 y).
/// Throws if more than 1e-10 of the mass falls outside the window.
WaveFunction make_gaussian(const Lattice& lat, double y0, double sigma, double p0);

/// Unitary discrete Fourier pairing with phase corrections so the result
/// samples (2 pi)^(-1/2) \int psi(y) e^(-i x y) dy on the conjugate grid.
WaveFunction to_conjugate(const WaveFunction& psi);
/// Inverse pairing. The single-argument form assumes the position window is
/// symmetric about 0; pass the original lattice otherwise.
WaveFunction from_conjugate(const WaveFunction& phi);
WaveFunction from_conjugate(const WaveFunction& phi, const Lattice& target);

ProbabilityDensity density_of(const WaveFunction& psi, Representation rep);
ProbabilityDensity density_of(const DensityMatrix& rho, Representation rep);

} // namespace ceu
