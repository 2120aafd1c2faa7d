#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace ceu {

/// Conjugate operator pair on a (d+1)-dimensional space built from two
/// mutually unbiased bases. The first basis is the identity frame; basis_m
/// holds the overlaps <n|m>.
struct PeggBarnettPair {
    int d = 0;
    double delta = 0.0; // 2 pi / (d+1)
    double gamma = 1.0;
    double a0 = 0.0, b0 = 0.0;
    Eigen::MatrixXcd basis_m; // column m = |m> in the n-basis
    Eigen::MatrixXcd op_x;    // (N + a0) gamma, diagonal in the n-basis
    Eigen::MatrixXcd op_y;    // (M + b0) delta / gamma

    int dim() const { return d + 1; }
    double x_eigenvalue(int n) const { return (a0 + n) * gamma; }
    double y_eigenvalue(int m) const { return (b0 + m) * delta / gamma; }

    double mub_modulus_deviation() const;  // max | |<n|m>| - (d+1)^{-1/2} |
    double basis_unitarity_residual() const;
};

PeggBarnettPair build_pair(int d, double gamma, double a0, double b0);

/// Max deviation of exp(-i (N + a0) j delta)|m> = |m+j> and the conjugate
/// shift, over all shift amounts (indices mod d+1).
double check_shifts(const PeggBarnettPair& pair);

struct CommutatorDiagnostics {
    double algebraic_residual = 0.0;          // || [Y,X] - delta [M,N] ||_max
    std::complex<double> expectation{0.0, 0.0}; // <psi| [Y,X] |psi>
    double edge_mass = 0.0; // state mass on the extreme 10% of either spectrum
};

CommutatorDiagnostics commutator_diagnostics(const PeggBarnettPair& pair,
                                             const Eigen::VectorXcd& state);

/// Gaussian state in the n-basis centered mid-spectrum with index-space
/// width proportional to sqrt(d+1); satisfies the finite-energy and
/// finite-extension conditions of the limiting procedure.
Eigen::VectorXcd mid_spectrum_gaussian(int d, double width_factor = 2.0);

struct LimitSchedule {
    std::vector<int> dims;       // values of d+1
    double scale_c = 1.0;        // gamma = c (d+1)^(-theta)
    double theta = 0.5;          // must lie strictly in (0,1)
};

struct LimitRow {
    int dim = 0;
    double gamma = 0.0;
    double dx = 0.0, dy = 0.0;           // eigenvalue spacings
    double x_extent = 0.0, y_extent = 0.0;
    double commutator_deviation = 0.0;   // | <[Y,X]> - i |
};

std::vector<LimitRow> limit_study(const LimitSchedule& schedule, double width_factor = 2.0);

} // namespace ceu
