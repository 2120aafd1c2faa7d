#include "ceu/conjugate_limit.hpp"

#include <cmath>
#include <stdexcept>

namespace ceu {

using cd = std::complex<double>;

PeggBarnettPair build_pair(int d, double gamma, double a0, double b0) {
    if (d < 1) throw std::invalid_argument("build_pair: d must be at least 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("build_pair: gamma must be positive");
    PeggBarnettPair p;
    p.d = d;
    p.delta = 2.0 * M_PI / (d + 1);
    p.gamma = gamma;
    p.a0 = a0;
    p.b0 = b0;
    const int dim = d + 1;
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    p.basis_m.resize(dim, dim);
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m) {
            const double h = -(m + b0) * (n + a0) * p.delta;
            p.basis_m(n, m) = amp * cd(std::cos(h), std::sin(h));
        }
    p.op_x = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) p.op_x(n, n) = p.x_eigenvalue(n);
    Eigen::VectorXcd ym(dim);
    for (int m = 0; m < dim; ++m) ym(m) = p.y_eigenvalue(m);
    p.op_y = p.basis_m * ym.asDiagonal() * p.basis_m.adjoint();
    return p;
}

double PeggBarnettPair::mub_modulus_deviation() const {
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim()));
    double worst = 0.0;
    for (int n = 0; n < dim(); ++n)
        for (int m = 0; m < dim(); ++m)
            worst = std::max(worst, std::abs(std::abs(basis_m(n, m)) - amp));
    return worst;
}

double PeggBarnettPair::basis_unitarity_residual() const {
    Eigen::MatrixXcd r = basis_m.adjoint() * basis_m - Eigen::MatrixXcd::Identity(dim(), dim());
    return r.cwiseAbs().maxCoeff();
}

double check_shifts(const PeggBarnettPair& pair) {
    const int dim = pair.dim();
    double worst = 0.0;
    // exp(-i (N + a0) j delta) |m> should be |m+j>, N diagonal in the n-basis
    for (int j = 0; j <= dim; ++j) {
        Eigen::VectorXcd phase(dim);
        for (int n = 0; n < dim; ++n) {
            const double ang = -(n + pair.a0) * j * pair.delta;
            phase(n) = cd(std::cos(ang), std::sin(ang));
        }
        for (int m = 0; m < dim; ++m) {
            Eigen::VectorXcd shifted = phase.asDiagonal() * pair.basis_m.col(m);
            // wrapping m+j past the cycle multiplies by exp(-2 pi i a0) per wrap
            const int wraps = (m + j) / dim;
            const double wrap_ang = -2.0 * M_PI * pair.a0 * wraps;
            const cd wrap(std::cos(wrap_ang), std::sin(wrap_ang));
            worst = std::max(worst,
                             (shifted - wrap * pair.basis_m.col((m + j) % dim)).norm());
        }
    }
    // exp(+i (M + b0) k delta) |n> = |n+k>, M diagonal in the m-basis;
    // |n> has m-components <m|n> = conj(basis_m(n, m))
    for (int k = 0; k <= dim; ++k) {
        Eigen::VectorXcd phase(dim);
        for (int m = 0; m < dim; ++m) {
            const double ang = (m + pair.b0) * k * pair.delta;
            phase(m) = cd(std::cos(ang), std::sin(ang));
        }
        for (int n = 0; n < dim; ++n) {
            Eigen::VectorXcd vec = pair.basis_m.row(n).conjugate().transpose();
            Eigen::VectorXcd target = pair.basis_m.row((n + k) % dim).conjugate().transpose();
            Eigen::VectorXcd shifted = phase.asDiagonal() * vec;
            const int wraps = (n + k) / dim;
            const double wrap_ang = 2.0 * M_PI * pair.b0 * wraps;
            const cd wrap(std::cos(wrap_ang), std::sin(wrap_ang));
            worst = std::max(worst, (shifted - wrap * target).norm());
        }
    }
    return worst;
}

CommutatorDiagnostics commutator_diagnostics(const PeggBarnettPair& pair,
                                             const Eigen::VectorXcd& state) {
    const int dim = pair.dim();
    if (state.size() != dim) throw std::invalid_argument("commutator_diagnostics: dimension mismatch");
    CommutatorDiagnostics out;

    Eigen::MatrixXcd comm = pair.op_y * pair.op_x - pair.op_x * pair.op_y;
    // delta [M, N] with M, N the bare index operators
    Eigen::VectorXcd nvec(dim), mvec(dim);
    for (int i = 0; i < dim; ++i) nvec(i) = cd(i, 0.0);
    Eigen::MatrixXcd M = pair.basis_m * nvec.asDiagonal() * pair.basis_m.adjoint();
    Eigen::MatrixXcd N = nvec.asDiagonal();
    Eigen::MatrixXcd ref = pair.delta * (M * N - N * M);
    out.algebraic_residual = (comm - ref).cwiseAbs().maxCoeff();

    out.expectation = state.adjoint() * (comm * state);

    // mass on the extreme 10% of either spectrum
    const int edge = std::max(1, dim / 10);
    double mass_n = 0.0;
    for (int i = 0; i < edge; ++i) mass_n += std::norm(state(i)) + std::norm(state(dim - 1 - i));
    Eigen::VectorXcd in_m = pair.basis_m.adjoint() * state;
    double mass_m = 0.0;
    for (int i = 0; i < edge; ++i) mass_m += std::norm(in_m(i)) + std::norm(in_m(dim - 1 - i));
    out.edge_mass = std::max(mass_n, mass_m);
    return out;
}

Eigen::VectorXcd mid_spectrum_gaussian(int d, double width_factor) {
    const int dim = d + 1;
    const double center = 0.5 * d;
    const double sigma = width_factor * std::sqrt(static_cast<double>(dim));
    Eigen::VectorXcd v(dim);
    for (int n = 0; n < dim; ++n) {
        const double z = (n - center) / sigma;
        v(n) = std::exp(-0.25 * z * z);
    }
    v /= v.norm();
    return v;
}

std::vector<LimitRow> limit_study(const LimitSchedule& schedule, double width_factor) {
    if (!(schedule.theta > 0.0 && schedule.theta < 1.0))
        throw std::invalid_argument("limit_study: theta must lie strictly in (0,1)");
    std::vector<LimitRow> rows;
    for (int dim : schedule.dims) {
        const int d = dim - 1;
        const double gamma = schedule.scale_c * std::pow(static_cast<double>(dim), -schedule.theta);
        PeggBarnettPair pair = build_pair(d, gamma, -0.5 * d, -0.5 * d);
        Eigen::VectorXcd psi = mid_spectrum_gaussian(d, width_factor);
        CommutatorDiagnostics diag = commutator_diagnostics(pair, psi);
        LimitRow row;
        row.dim = dim;
        row.gamma = gamma;
        row.dx = gamma;
        row.dy = pair.delta / gamma;
        row.x_extent = dim * gamma;
        row.y_extent = dim * pair.delta / gamma;
        row.commutator_deviation = std::abs(diag.expectation - cd(0.0, 1.0));
        rows.push_back(row);
    }
    return rows;
}

} // namespace ceu
