#include "ceu/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ceu/fft.hpp"

namespace ceu {

namespace {

// c(m*h) for m in [0, count), quadrature over the tails of f.
std::vector<double> autocorr_offsets(const AcceptanceProfile& f, double h, int count) {
    const double reach = 14.0 * f.width();
    const int m_reach = static_cast<int>(std::ceil(reach / h));
    std::vector<double> fs(2 * m_reach + 1);
    for (int t = -m_reach; t <= m_reach; ++t) fs[t + m_reach] = f.amplitude(t * h);
    std::vector<double> c(count, 0.0);
    for (int m = 0; m < count; ++m) {
        // c(u) = sum_t f(t h - u) f(t h) h; f(t h - u) vanishes unless
        // |t - m| <= m_reach
        double acc = 0.0;
        const int t_lo = std::max(-m_reach, m - m_reach);
        const int t_hi = std::min(m_reach, m + m_reach);
        for (int t = t_lo; t <= t_hi; ++t) acc += fs[t - m + m_reach] * fs[t + m_reach];
        c[m] = acc * h;
    }
    const double c0 = c[0];
    if (!(c0 > 0.0)) throw std::runtime_error("autocorrelation: degenerate profile");
    for (double& v : c) v /= c0;
    return c;
}

} // namespace

AcceptanceProfile AcceptanceProfile::gaussian(double s) {
    if (!(s > 0.0)) throw std::invalid_argument("AcceptanceProfile: width must be positive");
    AcceptanceProfile p;
    p.shape_ = ProfileShape::gaussian;
    p.width_ = s;
    return p;
}

AcceptanceProfile AcceptanceProfile::top_hat(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("AcceptanceProfile: width must be positive");
    AcceptanceProfile p;
    p.shape_ = ProfileShape::top_hat;
    p.width_ = a;
    return p;
}

AcceptanceProfile AcceptanceProfile::sampled(std::vector<double> values, double spacing,
                                             bool renormalize) {
    if (values.size() < 3 || !(spacing > 0.0))
        throw std::invalid_argument("AcceptanceProfile: bad samples");
    AcceptanceProfile p;
    p.shape_ = ProfileShape::sampled;
    p.samples_ = std::move(values);
    p.sample_spacing_ = spacing;
    p.width_ = 0.5 * spacing * (p.samples_.size() - 1);
    if (renormalize) {
        double n2 = 0.0;
        for (double v : p.samples_) n2 += v * v;
        n2 *= spacing;
        if (!(n2 > 0.0)) throw std::invalid_argument("AcceptanceProfile: zero samples");
        const double inv = 1.0 / std::sqrt(n2);
        for (double& v : p.samples_) v *= inv;
    }
    return p;
}

double AcceptanceProfile::amplitude(double u) const {
    switch (shape_) {
        case ProfileShape::gaussian: {
            // |f|^2 is N(0, width^2)
            const double s2 = width_ * width_;
            return std::pow(2.0 * M_PI * s2, -0.25) * std::exp(-u * u / (4.0 * s2));
        }
        case ProfileShape::top_hat: {
            // half-weight exactly on the edge so trapezoidal sums stay exact
            const double edge = std::abs(std::abs(u) - width_);
            if (edge <= 1e-12 * std::max(1.0, width_)) return std::sqrt(0.25 / width_);
            return std::abs(u) < width_ ? 1.0 / std::sqrt(2.0 * width_) : 0.0;
        }
        case ProfileShape::sampled: {
            const double center = 0.5 * (samples_.size() - 1);
            const double pos = u / sample_spacing_ + center;
            if (pos <= 0.0 || pos >= samples_.size() - 1.0) return 0.0;
            const std::size_t i = static_cast<std::size_t>(pos);
            const double frac = pos - i;
            return samples_[i] * (1.0 - frac) + samples_[i + 1] * frac;
        }
    }
    return 0.0;
}

std::vector<double> AcceptanceProfile::sampled_kernel(double h, int n) const {
    std::vector<double> k(n, 0.0);
    double sum = 0.0;
    for (int m = 0; m < n; ++m) {
        const double u = (m <= n / 2 ? m : m - n) * h;
        const double a = amplitude(u);
        k[m] = a * a;
        sum += k[m];
    }
    if (!(sum > 0.0)) throw std::runtime_error("sampled_kernel: profile unresolved on grid");
    const double inv = 1.0 / (sum * h);
    for (double& v : k) v *= inv;
    return k;
}

std::vector<double> AcceptanceProfile::autocorrelation(double h, int n) const {
    std::vector<double> offs = autocorr_offsets(*this, h, n / 2 + 1);
    std::vector<double> c(n);
    for (int m = 0; m < n; ++m) c[m] = offs[m <= n / 2 ? m : n - m];
    return c;
}

double AcceptanceProfile::l2_norm_sq(double h) const {
    const double reach = 14.0 * width_;
    const int m_reach = static_cast<int>(std::ceil(reach / h));
    double acc = 0.0;
    for (int t = -m_reach; t <= m_reach; ++t) {
        const double a = amplitude(t * h);
        acc += a * a;
    }
    return acc * h;
}

double sigma_f_sq(const AcceptanceProfile& f, double h, int n) {
    const std::vector<double> k = f.sampled_kernel(h, n);
    double acc = 0.0;
    for (int m = 0; m < n; ++m) {
        const double u = (m <= n / 2 ? m : m - n) * h;
        acc += u * u * k[m];
    }
    return acc * h;
}

double check_resolution_identity(const AcceptanceProfile& f, const Lattice& lat, double margin) {
    const int n = lat.n_points;
    const double dy = lat.dy();
    std::vector<double> f2(2 * n - 1);
    for (int m = -(n - 1); m <= n - 1; ++m) {
        const double a = f.amplitude(m * dy);
        f2[m + n - 1] = a * a;
    }
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        const double yj = lat.y(j);
        if (yj - lat.y_min < margin || lat.y_max - yj < margin) continue;
        double acc = 0.0;
        for (int t = 0; t < n; ++t) acc += f2[t - j + n - 1];
        worst = std::max(worst, std::abs(acc * dy - 1.0));
    }
    return worst;
}

ProbabilityDensity smooth_density(const ProbabilityDensity& w, const AcceptanceProfile& f) {
    const int n = static_cast<int>(w.vals.size());
    const std::vector<double> kernel = f.sampled_kernel(w.spacing, n);
    ProbabilityDensity out;
    out.spacing = w.spacing;
    out.origin = w.origin;
    // direct circular convolution: all terms are nonnegative, so the power
    // sums obey the smoothing inequalities to rounding, with no FFT noise to
    // clamp away
    out.vals.assign(w.vals.size(), 0.0);
    for (int m = 0; m < n; ++m) {
        const double k = kernel[m];
        if (k == 0.0) continue;
        const double kh = k * w.spacing;
        for (int j = 0; j < n; ++j) {
            const int src = j - m >= 0 ? j - m : j - m + n;
            out.vals[j] += kh * w.vals[src];
        }
    }
    out.clamp_and_normalize();
    return out;
}

std::pair<WaveFunction, double> kraus_conditional(const WaveFunction& psi,
                                                  const AcceptanceProfile& f, double zeta,
                                                  double weight_floor) {
    WaveFunction out;
    out.lattice = psi.lattice;
    out.amps.resize(psi.amps.size());
    double w = 0.0;
    for (std::size_t j = 0; j < psi.amps.size(); ++j) {
        out.amps[j] = f.amplitude(zeta - psi.lattice.y(static_cast<int>(j))) * psi.amps[j];
        w += std::norm(out.amps[j]);
    }
    w *= psi.lattice.dy();
    if (w <= weight_floor || !(w > 0.0))
        throw std::domain_error("kraus_conditional: outcome weight below floor");
    const double inv = 1.0 / std::sqrt(w);
    for (cd& a : out.amps) a *= inv;
    return {std::move(out), w};
}

DensityMatrix nonselective_channel(const DensityMatrix& rho, const AcceptanceProfile& f) {
    const int n = rho.lattice.n_points;
    const std::vector<double> c = autocorr_offsets(f, rho.lattice.dy(), n);
    DensityMatrix out;
    out.lattice = rho.lattice;
    out.elems.resize(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) out.elems(j, k) = rho.elems(j, k) * c[std::abs(j - k)];
    return out;
}

MeasurementRecord measure(const WaveFunction& psi, const AcceptanceProfile& f, int stride,
                          double coverage_tol) {
    if (stride < 1) throw std::invalid_argument("measure: stride must be positive");
    const Lattice& lat = psi.lattice;
    const int n = lat.n_points;
    const double dy = lat.dy();
    const double dzeta = stride * dy;
    // f sampled at integer lattice offsets; zeta grid lies on the lattice
    std::vector<double> f_off(2 * n - 1);
    for (int m = -(n - 1); m <= n - 1; ++m) f_off[m + n - 1] = f.amplitude(m * dy);

    const int n_zeta = n / stride;
    std::vector<double> weights(n_zeta, 0.0);
    for (int t = 0; t < n_zeta; ++t) {
        const int zi = t * stride;
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += f_off[zi - j + n - 1] * f_off[zi - j + n - 1] * std::norm(psi.amps[j]);
        weights[t] = acc * dy * dzeta;
    }
    double total = 0.0, wmax = 0.0;
    for (double w : weights) {
        total += w;
        wmax = std::max(wmax, w);
    }
    if (std::abs(total - 1.0) > coverage_tol)
        throw std::domain_error("measure: zeta grid does not cover the smoothed support");

    MeasurementRecord rec;
    rec.outcome_density.spacing = dzeta;
    rec.outcome_density.origin = lat.y_min;
    rec.outcome_density.vals.resize(n_zeta);
    for (int t = 0; t < n_zeta; ++t) rec.outcome_density.vals[t] = weights[t] / dzeta;
    rec.outcome_density.normalize();

    const double floor = 1e-12 * wmax;
    double retained = 0.0;
    for (int t = 0; t < n_zeta; ++t)
        if (weights[t] >= floor) retained += weights[t];
    rec.discarded_mass = total - retained;
    for (int t = 0; t < n_zeta; ++t) {
        if (weights[t] < floor) continue;
        const int zi = t * stride;
        Conditional c;
        c.zeta = lat.y(zi);
        c.weight = weights[t] / retained;
        c.state.lattice = lat;
        c.state.amps.resize(n);
        double nrm = 0.0;
        for (int j = 0; j < n; ++j) {
            c.state.amps[j] = f_off[zi - j + n - 1] * psi.amps[j];
            nrm += std::norm(c.state.amps[j]);
        }
        const double inv = 1.0 / std::sqrt(nrm * dy);
        for (cd& a : c.state.amps) a *= inv;
        rec.conditionals.push_back(std::move(c));
    }
    return rec;
}

std::vector<DenseConditional> measure_dense(const DensityMatrix& rho, const AcceptanceProfile& f,
                                            int stride) {
    const Lattice& lat = rho.lattice;
    const int n = lat.n_points;
    const double dy = lat.dy();
    std::vector<double> f_off(2 * n - 1);
    for (int m = -(n - 1); m <= n - 1; ++m) f_off[m + n - 1] = f.amplitude(m * dy);
    std::vector<DenseConditional> out;
    double wmax = 0.0;
    std::vector<double> weights(n / stride, 0.0);
    for (int t = 0; t < n / stride; ++t) {
        const int zi = t * stride;
        double acc = 0.0;
        for (int j = 0; j < n; ++j)
            acc += f_off[zi - j + n - 1] * f_off[zi - j + n - 1] * rho.elems(j, j).real();
        weights[t] = acc * dy * stride * dy;
        wmax = std::max(wmax, weights[t]);
    }
    double retained = 0.0;
    for (double w : weights)
        if (w >= 1e-12 * wmax) retained += w;
    for (int t = 0; t < n / stride; ++t) {
        if (weights[t] < 1e-12 * wmax) continue;
        const int zi = t * stride;
        DenseConditional dc;
        dc.zeta = lat.y(zi);
        dc.weight = weights[t] / retained;
        dc.state.lattice = lat;
        dc.state.elems.resize(n, n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                dc.state.elems(j, k) =
                    f_off[zi - j + n - 1] * rho.elems(j, k) * f_off[zi - k + n - 1];
        const double tr = dc.state.trace();
        dc.state.elems /= tr;
        out.push_back(std::move(dc));
    }
    return out;
}

} // namespace ceu
