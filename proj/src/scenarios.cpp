#include "ceu/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ceu/fft.hpp"

namespace ceu {

namespace {

// Convolution against a kernel whose FFT is cached by the caller.
std::vector<double> convolve_cached(const std::vector<double>& w, const std::vector<cd>& kernel_fft,
                                    double spacing) {
    const std::size_t n = w.size();
    std::vector<cd> fw(n);
    for (std::size_t i = 0; i < n; ++i) fw[i] = cd(w[i], 0.0);
    fw = fft::transform(std::move(fw), -1);
    for (std::size_t i = 0; i < n; ++i) fw[i] *= kernel_fft[i];
    fw = fft::transform(std::move(fw), +1);
    std::vector<double> out(n);
    const double scale = spacing / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(0.0, fw[i].real() * scale);
    return out;
}

void renormalize(std::vector<double>& v, double spacing) {
    double s = 0.0;
    for (double x : v) s += x;
    s *= spacing;
    for (double& x : v) x /= s;
}

double renyi_from_power_sum(double ps, double alpha, const std::vector<double>& v, double weight) {
    if (std::abs(alpha - 1.0) < kOrderOneBand) {
        double h = 0.0;
        for (double x : v)
            if (x > 0.0) h -= x * std::log(x);
        return h * weight;
    }
    return std::log(ps) / (1.0 - alpha);
}

} // namespace

StateEnsemble pure(WaveFunction psi) {
    StateEnsemble e;
    e.push_back({1.0, std::move(psi)});
    return e;
}

DensityMatrix to_density_matrix(const StateEnsemble& ens) {
    if (ens.empty()) throw std::invalid_argument("to_density_matrix: empty ensemble");
    const int n = ens.front().psi.lattice.n_points;
    DensityMatrix rho;
    rho.lattice = ens.front().psi.lattice;
    rho.elems = Eigen::MatrixXcd::Zero(n, n);
    for (const WeightedState& ws : ens)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                rho.elems(j, k) += ws.weight * ws.psi.amps[j] * std::conj(ws.psi.amps[k]);
    return rho;
}

ProbabilityDensity ensemble_density(const StateEnsemble& ens, Representation rep) {
    if (ens.empty()) throw std::invalid_argument("ensemble_density: empty ensemble");
    const Lattice& lat = ens.front().psi.lattice;
    ProbabilityDensity w;
    w.spacing = rep == Representation::position ? lat.dy() : lat.dx();
    w.origin = rep == Representation::position ? lat.y_min : lat.x_min();
    w.vals.assign(lat.n_points, 0.0);
    for (const WeightedState& ws : ens) {
        if (rep == Representation::position) {
            for (int j = 0; j < lat.n_points; ++j) w.vals[j] += ws.weight * std::norm(ws.psi.amps[j]);
        } else {
            WaveFunction t = to_conjugate(ws.psi);
            for (int k = 0; k < lat.n_points; ++k) w.vals[k] += ws.weight * std::norm(t.amps[k]);
        }
    }
    w.clamp_and_normalize();
    return w;
}

double kappa(const EntropyOrderPair& orders) { return orders.kappa(); }

double bound_value(const EntropyOrderPair& orders, BoundFamily bounds, EntropyFamily family,
                   std::optional<double> bin_product) {
    const double cell = bounds == BoundFamily::position_momentum ? orders.kappa() * M_PI : 2.0 * M_PI;
    if (family == EntropyFamily::tsallis) {
        if (!bin_product)
            throw std::invalid_argument("bound_value: Tsallis bounds require binning");
        return alpha_log(cell / *bin_product, orders.mu());
    }
    return bin_product ? std::log(cell / *bin_product) : std::log(cell);
}

double bound_value(const ScenarioConfig& cfg) {
    std::optional<double> prod;
    if (cfg.zeta_bins && cfg.xi_bins)
        prod = cfg.zeta_bins->max_width() * cfg.xi_bins->max_width();
    else if (cfg.zeta_bins || cfg.xi_bins)
        throw std::invalid_argument("bound_value: bins must be given for both axes or neither");
    return bound_value(cfg.orders, cfg.bounds, cfg.family, prod);
}

// Conjugate-representation diagonal of the channel output. For each
// component the channel multiplies the position kernel elementwise by the
// profile autocorrelation, so the momentum density is the phase-corrected
// transform of c_u * A_u with A the circular autocorrelation of the
// amplitudes.
static ProbabilityDensity channel_conjugate_density(const StateEnsemble& ens,
                                                    const AcceptanceProfile& f) {
    const Lattice& lat = ens.front().psi.lattice;
    const int n = lat.n_points;
    const double dy = lat.dy();
    const std::vector<double> c = f.autocorrelation(dy, n);
    std::vector<cd> b(n, cd(0.0, 0.0));
    for (const WeightedState& ws : ens) {
        std::vector<cd> a = fft::circular_autocorrelation(ws.psi.amps);
        for (int u = 0; u < n; ++u) b[u] += ws.weight * c[u] * a[u];
    }
    const double xmin = lat.x_min();
    for (int u = 0; u < n; ++u) {
        const double ph = -xmin * u * dy;
        b[u] *= cd(std::cos(ph), std::sin(ph));
    }
    b = fft::transform(std::move(b), -1);
    ProbabilityDensity W;
    W.spacing = lat.dx();
    W.origin = xmin;
    W.vals.resize(n);
    const double scale = dy * dy * dy / (2.0 * M_PI); // dy^2/(2pi) * dy from A_u
    for (int k = 0; k < n; ++k) W.vals[k] = b[k].real() * scale;
    W.clamp_and_normalize();
    return W;
}

ScenarioOneDensities scenario_one_densities(const StateEnsemble& state, const AcceptanceProfile& f,
                                            const AcceptanceProfile& g,
                                            const std::optional<BinSpec>& zeta_bins,
                                            const std::optional<BinSpec>& xi_bins) {
    ScenarioOneDensities out;
    out.P = smooth_density(ensemble_density(state, Representation::position), f);
    out.Q = smooth_density(channel_conjugate_density(state, f), g);
    if (zeta_bins) out.p_binned = bin_density(out.P, *zeta_bins);
    if (xi_bins) out.q_binned = bin_density(out.Q, *xi_bins);
    return out;
}

ScenarioTwoEval scenario_two_eval(const StateEnsemble& state, const AcceptanceProfile& f,
                                  const AcceptanceProfile& g,
                                  const std::vector<EntropyOrderPair>& orders,
                                  const std::optional<BinSpec>& zeta_bins,
                                  const std::optional<BinSpec>& xi_bins, int stride) {
    if (state.empty()) throw std::invalid_argument("scenario_two_eval: empty ensemble");
    if (stride < 1) throw std::invalid_argument("scenario_two_eval: stride must be positive");
    const bool binned = zeta_bins.has_value() && xi_bins.has_value();
    if (zeta_bins.has_value() != xi_bins.has_value())
        throw std::invalid_argument("scenario_two_eval: bins must cover both axes or neither");

    const Lattice& lat = state.front().psi.lattice;
    const int n = lat.n_points;
    const double dy = lat.dy();
    const double dx = lat.dx();
    const double dzeta = stride * dy;
    const double xmin = lat.x_min();

    std::vector<double> f_off(2 * n - 1);
    for (int m = -(n - 1); m <= n - 1; ++m) f_off[m + n - 1] = f.amplitude(m * dy);

    std::vector<cd> kf_fft(n), kg_fft(n);
    {
        std::vector<double> kf = f.sampled_kernel(dy, n);
        std::vector<double> kg = g.sampled_kernel(dx, n);
        for (int i = 0; i < n; ++i) {
            kf_fft[i] = cd(kf[i], 0.0);
            kg_fft[i] = cd(kg[i], 0.0);
        }
        kf_fft = fft::transform(std::move(kf_fft), -1);
        kg_fft = fft::transform(std::move(kg_fft), -1);
    }

    // conjugate-transform phase tables
    std::vector<cd> pre(n), post(n);
    for (int j = 0; j < n; ++j) {
        const double ph = -xmin * j * dy;
        pre[j] = cd(std::cos(ph), std::sin(ph));
    }
    for (int k = 0; k < n; ++k) {
        const double ph = -lat.x(k) * lat.y_min;
        post[k] = cd(std::cos(ph), std::sin(ph));
    }

    const int n_zeta = n / stride;
    std::vector<double> weights(n_zeta, 0.0);
    for (int t = 0; t < n_zeta; ++t) {
        const int zi = t * stride;
        double acc = 0.0;
        for (const WeightedState& ws : state) {
            double a = 0.0;
            for (int j = 0; j < n; ++j) {
                const double fv = f_off[zi - j + n - 1];
                a += fv * fv * std::norm(ws.psi.amps[j]);
            }
            acc += ws.weight * a;
        }
        weights[t] = acc * dy * dzeta;
    }
    double wmax = 0.0, total = 0.0;
    for (double w : weights) {
        wmax = std::max(wmax, w);
        total += w;
    }
    const double floor = 1e-12 * wmax;
    double retained = 0.0;
    for (double w : weights)
        if (w >= floor) retained += w;

    ScenarioTwoEval ev;
    ev.discarded_mass = 1.0 - retained;
    ev.per_order.assign(orders.size(), ScenarioTwoTerms{});
    for (ScenarioTwoTerms& tm : ev.per_order) {
        tm.min_pointwise_cont = std::numeric_limits<double>::infinity();
        tm.min_pointwise_bin = std::numeric_limits<double>::infinity();
    }

    std::vector<double> pos(n), conj(n);
    std::vector<cd> work(n);
    for (int t = 0; t < n_zeta; ++t) {
        if (weights[t] < floor) continue;
        const int zi = t * stride;
        const double omega = weights[t] / retained;

        std::fill(pos.begin(), pos.end(), 0.0);
        std::fill(conj.begin(), conj.end(), 0.0);
        double denom = 0.0;
        for (const WeightedState& ws : state) {
            for (int j = 0; j < n; ++j) work[j] = pre[j] * (f_off[zi - j + n - 1] * ws.psi.amps[j]);
            for (int j = 0; j < n; ++j) {
                const double d = ws.weight * std::norm(work[j]);
                pos[j] += d;
                denom += d;
            }
            work = fft::transform(std::move(work), -1);
            const double s2 = dy * dy / (2.0 * M_PI);
            for (int k = 0; k < n; ++k) conj[k] += ws.weight * s2 * std::norm(work[k]);
        }
        const double inv_pos = 1.0 / (denom * dy);
        for (int j = 0; j < n; ++j) pos[j] *= inv_pos;
        {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += conj[k];
            const double inv = 1.0 / (s * dx);
            for (int k = 0; k < n; ++k) conj[k] *= inv;
        }

        ProbabilityDensity Pz, Qz;
        Pz.spacing = dy;
        Pz.origin = lat.y_min;
        Pz.vals = convolve_cached(pos, kf_fft, dy);
        renormalize(Pz.vals, dy);
        Qz.spacing = dx;
        Qz.origin = xmin;
        Qz.vals = convolve_cached(conj, kg_fft, dx);
        renormalize(Qz.vals, dx);

        DiscreteDistribution pb, qb;
        if (binned) {
            pb = bin_density(Pz, *zeta_bins);
            qb = bin_density(Qz, *xi_bins);
        }

        for (std::size_t oi = 0; oi < orders.size(); ++oi) {
            const double a = orders[oi].alpha, bb = orders[oi].beta;
            ScenarioTwoTerms& tm = ev.per_order[oi];
            double r1, r2;
            if (std::abs(a - 1.0) < kOrderOneBand) {
                r1 = renyi_from_power_sum(0.0, 1.0, Pz.vals, dy);
                r2 = renyi_from_power_sum(0.0, 1.0, Qz.vals, dx);
            } else {
                r1 = renyi_from_power_sum(power_sum(Pz.vals, a, dy), a, Pz.vals, dy);
                r2 = renyi_from_power_sum(power_sum(Qz.vals, bb, dx), bb, Qz.vals, dx);
            }
            tm.term1_cont += omega * r1;
            tm.term2_cont += omega * r2;
            tm.min_pointwise_cont = std::min(tm.min_pointwise_cont, r1 + r2);
            if (binned) {
                double rb1, rb2, hb1, hb2;
                if (std::abs(a - 1.0) < kOrderOneBand) {
                    rb1 = hb1 = shannon(pb);
                    rb2 = hb2 = shannon(qb);
                } else {
                    const double psa = power_sum(pb.probs, a);
                    const double qsb = power_sum(qb.probs, bb);
                    rb1 = std::log(psa) / (1.0 - a);
                    rb2 = std::log(qsb) / (1.0 - bb);
                    hb1 = (psa - 1.0) / (1.0 - a);
                    hb2 = (qsb - 1.0) / (1.0 - bb);
                }
                tm.term1_bin += omega * rb1;
                tm.term2_bin += omega * rb2;
                tm.ts1_bin += omega * hb1;
                tm.ts2_bin += omega * hb2;
                tm.min_pointwise_bin = std::min(tm.min_pointwise_bin, rb1 + rb2);
            }
        }
    }
    return ev;
}

UncertaintyReport scenario_one(const ScenarioConfig& cfg) {
    const double bnd = bound_value(cfg);
    ScenarioOneDensities d =
        scenario_one_densities(cfg.state, cfg.f, cfg.g, cfg.zeta_bins, cfg.xi_bins);
    UncertaintyReport rep;
    rep.bound = bnd;
    const bool binned = cfg.zeta_bins.has_value();
    if (cfg.family == EntropyFamily::tsallis) {
        rep.first = tsallis(*d.p_binned, cfg.orders.alpha);
        rep.second = tsallis(*d.q_binned, cfg.orders.beta);
    } else if (binned) {
        rep.first = renyi(*d.p_binned, cfg.orders.alpha);
        rep.second = renyi(*d.q_binned, cfg.orders.beta);
    } else {
        rep.first = renyi_density(d.P, cfg.orders.alpha);
        rep.second = renyi_density(d.Q, cfg.orders.beta);
    }
    rep.margin = rep.first + rep.second - rep.bound;
    return rep;
}

UncertaintyReport scenario_two(const ScenarioConfig& cfg) {
    const double bnd = bound_value(cfg);
    ScenarioTwoEval ev = scenario_two_eval(cfg.state, cfg.f, cfg.g, {cfg.orders}, cfg.zeta_bins,
                                           cfg.xi_bins, cfg.zeta_stride);
    const ScenarioTwoTerms& tm = ev.per_order.front();
    UncertaintyReport rep;
    rep.bound = bnd;
    rep.discarded_mass = ev.discarded_mass;
    const bool binned = cfg.zeta_bins.has_value();
    if (cfg.family == EntropyFamily::tsallis) {
        rep.first = tm.ts1_bin;
        rep.second = tm.ts2_bin;
    } else if (binned) {
        rep.first = tm.term1_bin;
        rep.second = tm.term2_bin;
        rep.pointwise_min_margin = tm.min_pointwise_bin - bnd;
    } else {
        rep.first = tm.term1_cont;
        rep.second = tm.term2_cont;
        rep.pointwise_min_margin = tm.min_pointwise_cont - bnd;
    }
    rep.margin = rep.first + rep.second - rep.bound;
    return rep;
}

double PreparationSlacks::min_slack() const {
    return std::min({raw_forward, raw_reverse, smooth_forward, smooth_reverse, binned_forward,
                     binned_reverse});
}

PreparationSlacks preparation_check(const StateEnsemble& state, const EntropyOrderPair& orders,
                                    BoundFamily bounds, const AcceptanceProfile& f,
                                    const AcceptanceProfile& g, const BinSpec& zeta_bins,
                                    const BinSpec& xi_bins) {
    const double a = orders.alpha, b = orders.beta;
    if (!(a > 1.0 && b < 1.0))
        throw std::invalid_argument("preparation_check: requires alpha > 1 > beta");
    const double cell = bounds == BoundFamily::position_momentum ? orders.kappa() * M_PI : 2.0 * M_PI;
    const double exp_c = (1.0 - b) / b;
    const double c_raw = std::pow(1.0 / cell, exp_c);
    const double c_bin =
        std::pow(zeta_bins.max_width() * xi_bins.max_width() / cell, exp_c);

    ProbabilityDensity w = ensemble_density(state, Representation::position);
    ProbabilityDensity W = ensemble_density(state, Representation::conjugate);
    ProbabilityDensity P = smooth_density(w, f);
    ProbabilityDensity Q = smooth_density(W, g);
    DiscreteDistribution p = bin_density(P, zeta_bins);
    DiscreteDistribution q = bin_density(Q, xi_bins);

    PreparationSlacks s;
    s.raw_forward = c_raw * pnorm_density(W, b) - pnorm_density(w, a);
    s.raw_reverse = c_raw * pnorm_density(w, b) - pnorm_density(W, a);
    s.smooth_forward = c_raw * pnorm_density(Q, b) - pnorm_density(P, a);
    s.smooth_reverse = c_raw * pnorm_density(P, b) - pnorm_density(Q, a);
    s.binned_forward = c_bin * pnorm_discrete(q, b) - pnorm_discrete(p, a);
    s.binned_reverse = c_bin * pnorm_discrete(p, b) - pnorm_discrete(q, a);
    return s;
}

} // namespace ceu
