#include "ceu/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ceu {

double DiscreteDistribution::total() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

void DiscreteDistribution::validate(double tol) const {
    for (double p : probs)
        if (p < 0.0 || p > 1.0 + tol)
            throw std::domain_error("DiscreteDistribution: entry outside [0,1]");
    if (std::abs(total() - 1.0) > tol)
        throw std::domain_error("DiscreteDistribution: not normalized");
}

BinSpec::BinSpec(std::vector<double> m) : marks(std::move(m)) {
    if (marks.size() < 2) throw std::invalid_argument("BinSpec: need at least two marks");
    for (std::size_t i = 1; i < marks.size(); ++i)
        if (!(marks[i] > marks[i - 1]))
            throw std::invalid_argument("BinSpec: marks must be strictly increasing");
}

BinSpec BinSpec::uniform(double lo, double hi, double width) {
    if (!(width > 0.0) || !(hi > lo)) throw std::invalid_argument("BinSpec::uniform: bad range");
    const int nbins = static_cast<int>(std::ceil((hi - lo) / width - 1e-12));
    std::vector<double> m(nbins + 1);
    for (int i = 0; i <= nbins; ++i) m[i] = lo + i * width;
    return BinSpec(std::move(m));
}

double BinSpec::max_width() const {
    double w = 0.0;
    for (std::size_t i = 1; i < marks.size(); ++i) w = std::max(w, marks[i] - marks[i - 1]);
    return w;
}

EntropyOrderPair::EntropyOrderPair(double a, double b) : alpha(a), beta(b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("EntropyOrderPair: orders must be positive");
    if (std::abs(1.0 / a + 1.0 / b - 2.0) > 1e-12)
        throw std::invalid_argument("EntropyOrderPair: 1/alpha + 1/beta must equal 2");
}

EntropyOrderPair EntropyOrderPair::from_alpha(double alpha) {
    if (!(alpha > 0.5)) throw std::invalid_argument("EntropyOrderPair: alpha must exceed 1/2");
    if (std::isinf(alpha)) return EntropyOrderPair(alpha, 0.5);
    if (std::abs(alpha - 1.0) < kOrderOneBand) return EntropyOrderPair(1.0, 1.0);
    return EntropyOrderPair(alpha, alpha / (2.0 * alpha - 1.0));
}

double EntropyOrderPair::kappa() const {
    // kappa^2 = alpha^{1/(alpha-1)} beta^{1/(beta-1)}; kappa = e at alpha = beta = 1,
    // kappa = 2 in the beta = 1/2 (alpha -> inf) limit.
    if (std::abs(alpha - 1.0) < kOrderOneBand) return M_E;
    const double a = std::max(alpha, beta);
    const double b = std::min(alpha, beta);
    if (b <= 0.5) return 2.0;
    const double log_k2 = std::log(a) / (a - 1.0) + std::log(b) / (b - 1.0);
    return std::exp(0.5 * log_k2);
}

double power_sum(const std::vector<double>& p, double a, double weight) {
    double s = 0.0;
    for (double v : p)
        if (v > 0.0) s += std::pow(v, a);
    return s * weight;
}

double shannon(const DiscreteDistribution& p) {
    double h = 0.0;
    for (double v : p.probs)
        if (v > 0.0) h -= v * std::log(v);
    return h;
}

double renyi(const DiscreteDistribution& p, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("renyi: order must be positive");
    if (std::abs(alpha - 1.0) < kOrderOneBand) return shannon(p);
    return std::log(power_sum(p.probs, alpha)) / (1.0 - alpha);
}

double tsallis(const DiscreteDistribution& p, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("tsallis: order must be positive");
    if (std::abs(alpha - 1.0) < kOrderOneBand) return shannon(p);
    return (power_sum(p.probs, alpha) - 1.0) / (1.0 - alpha);
}

double alpha_log(double xi, double alpha) {
    if (!(xi > 0.0)) throw std::invalid_argument("alpha_log: argument must be positive");
    if (std::abs(alpha - 1.0) < kOrderOneBand) return std::log(xi);
    return (std::pow(xi, 1.0 - alpha) - 1.0) / (1.0 - alpha);
}

double pnorm_discrete(const DiscreteDistribution& p, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("pnorm_discrete: order must be positive");
    return std::pow(power_sum(p.probs, beta), 1.0 / beta);
}

double pnorm_density(const ProbabilityDensity& w, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("pnorm_density: order must be positive");
    return std::pow(power_sum(w.vals, beta, w.spacing), 1.0 / beta);
}

double renyi_density(const ProbabilityDensity& w, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("renyi_density: order must be positive");
    if (std::abs(alpha - 1.0) < kOrderOneBand) {
        double h = 0.0;
        for (double v : w.vals)
            if (v > 0.0) h -= v * std::log(v);
        return h * w.spacing;
    }
    return std::log(power_sum(w.vals, alpha, w.spacing)) / (1.0 - alpha);
}

DiscreteDistribution bin_density(const ProbabilityDensity& w, const BinSpec& bins,
                                 bool absorb_edges) {
    const std::size_t nb = bins.bin_count();
    DiscreteDistribution out;
    out.probs.assign(nb, 0.0);
    const double h = w.spacing;
    double outside = 0.0;
    for (std::size_t j = 0; j < w.vals.size(); ++j) {
        if (w.vals[j] == 0.0) continue;
        const double lo = w.coord(j) - 0.5 * h;
        const double hi = w.coord(j) + 0.5 * h;
        // portion of the cell below / above the mark range
        const double below = std::max(0.0, std::min(hi, bins.marks.front()) - lo);
        const double above = std::max(0.0, hi - std::max(lo, bins.marks.back()));
        if (below > 0.0 || above > 0.0) {
            if (absorb_edges) {
                out.probs.front() += w.vals[j] * below;
                out.probs.back() += w.vals[j] * above;
            } else {
                outside += w.vals[j] * (below + above);
            }
        }
        // overlap with each covered bin
        auto it = std::upper_bound(bins.marks.begin(), bins.marks.end(), std::max(lo, bins.marks.front()));
        std::size_t i = it == bins.marks.begin() ? 0 : (it - bins.marks.begin()) - 1;
        for (; i < nb && bins.marks[i] < hi; ++i) {
            const double a = std::max(lo, bins.marks[i]);
            const double b = std::min(hi, bins.marks[i + 1]);
            if (b > a) out.probs[i] += w.vals[j] * (b - a);
        }
    }
    if (!absorb_edges && outside > 1e-8)
        throw std::domain_error("bin_density: bins do not cover the density support");
    double s = out.total();
    if (!(s > 0.0)) throw std::domain_error("bin_density: empty result");
    for (double& p : out.probs) p /= s;
    return out;
}

} // namespace ceu
