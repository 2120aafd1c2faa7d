#include "ceu/random_states.hpp"

#include <algorithm>
#include <cmath>

namespace ceu {

std::uint64_t Rng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * M_PI * u2);
}

int Rng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

WaveFunction random_superposition(const Lattice& lat, Rng& rng, int max_terms) {
    const int terms = rng.uniform_int(1, max_terms);
    WaveFunction psi;
    psi.lattice = lat;
    psi.amps.assign(lat.n_points, cd(0.0, 0.0));
    for (int t = 0; t < terms; ++t) {
        const double sigma = rng.uniform(0.3, 1.0);
        const double margin = 7.0 * sigma;
        const double y0 = rng.uniform(lat.y_min + margin, lat.y_max - margin);
        const double p0 = rng.uniform(-2.0, 2.0);
        const cd coef(rng.normal(), rng.normal());
        for (int j = 0; j < lat.n_points; ++j) {
            const double y = lat.y(j);
            const double arg = -(y - y0) * (y - y0) / (4.0 * sigma * sigma);
            psi.amps[j] += coef * std::exp(arg) * cd(std::cos(p0 * y), std::sin(p0 * y));
        }
    }
    psi.normalize();
    return psi;
}

StateEnsemble random_mixture(const Lattice& lat, Rng& rng, int max_components) {
    const int comps = rng.uniform_int(1, max_components);
    StateEnsemble ens;
    double total = 0.0;
    for (int i = 0; i < comps; ++i) {
        WeightedState ws;
        ws.weight = rng.uniform(0.2, 1.0);
        ws.psi = random_superposition(lat, rng, 3);
        total += ws.weight;
        ens.push_back(std::move(ws));
    }
    for (WeightedState& ws : ens) ws.weight /= total;
    return ens;
}

ProbabilityDensity random_density(const Lattice& lat, Rng& rng) {
    ProbabilityDensity w;
    w.spacing = lat.dy();
    w.origin = lat.y_min;
    w.vals.assign(lat.n_points, 0.0);
    const int bumps = rng.uniform_int(1, 5);
    for (int b = 0; b < bumps; ++b) {
        const double sigma = rng.uniform(0.1, 2.0);
        const double y0 = rng.uniform(lat.y_min + 0.1 * (lat.y_max - lat.y_min),
                                      lat.y_max - 0.1 * (lat.y_max - lat.y_min));
        const double amp = rng.uniform(0.1, 1.0);
        for (int j = 0; j < lat.n_points; ++j) {
            const double z = (lat.y(j) - y0) / sigma;
            w.vals[j] += amp * std::exp(-0.5 * z * z);
        }
    }
    // rough component exercises non-smooth densities
    if (rng.uniform() < 0.5) {
        const int lo = rng.uniform_int(0, lat.n_points / 2);
        const int hi = rng.uniform_int(lo + 1, lat.n_points - 1);
        const double amp = rng.uniform(0.05, 0.5);
        for (int j = lo; j <= hi; ++j) w.vals[j] += amp * rng.uniform();
    }
    w.normalize();
    return w;
}

BinSpec random_bins(double lo, double hi, Rng& rng, int max_bins) {
    const int nbins = rng.uniform_int(2, max_bins);
    std::vector<double> marks(nbins + 1);
    marks.front() = lo;
    marks.back() = hi;
    for (int i = 1; i < nbins; ++i) marks[i] = rng.uniform(lo, hi);
    std::sort(marks.begin(), marks.end());
    // collapse near-duplicates
    std::vector<double> out;
    out.push_back(marks.front());
    for (double m : marks)
        if (m > out.back() + 1e-6) out.push_back(m);
    if (out.back() < hi) out.push_back(hi);
    return BinSpec(std::move(out));
}

} // namespace ceu
