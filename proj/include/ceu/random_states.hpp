#pragma once

#include <cstdint>

#include "ceu/scenarios.hpp"

namespace ceu {

/// splitmix64-based generator; avoids libstdc++ distribution internals so
/// results are identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);
    double normal();                        // Box-Muller
    int uniform_int(int lo, int hi);        // inclusive

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Superposition of up to max_terms Gaussian packets with random centers,
/// widths, momenta, and complex coefficients; tails kept inside the window.
WaveFunction random_superposition(const Lattice& lat, Rng& rng, int max_terms = 4);

/// Mixture of random superpositions.
StateEnsemble random_mixture(const Lattice& lat, Rng& rng, int max_components = 3);

/// Random nonnegative density on the lattice: a few Gaussian bumps plus a
/// rough piecewise component; normalized.
ProbabilityDensity random_density(const Lattice& lat, Rng& rng);

/// Random strictly increasing marks covering [lo, hi].
BinSpec random_bins(double lo, double hi, Rng& rng, int max_bins = 40);

} // namespace ceu
