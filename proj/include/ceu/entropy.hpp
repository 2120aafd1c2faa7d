#pragma once

#include <vector>

#include "ceu/lattice.hpp"

namespace ceu {

/// Guard band around order 1 inside which the Shannon branch is taken.
inline constexpr double kOrderOneBand = 1e-9;

struct DiscreteDistribution {
    std::vector<double> probs;

    double total() const;
    void validate(double tol = 1e-10) const;
};

/// Strictly increasing bin marks l_i with intervals l_{i+1} - l_i.
struct BinSpec {
    std::vector<double> marks;

    explicit BinSpec(std::vector<double> m);
    static BinSpec uniform(double lo, double hi, double width);

    std::size_t bin_count() const { return marks.size() - 1; }
    double max_width() const;
};

/// Conjugate entropy orders with 1/alpha + 1/beta = 2.
struct EntropyOrderPair {
    double alpha = 1.0;
    double beta = 1.0;

    /// beta derived as alpha/(2 alpha - 1); requires alpha > 1/2.
    static EntropyOrderPair from_alpha(double alpha);
    EntropyOrderPair(double a, double b);

    double mu() const { return alpha > beta ? alpha : beta; }
    double kappa() const;
};

double shannon(const DiscreteDistribution& p);
double renyi(const DiscreteDistribution& p, double alpha);
double tsallis(const DiscreteDistribution& p, double alpha);
double alpha_log(double xi, double alpha);

double pnorm_discrete(const DiscreteDistribution& p, double beta);
double pnorm_density(const ProbabilityDensity& w, double beta);

/// sum_i p_i^a, zero entries skipped. Shared kernel of the entropies and norms.
double power_sum(const std::vector<double>& p, double a, double weight = 1.0);

double renyi_density(const ProbabilityDensity& w, double alpha);

/// Integrates the piecewise-constant interpolant of w (cells centered on the
/// samples) exactly over each bin. Mass outside the marks goes to the edge
/// bins when absorb_edges is set, otherwise it must stay below 1e-8.
DiscreteDistribution bin_density(const ProbabilityDensity& w, const BinSpec& bins,
                                 bool absorb_edges = true);

} // namespace ceu
