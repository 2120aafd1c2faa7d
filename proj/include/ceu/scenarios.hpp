#pragma once

#include <optional>
#include <vector>

#include "ceu/detector.hpp"
#include "ceu/entropy.hpp"
#include "ceu/lattice.hpp"

namespace ceu {

struct WeightedState {
    double weight = 1.0;
    WaveFunction psi;
};

/// Mixed states are carried as pure-state ensembles; the measurement channel
/// and all densities are linear in the state, so every pipeline runs per
/// component.
using StateEnsemble = std::vector<WeightedState>;

StateEnsemble pure(WaveFunction psi);
DensityMatrix to_density_matrix(const StateEnsemble& ens);
ProbabilityDensity ensemble_density(const StateEnsemble& ens, Representation rep);

enum class EntropyFamily { renyi, tsallis };
enum class BoundFamily { general, position_momentum };

struct ScenarioConfig {
    StateEnsemble state;
    AcceptanceProfile f = AcceptanceProfile::gaussian(1.0);
    AcceptanceProfile g = AcceptanceProfile::gaussian(1.0);
    EntropyOrderPair orders = EntropyOrderPair(1.0, 1.0);
    std::optional<BinSpec> zeta_bins;
    std::optional<BinSpec> xi_bins;
    EntropyFamily family = EntropyFamily::renyi;
    BoundFamily bounds = BoundFamily::general;
    int zeta_stride = 1;
};

struct UncertaintyReport {
    double first = 0.0;
    double second = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    double discarded_mass = 0.0;
    // scenario 2 only: min over retained zeta of the pointwise entropy sum
    // minus the bound
    std::optional<double> pointwise_min_margin;
};

double kappa(const EntropyOrderPair& orders);

/// Lower bound applicable to the configuration: ln(2 pi) / ln(kappa pi) for
/// continuous Renyi sums, divided by the bin-size product (inside the log /
/// mu-log) when bins are present. Tsallis requires bins.
double bound_value(const ScenarioConfig& cfg);
double bound_value(const EntropyOrderPair& orders, BoundFamily bounds, EntropyFamily family,
                   std::optional<double> bin_product);

// ---- multi-order evaluation (shared by the report functions, the harness
// ---- and the verification sweeps)

struct ScenarioOneDensities {
    ProbabilityDensity P; // smoothed first-observable density of the input
    ProbabilityDensity Q; // smoothed conjugate density of the channel output
    std::optional<DiscreteDistribution> p_binned;
    std::optional<DiscreteDistribution> q_binned;
};

ScenarioOneDensities scenario_one_densities(const StateEnsemble& state,
                                            const AcceptanceProfile& f,
                                            const AcceptanceProfile& g,
                                            const std::optional<BinSpec>& zeta_bins,
                                            const std::optional<BinSpec>& xi_bins);

struct ScenarioTwoTerms {
    double term1_cont = 0.0, term2_cont = 0.0;
    double term1_bin = 0.0, term2_bin = 0.0;
    double ts1_bin = 0.0, ts2_bin = 0.0;
    double min_pointwise_cont = 0.0; // min over zeta of R_a + R_b (continuous)
    double min_pointwise_bin = 0.0;
};

struct ScenarioTwoEval {
    std::vector<ScenarioTwoTerms> per_order;
    double discarded_mass = 0.0;
};

ScenarioTwoEval scenario_two_eval(const StateEnsemble& state, const AcceptanceProfile& f,
                                  const AcceptanceProfile& g,
                                  const std::vector<EntropyOrderPair>& orders,
                                  const std::optional<BinSpec>& zeta_bins,
                                  const std::optional<BinSpec>& xi_bins, int stride);

// ---- spec-level operations

UncertaintyReport scenario_one(const ScenarioConfig& cfg);
UncertaintyReport scenario_two(const ScenarioConfig& cfg);

/// Slack (rhs - lhs) of each norm inequality of the preparation layer:
/// raw densities, smoothed densities, binned distributions, in both
/// directions. Requires alpha > 1 > beta.
struct PreparationSlacks {
    double raw_forward = 0.0;   // ||w||_a <= C ||W||_b
    double raw_reverse = 0.0;   // ||W||_a <= C ||w||_b
    double smooth_forward = 0.0;
    double smooth_reverse = 0.0;
    double binned_forward = 0.0;
    double binned_reverse = 0.0;
    double min_slack() const;
};

PreparationSlacks preparation_check(const StateEnsemble& state, const EntropyOrderPair& orders,
                                    BoundFamily bounds, const AcceptanceProfile& f,
                                    const AcceptanceProfile& g, const BinSpec& zeta_bins,
                                    const BinSpec& xi_bins);

} // namespace ceu
