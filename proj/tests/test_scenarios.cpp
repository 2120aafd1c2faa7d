#include <doctest.h>

#include <cmath>

#include "ceu/random_states.hpp"
#include "ceu/scenarios.hpp"

using namespace ceu;

namespace {
const Lattice kLat(512, -10.0, 10.0);

ScenarioConfig base_config(StateEnsemble state, double alpha) {
    ScenarioConfig cfg;
    cfg.state = std::move(state);
    cfg.f = AcceptanceProfile::gaussian(0.2);
    cfg.g = AcceptanceProfile::gaussian(0.2);
    cfg.orders = EntropyOrderPair::from_alpha(alpha);
    return cfg;
}
} // namespace

TEST_CASE("bound values") {
    const EntropyOrderPair shannon_pair = EntropyOrderPair::from_alpha(1.0);
    CHECK(bound_value(shannon_pair, BoundFamily::general, EntropyFamily::renyi, std::nullopt) ==
          doctest::Approx(1.837877).epsilon(1e-6));
    CHECK(bound_value(shannon_pair, BoundFamily::position_momentum, EntropyFamily::renyi,
                      std::nullopt) == doctest::Approx(std::log(M_E * M_PI)).epsilon(1e-12));
    // binned x-p bound at Shannon orders, 0.1 x 0.1 bins: ln(100 e pi)
    CHECK(bound_value(shannon_pair, BoundFamily::position_momentum, EntropyFamily::renyi,
                      0.01) == doctest::Approx(1.0 + std::log(100.0 * M_PI)).epsilon(1e-12));
    // Tsallis bound degenerates to 0 when the bin product reaches the cell
    CHECK(bound_value(EntropyOrderPair::from_alpha(2.0), BoundFamily::general,
                      EntropyFamily::tsallis, 2.0 * M_PI) == doctest::Approx(0.0));
    CHECK_THROWS_AS(bound_value(shannon_pair, BoundFamily::general, EntropyFamily::tsallis,
                                std::nullopt),
                    std::invalid_argument);
    // the saturating-case margin between the two continuous bounds
    CHECK(std::log(M_E * M_PI) - std::log(2.0 * M_PI) ==
          doctest::Approx(0.306853).epsilon(1e-6));
}

TEST_CASE("tightening chain and monotone binning") {
    for (double a : {1.0, 1.25, 1.5, 2.0, 4.0}) {
        const EntropyOrderPair pair = EntropyOrderPair::from_alpha(a);
        CHECK(pair.kappa() >= 2.0 - 1e-12);
        CHECK(bound_value(pair, BoundFamily::position_momentum, EntropyFamily::renyi,
                          std::nullopt) >=
              bound_value(pair, BoundFamily::general, EntropyFamily::renyi, std::nullopt));
        double prev = -1e300;
        for (double prod : {1.0, 0.25, 0.01, 1e-4}) {
            const double b =
                bound_value(pair, BoundFamily::general, EntropyFamily::renyi, prod);
            CHECK(b >= prev);
            prev = b;
        }
    }
}

TEST_CASE("ensemble density matches the dense density matrix") {
    Rng rng(201);
    StateEnsemble ens = random_mixture(kLat, rng);
    DensityMatrix rho = to_density_matrix(ens);
    for (Representation rep : {Representation::position, Representation::conjugate}) {
        ProbabilityDensity a = ensemble_density(ens, rep);
        ProbabilityDensity b = density_of(rho, rep);
        double worst = 0.0;
        for (std::size_t j = 0; j < a.vals.size(); ++j)
            worst = std::max(worst, std::abs(a.vals[j] - b.vals[j]));
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("scenario one respects its bounds") {
    StateEnsemble gauss = pure(make_gaussian(kLat, 0.0, 1.0, 0.0));
    for (double a : {1.0, 2.0}) {
        ScenarioConfig cfg = base_config(gauss, a);
        UncertaintyReport rep = scenario_one(cfg);
        CHECK(rep.margin >= 0.0);
        CHECK(rep.margin == doctest::Approx(rep.first + rep.second - rep.bound).epsilon(1e-12));

        cfg.bounds = BoundFamily::position_momentum;
        CHECK(scenario_one(cfg).margin >= 0.0);

        cfg.bounds = BoundFamily::general;
        cfg.zeta_bins = BinSpec::uniform(kLat.y_min, kLat.y_max, 0.25);
        cfg.xi_bins =
            BinSpec::uniform(kLat.x_min(), kLat.x_min() + kLat.n_points * kLat.dx(), 0.25);
        UncertaintyReport binned = scenario_one(cfg);
        CHECK(binned.margin >= 0.0);
        CHECK(binned.first >= 0.0);
        CHECK(binned.second >= 0.0);

        cfg.family = EntropyFamily::tsallis;
        CHECK(scenario_one(cfg).margin >= 0.0);
    }
}

TEST_CASE("bins near the cell area give a vanishing bound") {
    StateEnsemble gauss = pure(make_gaussian(kLat, 0.0, 1.0, 0.0));
    ScenarioConfig cfg = base_config(gauss, 1.0);
    const double side = std::sqrt(2.0 * M_PI) - 1e-6;
    cfg.zeta_bins = BinSpec::uniform(kLat.y_min, kLat.y_max, side);
    cfg.xi_bins = BinSpec::uniform(kLat.x_min(), kLat.x_min() + kLat.n_points * kLat.dx(), side);
    UncertaintyReport rep = scenario_one(cfg);
    CHECK(rep.bound <= 1e-5);
    CHECK(rep.margin >= 0.0);
}

TEST_CASE("scenario two averaged and pointwise relations") {
    Rng rng(37);
    for (int t = 0; t < 3; ++t) {
        StateEnsemble st = t == 0 ? pure(make_gaussian(kLat, 0.0, 1.0, 0.0))
                                  : pure(random_superposition(kLat, rng));
        for (double a : {1.0, 2.0}) {
            ScenarioConfig cfg = base_config(st, a);
            cfg.zeta_stride = 4;
            UncertaintyReport rep = scenario_two(cfg);
            CHECK(rep.margin >= -1e-3);
            REQUIRE(rep.pointwise_min_margin.has_value());
            CHECK(*rep.pointwise_min_margin >= -1e-3);
            CHECK(rep.discarded_mass <= 1e-6);
        }
    }
}

TEST_CASE("narrow first profile forces the second term up") {
    StateEnsemble gauss = pure(make_gaussian(kLat, 0.0, 1.0, 0.0));
    ScenarioConfig narrow = base_config(gauss, 1.0);
    narrow.f = AcceptanceProfile::gaussian(0.05);
    narrow.zeta_stride = 2;
    ScenarioConfig wide = base_config(gauss, 1.0);
    wide.f = AcceptanceProfile::gaussian(1.0);
    wide.zeta_stride = 2;
    UncertaintyReport rn = scenario_two(narrow);
    UncertaintyReport rw = scenario_two(wide);
    // sharply localized conditionals spread the conjugate density
    CHECK(rn.second > rw.second);
    CHECK(rn.second >= rn.bound - rn.first - 1e-9);
}

TEST_CASE("preparation norm inequalities") {
    const BinSpec zb = BinSpec::uniform(kLat.y_min, kLat.y_max, 0.2);
    const BinSpec xb =
        BinSpec::uniform(kLat.x_min(), kLat.x_min() + kLat.n_points * kLat.dx(), 0.2);
    const AcceptanceProfile f = AcceptanceProfile::gaussian(0.2);
    const AcceptanceProfile g = AcceptanceProfile::gaussian(0.2);

    StateEnsemble gauss = pure(make_gaussian(kLat, 0.0, 1.0, 0.0));
    for (BoundFamily fam : {BoundFamily::general, BoundFamily::position_momentum}) {
        PreparationSlacks s =
            preparation_check(gauss, EntropyOrderPair::from_alpha(2.0), fam, f, g, zb, xb);
        CHECK(s.min_slack() >= -1e-10);
    }

    Rng rng(41);
    for (int t = 0; t < 5; ++t) {
        StateEnsemble st = pure(random_superposition(kLat, rng, 5));
        PreparationSlacks s = preparation_check(st, EntropyOrderPair::from_alpha(1.5),
                                                BoundFamily::general, f, g, zb, xb);
        CHECK(s.min_slack() >= -1e-10);
    }

    CHECK_THROWS_AS(preparation_check(gauss, EntropyOrderPair::from_alpha(1.0),
                                      BoundFamily::general, f, g, zb, xb),
                    std::invalid_argument);
}
