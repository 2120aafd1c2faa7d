#include <doctest.h>

#include <cmath>

#include "ceu/detector.hpp"
#include "ceu/random_states.hpp"

using namespace ceu;

namespace {
const Lattice kLat(512, -10.0, 10.0);

std::vector<double> gaussian_amplitude_samples(double s, double spacing, int count,
                                               double scale) {
    std::vector<double> v(count);
    const double norm = std::pow(2.0 * M_PI * s * s, -0.25);
    for (int i = 0; i < count; ++i) {
        const double u = (i - 0.5 * (count - 1)) * spacing;
        v[i] = scale * norm * std::exp(-u * u / (4.0 * s * s));
    }
    return v;
}
} // namespace

TEST_CASE("profile normalization and symmetry") {
    for (double s : {0.05, 0.5, 2.0}) {
        AcceptanceProfile f = AcceptanceProfile::gaussian(s);
        CHECK(f.l2_norm_sq(kLat.dy()) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(f.amplitude(0.7 * s) == doctest::Approx(f.amplitude(-0.7 * s)).epsilon(1e-12));
    }
    AcceptanceProfile t = AcceptanceProfile::top_hat(1.0);
    CHECK(t.l2_norm_sq(1e-3) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(AcceptanceProfile::gaussian(0.0), std::invalid_argument);
}

TEST_CASE("sampled kernel and autocorrelation normalization") {
    AcceptanceProfile f = AcceptanceProfile::gaussian(0.3);
    std::vector<double> k = f.sampled_kernel(kLat.dy(), kLat.n_points);
    double s = 0.0;
    for (double v : k) s += v;
    CHECK(s * kLat.dy() == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> c = f.autocorrelation(kLat.dy(), kLat.n_points);
    CHECK(c[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (double v : c) CHECK(std::abs(v) <= 1.0 + 1e-12);
}

TEST_CASE("second moment of the acceptance profile") {
    CHECK(sigma_f_sq(AcceptanceProfile::gaussian(0.5), kLat.dy(), kLat.n_points) ==
          doctest::Approx(0.25).epsilon(1e-8));
    CHECK(sigma_f_sq(AcceptanceProfile::top_hat(1.0), 1e-3, 4096) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-5));
}

TEST_CASE("resolution identity") {
    AcceptanceProfile f = AcceptanceProfile::gaussian(0.5);
    CHECK(check_resolution_identity(f, kLat, 3.0) <= 1e-8);

    // doubling the amplitudes quadruples the norm: deviation ~ 3
    std::vector<double> doubled = gaussian_amplitude_samples(0.5, kLat.dy(), 257, 2.0);
    AcceptanceProfile bad = AcceptanceProfile::sampled(doubled, kLat.dy(), false);
    CHECK(check_resolution_identity(bad, kLat, 3.0) == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("smoothing adds the profile variance") {
    WaveFunction psi = make_gaussian(kLat, 0.0, 1.0, 0.0);
    ProbabilityDensity w = density_of(psi, Representation::position);
    ProbabilityDensity P = smooth_density(w, AcceptanceProfile::gaussian(0.5));
    CHECK(P.integral() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(P.variance() == doctest::Approx(1.25).epsilon(1e-8));
    for (double v : P.vals) CHECK(v >= 0.0);

    // near-delta profile acts as the identity
    ProbabilityDensity Pd = smooth_density(w, AcceptanceProfile::gaussian(1e-3));
    double worst = 0.0;
    for (std::size_t j = 0; j < w.vals.size(); ++j)
        worst = std::max(worst, std::abs(Pd.vals[j] - w.vals[j]));
    CHECK(worst <= 1e-4);
}

TEST_CASE("variance addition for random states and both shapes") {
    Rng rng(101);
    for (int t = 0; t < 10; ++t) {
        WaveFunction psi = random_superposition(kLat, rng);
        ProbabilityDensity w = density_of(psi, Representation::position);
        for (int shape = 0; shape < 2; ++shape) {
            const double s = rng.uniform(0.1, 0.8);
            AcceptanceProfile f = shape == 0 ? AcceptanceProfile::gaussian(s)
                                             : AcceptanceProfile::top_hat(s);
            const double sf2 = sigma_f_sq(f, kLat.dy(), kLat.n_points);
            ProbabilityDensity P = smooth_density(w, f);
            const double predicted = w.variance() + sf2;
            CHECK(std::abs(P.variance() - predicted) / predicted <= 1e-6);
        }
    }
}

TEST_CASE("kraus conditional states") {
    WaveFunction psi = make_gaussian(kLat, 0.0, 1.0, 0.0);
    auto [out, weight] = kraus_conditional(psi, AcceptanceProfile::gaussian(1.0), 0.0);
    CHECK(out.norm_sq() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(weight > 0.0);
    // product of Gaussians: 1/sigma_out^2 = 1/sigma^2 + 1/s^2
    ProbabilityDensity w = density_of(out, Representation::position);
    CHECK(w.variance() == doctest::Approx(0.5).epsilon(1e-8));

    // narrow profile localizes a broad state at the outcome
    WaveFunction broad = make_gaussian(kLat, 0.0, 1.4, 0.0);
    auto [loc, lw] = kraus_conditional(broad, AcceptanceProfile::gaussian(0.1), 2.0);
    ProbabilityDensity wl = density_of(loc, Representation::position);
    CHECK(std::abs(wl.mean() - 2.0) <= 0.02);
    CHECK(std::sqrt(wl.variance()) == doctest::Approx(0.1).epsilon(0.01));

    CHECK_THROWS_AS(kraus_conditional(psi, AcceptanceProfile::gaussian(0.05), 9.5, 1e-6),
                    std::domain_error);
}

TEST_CASE("nonselective channel identities") {
    Rng rng(55);
    StateEnsemble ens = random_mixture(kLat, rng);
    DensityMatrix rho = to_density_matrix(ens);
    AcceptanceProfile f = AcceptanceProfile::gaussian(0.3);
    DensityMatrix out = nonselective_channel(rho, f);

    CHECK(std::abs(out.trace() - 1.0) <= 1e-9);
    CHECK(out.hermiticity_residual() <= 1e-10);
    CHECK(out.smallest_eigenvalue() >= -1e-8);
    double diag_dev = 0.0, growth = 0.0;
    for (int j = 0; j < kLat.n_points; ++j) {
        diag_dev = std::max(diag_dev, std::abs(out.elems(j, j) - rho.elems(j, j)));
        for (int k = 0; k < kLat.n_points; ++k)
            growth = std::max(growth, std::abs(out.elems(j, k)) - std::abs(rho.elems(j, k)));
    }
    CHECK(diag_dev <= 1e-10);
    CHECK(growth <= 1e-12);
}

TEST_CASE("first-observable statistics invariant under the channel") {
    Rng rng(77);
    WaveFunction psi = random_superposition(kLat, rng);
    DensityMatrix rho = DensityMatrix::from_pure(psi);
    AcceptanceProfile f = AcceptanceProfile::gaussian(0.25);
    ProbabilityDensity before = smooth_density(density_of(rho, Representation::position), f);
    ProbabilityDensity after =
        smooth_density(density_of(nonselective_channel(rho, f), Representation::position), f);
    for (double a : {1.0, 1.5, 2.0})
        CHECK(std::abs(renyi_density(before, a) - renyi_density(after, a)) <= 1e-9);
}

TEST_CASE("selective measurement record") {
    WaveFunction psi = make_gaussian(kLat, 0.0, 1.0, 0.0);
    AcceptanceProfile f = AcceptanceProfile::gaussian(0.5);
    MeasurementRecord rec = measure(psi, f);

    CHECK(rec.outcome_density.integral() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rec.outcome_density.variance() == doctest::Approx(1.25).epsilon(1e-6));
    CHECK(rec.discarded_mass <= 1e-6);
    double wsum = 0.0;
    for (const Conditional& c : rec.conditionals) {
        CHECK(c.state.norm_sq() == doctest::Approx(1.0).epsilon(1e-10));
        wsum += c.weight;
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("measurement reconstructs the nonselective channel") {
    const Lattice small(128, -8.0, 8.0);
    WaveFunction psi = make_gaussian(small, 0.5, 1.0, 0.7);
    AcceptanceProfile f = AcceptanceProfile::gaussian(0.4);
    MeasurementRecord rec = measure(psi, f);
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(small.n_points, small.n_points);
    for (const Conditional& c : rec.conditionals) {
        Eigen::Map<const Eigen::VectorXcd> v(c.state.amps.data(), small.n_points);
        sum += c.weight * (v * v.adjoint());
    }
    DensityMatrix direct = nonselective_channel(DensityMatrix::from_pure(psi), f);
    const double worst = (sum - direct.elems).cwiseAbs().maxCoeff();
    CHECK(worst * small.dy() <= 1e-6);
}

TEST_CASE("smoothing monotonicity of power sums") {
    Rng rng(91);
    for (int t = 0; t < 15; ++t) {
        WaveFunction psi = random_superposition(kLat, rng);
        AcceptanceProfile f = AcceptanceProfile::gaussian(rng.uniform(0.05, 1.0));
        AcceptanceProfile g = AcceptanceProfile::gaussian(rng.uniform(0.05, 1.0));
        const double a = rng.uniform(1.05, 4.0);
        const double b = rng.uniform(0.3, 0.95);

        ProbabilityDensity w = density_of(psi, Representation::position);
        ProbabilityDensity P = smooth_density(w, f);
        CHECK(power_sum(w.vals, a, w.spacing) - power_sum(P.vals, a, P.spacing) >= -1e-10);

        ProbabilityDensity W = density_of(psi, Representation::conjugate);
        ProbabilityDensity Q = smooth_density(W, g);
        CHECK(power_sum(Q.vals, b, Q.spacing) - power_sum(W.vals, b, W.spacing) >= -1e-10);
    }
}
