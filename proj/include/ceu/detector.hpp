#pragma once

#include <optional>
#include <vector>

#include "ceu/lattice.hpp"

namespace ceu {

enum class ProfileShape { gaussian, top_hat, sampled };

/// Detector resolution function f with unit L2 norm. Gaussian profiles are
/// parametrized by the standard deviation s of |f|^2; top-hat by the
/// half-width a of the support of |f|^2.
class AcceptanceProfile {
  public:
    static AcceptanceProfile gaussian(double s);
    static AcceptanceProfile top_hat(double a);
    /// Samples of f on a symmetric grid with the given spacing
    /// (sample i sits at (i - (count-1)/2) * spacing).
    static AcceptanceProfile sampled(std::vector<double> values, double spacing,
                                     bool renormalize = true);

    ProfileShape shape() const { return shape_; }
    double width() const { return width_; }

    /// Amplitude f(u); even by construction, linear interpolation for
    /// sampled profiles.
    double amplitude(double u) const;

    /// |f|^2 sampled on a length-n circular offset grid with spacing h,
    /// renormalized so the entries sum to 1/h. Entry m holds offset m*h for
    /// m <= n/2 and (m-n)*h above.
    std::vector<double> sampled_kernel(double h, int n) const;

    /// Autocorrelation c(u) = int f(z-u) f(z) dz on the same circular offset
    /// layout, quadrature with spacing h over a range covering the tails.
    std::vector<double> autocorrelation(double h, int n) const;

    double l2_norm_sq(double h) const; // int |f|^2 by quadrature at spacing h

  private:
    AcceptanceProfile() = default;
    ProfileShape shape_ = ProfileShape::gaussian;
    double width_ = 1.0;
    std::vector<double> samples_;
    double sample_spacing_ = 0.0;
};

/// sigma_f^2 = int z^2 |f(z)|^2 dz evaluated with the same sampled kernel
/// that the smoothing convolution uses.
double sigma_f_sq(const AcceptanceProfile& f, double h, int n);

/// max over lattice points at least `margin` from the window edges of
/// |int |f(z - y)|^2 dz - 1|, with the z-quadrature on the lattice spacing.
double check_resolution_identity(const AcceptanceProfile& f, const Lattice& lat,
                                 double margin = 0.0);

/// Circular convolution of w with the sampled |f|^2 kernel.
ProbabilityDensity smooth_density(const ProbabilityDensity& w, const AcceptanceProfile& f);

struct Conditional {
    double zeta = 0.0;
    double weight = 0.0; // P(zeta) * dzeta, renormalized over retained outcomes
    WaveFunction state;
};

struct MeasurementRecord {
    ProbabilityDensity outcome_density; // P on the zeta grid
    std::vector<Conditional> conditionals;
    double discarded_mass = 0.0;
};

/// Normalized post-measurement state with amplitudes f(zeta - y) psi(y) and
/// its weight P(zeta). Throws when the weight is below the floor.
std::pair<WaveFunction, double> kraus_conditional(const WaveFunction& psi,
                                                  const AcceptanceProfile& f, double zeta,
                                                  double weight_floor = 0.0);

/// Non-selective channel: rho(y, y') * c(y - y') with c the autocorrelation
/// of f.
DensityMatrix nonselective_channel(const DensityMatrix& rho, const AcceptanceProfile& f);

/// Selective measurement over a zeta grid (every `stride`-th lattice point).
/// Outcomes with P below 1e-12 * max P are discarded and the retained
/// weights renormalized.
MeasurementRecord measure(const WaveFunction& psi, const AcceptanceProfile& f,
                          int stride = 1, double coverage_tol = 1e-6);

struct DenseConditional {
    double zeta = 0.0;
    double weight = 0.0;
    DensityMatrix state;
};

std::vector<DenseConditional> measure_dense(const DensityMatrix& rho,
                                            const AcceptanceProfile& f, int stride = 1);

} // namespace ceu
