// Continuum limit of the per-side recurrence.
//
// For slowly varying fields the plus/minus components obey the linear
// third-order dispersion equation
//
//   dA+-/dtau = -+(1/sqrt2) [d/dxi + (1/12) d^3/dxi^3] A+-
//
// with xi = x/dx and tau = t/dt in lattice units. A Gaussian initial profile
// exp(-xi^2 / (2 alpha)^2) propagates in closed form to the Airy kernel Z,
// and the same equation is solved independently by an exact Fourier
// propagator on a periodic grid.

#pragma once

#include <cstddef>
#include <vector>

#include "coinwalk/lattice.hpp"

namespace coinwalk {

/// Below this tau the closed-form kernel is singular; use the Gaussian
/// initial condition instead.
inline constexpr double kTauMin = 1e-3;

enum class FieldSign { plus = 1, minus = -1 };

inline double sign_value(FieldSign s) { return s == FieldSign::plus ? 1.0 : -1.0; }

/// Seeds for one coin side: a_{0,0}, a_{-1,1}, a_{+1,1}, the Gaussian width
/// alpha and the seed offset xi0 (all in lattice units).
struct ContinuumParams {
    double alpha = 0.4;
    Amplitude a00{};
    Amplitude am1{};
    Amplitude ap1{};
    double xi0 = 1.0;

    void validate() const;
};

/// Uniform sample points xi_i = xi_min + i * spacing, i < points.
struct GridSpec {
    double xi_min = 0.0;
    double spacing = 1.0;
    std::size_t points = 0;

    /// Half-open [lo, hi) split into `points` cells, as used by periodic transforms.
    static GridSpec periodic(double lo, double hi, std::size_t points);
    /// Closed [lo, hi] including both endpoints.
    static GridSpec closed(double lo, double hi, std::size_t points);

    double xi(std::size_t i) const { return xi_min + static_cast<double>(i) * spacing; }
    void validate() const;
};

struct FieldGrid {
    GridSpec grid;
    std::vector<Amplitude> values;
    double tau = 0.0;

    double xi(std::size_t i) const { return grid.xi(i); }
    std::size_t size() const { return values.size(); }
};

/// (2 pi alpha^2)^{-1/4}, the factor making the integral of G^2 equal one.
double gaussian_norm(double alpha);

/// N exp(-(xi - xi0)^2 / (2 alpha)^2)
double gaussian(double xi, double xi0, double alpha);

/// (2 pi / B^{1/3}) exp((3ABC + 2C^3) / (3B^2)) Ai((AB + C^2) / B^{4/3})
/// with A = xi - tau/sqrt2, B = tau/(4 sqrt2), C = alpha^2. This is the
/// Gaussian sqrt(pi/C) exp(-xi^2/(4C)) propagated by the plus equation.
/// Throws std::domain_error for tau <= kTauMin.
double z_kernel(double xi, double tau, double alpha);

/// A+-(xi, 0) = a00 G(0) +- a_{-1,1} G(-xi0) +- a_{+1,1} G(xi0)
FieldGrid initial_field(const ContinuumParams& p, const GridSpec& grid, FieldSign sign);

/// A+-(xi, tau) = a00 Z(+-xi) +- a_{-1,1} Z(+-(xi + xi0)) +- a_{+1,1} Z(+-(xi - xi0))
FieldGrid field_solution(const ContinuumParams& p, const GridSpec& grid, double tau, FieldSign sign);

/// Single-point versions of field_solution and continuum_solution.
Amplitude field_at(const ContinuumParams& p, double xi, double tau, FieldSign sign);
Amplitude continuum_at(const ContinuumParams& p, double xi, double tau, int n_parity);

/// a = A+ + (-1)^n A- evaluated on the grid; n_parity is the step count
/// the continuous time stands in for.
FieldGrid continuum_solution(const ContinuumParams& p, const GridSpec& grid, double tau, int n_parity);

struct SpectralOptions {
    /// Drop the d^3/dxi^3 term, leaving pure advection at speed 1/sqrt2.
    bool cubic_term = true;
};

/// Multiplies each Fourier mode by exp(-+(i/sqrt2)(k - k^3/12) tau).
/// Requires a power-of-two grid of at least 1024 points whose data falls
/// below 1e-12 of its peak at both edges (std::invalid_argument otherwise).
FieldGrid spectral_solve(const FieldGrid& initial, double tau, FieldSign sign, SpectralOptions options = {});

/// |a_R|^2 + |a_L|^2, optionally scaled to unit sum.
std::vector<double> intensity(const FieldGrid& r_field, const FieldGrid& l_field, bool normalize = false);

/// Seeds for the R and L sides read from the walk amplitudes at n = 0 and n = 1.
struct SideSeeds {
    ContinuumParams right;
    ContinuumParams left;
};
SideSeeds seeds_from_walk(Amplitude r0, Amplitude l0, double alpha);

}  // namespace coinwalk
