#include "coinwalk/continuum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "coinwalk/airy.hpp"
#include "coinwalk/walk_core.hpp"

namespace coinwalk {

namespace {

bool finite(Amplitude a) { return std::isfinite(a.real()) && std::isfinite(a.imag()); }

}  // namespace

void ContinuumParams::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive and finite");
    if (!finite(a00) || !finite(am1) || !finite(ap1)) throw std::invalid_argument("seed amplitudes must be finite");
    if (!std::isfinite(xi0)) throw std::invalid_argument("seed offset must be finite");
}

GridSpec GridSpec::periodic(double lo, double hi, std::size_t points) {
    GridSpec g{lo, points > 0 ? (hi - lo) / static_cast<double>(points) : 0.0, points};
    g.validate();
    return g;
}

GridSpec GridSpec::closed(double lo, double hi, std::size_t points) {
    GridSpec g{lo, points > 1 ? (hi - lo) / static_cast<double>(points - 1) : 0.0, points};
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (points < 16) throw std::invalid_argument("grid needs at least 16 points");
    if (!(spacing > 0.0) || !std::isfinite(spacing) || !std::isfinite(xi_min))
        throw std::invalid_argument("grid spacing must be positive and finite");
}

double gaussian_norm(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    return std::pow(2.0 * std::numbers::pi * alpha * alpha, -0.25);
}

double gaussian(double xi, double xi0, double alpha) {
    const double d = (xi - xi0) / (2.0 * alpha);
    return gaussian_norm(alpha) * std::exp(-d * d);
}

double z_kernel(double xi, double tau, double alpha) {
    if (!(tau > kTauMin)) {
        std::ostringstream msg;
        msg << "z_kernel: tau = " << tau << " is at or below " << kTauMin
            << "; use the Gaussian initial condition there";
        throw std::domain_error(msg.str());
    }
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
    const double a = xi - tau / std::numbers::sqrt2;
    const double b = tau / (4.0 * std::numbers::sqrt2);
    const double c = alpha * alpha;
    const double cbrt_b = std::cbrt(b);
    const double arg = (a * b + c * c) / (b * cbrt_b);
    const double log_weight = (3.0 * a * b * c + 2.0 * c * c * c) / (3.0 * b * b);
    return 2.0 * std::numbers::pi / cbrt_b * scaled_airy(arg, log_weight);
}

FieldGrid initial_field(const ContinuumParams& p, const GridSpec& grid, FieldSign sign) {
    p.validate();
    grid.validate();
    const double s = sign_value(sign);
    FieldGrid out{grid, std::vector<Amplitude>(grid.points), 0.0};
    for (std::size_t i = 0; i < grid.points; ++i) {
        const double xi = grid.xi(i);
        out.values[i] = p.a00 * gaussian(xi, 0.0, p.alpha) + s * p.am1 * gaussian(xi, -p.xi0, p.alpha) +
                        s * p.ap1 * gaussian(xi, p.xi0, p.alpha);
    }
    return out;
}

Amplitude field_at(const ContinuumParams& p, double xi, double tau, FieldSign sign) {
    const double s = sign_value(sign);
    return p.a00 * z_kernel(s * xi, tau, p.alpha) + s * p.am1 * z_kernel(s * (xi + p.xi0), tau, p.alpha) +
           s * p.ap1 * z_kernel(s * (xi - p.xi0), tau, p.alpha);
}

Amplitude continuum_at(const ContinuumParams& p, double xi, double tau, int n_parity) {
    const double parity = n_parity % 2 == 0 ? 1.0 : -1.0;
    return field_at(p, xi, tau, FieldSign::plus) + parity * field_at(p, xi, tau, FieldSign::minus);
}

FieldGrid field_solution(const ContinuumParams& p, const GridSpec& grid, double tau, FieldSign sign) {
    p.validate();
    grid.validate();
    FieldGrid out{grid, std::vector<Amplitude>(grid.points), tau};
    for (std::size_t i = 0; i < grid.points; ++i) out.values[i] = field_at(p, grid.xi(i), tau, sign);
    return out;
}

FieldGrid continuum_solution(const ContinuumParams& p, const GridSpec& grid, double tau, int n_parity) {
    auto plus = field_solution(p, grid, tau, FieldSign::plus);
    const auto minus = field_solution(p, grid, tau, FieldSign::minus);
    const double parity = n_parity % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < plus.values.size(); ++i) plus.values[i] += parity * minus.values[i];
    return plus;
}

std::vector<double> intensity(const FieldGrid& r_field, const FieldGrid& l_field, bool normalize) {
    if (r_field.size() != l_field.size() || r_field.grid.xi_min != l_field.grid.xi_min ||
        r_field.grid.spacing != l_field.grid.spacing)
        throw std::invalid_argument("intensity: R and L fields live on different grids");
    std::vector<double> out(r_field.size());
    double total = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::norm(r_field.values[i]) + std::norm(l_field.values[i]);
        total += out[i];
    }
    if (normalize && total > 0.0)
        for (double& v : out) v /= total;
    return out;
}

SideSeeds seeds_from_walk(Amplitude r0, Amplitude l0, double alpha) {
    const auto w0 = new_walk(r0, l0, 1);
    const auto w1 = step(w0, hadamard_coin());
    SideSeeds seeds;
    seeds.right = {alpha, w0.right(0), w1.right(-1), w1.right(1), 1.0};
    seeds.left = {alpha, w0.left(0), w1.left(-1), w1.left(1), 1.0};
    seeds.right.validate();
    return seeds;
}

}  // namespace coinwalk
