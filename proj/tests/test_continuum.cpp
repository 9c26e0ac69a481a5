#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "coinwalk/continuum.hpp"
#include "coinwalk/walk_core.hpp"

using namespace coinwalk;
using cplx = std::complex<double>;

namespace {

const double kH = 1.0 / std::numbers::sqrt2;
const cplx kI{0.0, 1.0};

/// sqrt(pi/C) exp(-xi^2 / 4C): the initial profile the closed-form kernel propagates.
FieldGrid kernel_seed(const GridSpec& g, double alpha) {
    const double c = alpha * alpha;
    FieldGrid f{g, std::vector<cplx>(g.points), 0.0};
    for (std::size_t i = 0; i < g.points; ++i) f.values[i] = std::sqrt(std::numbers::pi / c) * std::exp(-g.xi(i) * g.xi(i) / (4.0 * c));
    return f;
}

double l2(const FieldGrid& f) {
    double s = 0.0;
    for (const auto& v : f.values) s += std::norm(v);
    return s;
}

std::size_t argmax(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    return static_cast<std::size_t>(std::max_element(v.begin() + lo, v.begin() + hi) - v.begin());
}

std::vector<double> symmetric_intensity(const GridSpec& g, double tau, int n) {
    const auto seeds = seeds_from_walk(kH, kI * kH, 0.4);
    return intensity(continuum_solution(seeds.right, g, tau, n), continuum_solution(seeds.left, g, tau, n), true);
}

}  // namespace

TEST_SUITE("continuum") {

TEST_CASE("gaussian") {
    const double n = gaussian_norm(0.4);
    CHECK(std::abs(n - std::pow(2.0 * std::numbers::pi * 0.16, -0.25)) < 1e-15);
    CHECK(gaussian(1.5, 1.5, 0.4) == n);
    CHECK(gaussian(1.5 + 0.3, 1.5, 0.4) == doctest::Approx(gaussian(1.5 - 0.3, 1.5, 0.4)).epsilon(1e-15));
    CHECK(std::abs(gaussian(0.8, 0.0, 0.4) - n * std::exp(-1.0)) < 1e-15);

    // Unit L2 norm by trapezoid sum.
    double s = 0.0;
    for (double x = -10.0; x <= 10.0; x += 1e-3) s += gaussian(x, 0.0, 0.4) * gaussian(x, 0.0, 0.4) * 1e-3;
    CHECK(std::abs(s - 1.0) < 1e-9);
    CHECK_THROWS_AS(gaussian_norm(0.0), std::invalid_argument);
}

TEST_CASE("z_kernel shape at tau = 200") {
    const double tau = 200.0, front = tau / std::numbers::sqrt2;
    double best = -1.0, best_xi = 0.0;
    for (double xi = -50.0; xi <= 250.0; xi += 0.01) {
        const double z = z_kernel(xi, tau, 0.4);
        if (std::abs(z) > best) {
            best = std::abs(z);
            best_xi = xi;
        }
    }
    CHECK(best_xi >= 0.85 * front);
    CHECK(best_xi <= 1.0 * front);
    CHECK(std::abs(z_kernel(front + 30.0, tau, 0.4)) / best < 1e-3);

    int changes = 0;
    double prev = z_kernel(0.0, tau, 0.4);
    for (double xi = 0.05; xi <= front; xi += 0.05) {
        const double z = z_kernel(xi, tau, 0.4);
        if ((z > 0) != (prev > 0)) ++changes;
        prev = z;
    }
    CHECK(changes >= 5);
}

TEST_CASE("z_kernel approaches the seed profile as tau shrinks") {
    const double c = 0.16;
    for (double xi : {-0.5, 0.0, 0.3, 1.0}) {
        const double ref = std::sqrt(std::numbers::pi / c) * std::exp(-xi * xi / (4.0 * c));
        CHECK(std::abs(z_kernel(xi, 0.01, 0.4) - ref) < 0.02 * std::sqrt(std::numbers::pi / c));
    }
}

TEST_CASE("z_kernel rejects tau at or below the cutoff") {
    CHECK_THROWS_AS(z_kernel(0.0, 0.0, 0.4), std::domain_error);
    CHECK_THROWS_AS(z_kernel(0.0, kTauMin, 0.4), std::domain_error);
    CHECK_THROWS_AS(z_kernel(0.0, -1.0, 0.4), std::domain_error);
    try {
        z_kernel(0.0, 0.0, 0.4);
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("initial condition") != std::string::npos);
    }
}

TEST_CASE("continuum_solution") {
    const auto g = GridSpec::periodic(-300.0, 300.0, 1024);

    SUBCASE("zero seeds give a zero field") {
        const ContinuumParams zero{0.4, 0.0, 0.0, 0.0, 1.0};
        for (const auto& v : continuum_solution(zero, g, 200.0, 200).values) CHECK(v == cplx{});
    }
    SUBCASE("mirror: flipping the odd seeds reflects the intensity") {
        const ContinuumParams p{0.4, 0.3, cplx(0.2, 0.1), cplx(0.2, 0.1), 1.0};
        const ContinuumParams q{0.4, 0.3, -p.am1, -p.ap1, 1.0};
        for (double xi : {-150.0, -120.5, -3.0, 0.0, 7.25, 140.0}) {
            const double a = std::norm(continuum_at(p, xi, 200.0, 200));
            const double b = std::norm(continuum_at(q, -xi, 200.0, 200));
            CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, a));
        }
    }
    SUBCASE("grid and pointwise evaluation agree") {
        const auto seeds = seeds_from_walk(kH, kI * kH, 0.4);
        const auto f = continuum_solution(seeds.right, g, 100.0, 100);
        for (std::size_t i : {0u, 100u, 511u, 900u}) CHECK(f.values[i] == continuum_at(seeds.right, g.xi(i), 100.0, 100));
    }
}

TEST_CASE("walk seeds") {
    const auto s = seeds_from_walk(kH, kI * kH, 0.4);
    CHECK(std::abs(s.right.a00 - kH) < 1e-15);
    CHECK(std::abs(s.right.am1 - 0.5 * kI) < 1e-15);
    CHECK(std::abs(s.right.ap1 - 0.5) < 1e-15);
    CHECK(std::abs(s.left.a00 - kI * kH) < 1e-15);
    CHECK(std::abs(s.left.am1 + 0.5 * kI) < 1e-15);
    CHECK(std::abs(s.left.ap1 - 0.5) < 1e-15);
}

TEST_CASE("the symmetric start gives a symmetric two-lobed profile") {
    const auto g = GridSpec::periodic(-800.0, 800.0, 8192);
    const auto in = symmetric_intensity(g, 200.0, 200);
    double total = 0.0, asym = 0.0, peak = 0.0;
    for (double v : in) {
        total += v;
        peak = std::max(peak, v);
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
    // xi_i and -xi_i are mirror points for i and N - i on this grid.
    for (std::size_t i = 1; i < g.points; ++i) asym = std::max(asym, std::abs(in[i] - in[g.points - i]));
    CHECK(asym / peak < 1e-9);

    const auto mid = g.points / 2;
    const double left = g.xi(argmax(in, 0, mid));
    const double right = g.xi(argmax(in, mid, g.points));
    CHECK(std::abs(right - 141.0) < 5.0);
    CHECK(std::abs(left + 141.0) < 5.0);
    CHECK(in[mid] < 0.25 * peak);
}

TEST_CASE("front speed") {
    for (double tau : {100.0, 200.0, 400.0}) {
        const auto g = GridSpec::periodic(-4.0 * tau, 4.0 * tau, 16384);
        const auto f = field_solution(ContinuumParams{0.4, 1.0, 0.0, 0.0, 1.0}, g, tau, FieldSign::plus);
        std::vector<double> in(f.size());
        for (std::size_t i = 0; i < in.size(); ++i) in[i] = std::norm(f.values[i]);
        const double speed = g.xi(argmax(in, 0, in.size())) / tau;
        CHECK(speed >= 0.60);
        CHECK(speed <= 1.0 / std::numbers::sqrt2);
    }
}

TEST_CASE("discrete and continuum peaks coincide") {
    const auto d = probability(evolve(new_walk(kH, kI * kH, 200), hadamard_coin(), 200));
    Site discrete_peak = 0;
    for (Site m = 0; m <= 200; m += 2)
        if (d.at(m) > d.at(discrete_peak)) discrete_peak = m;

    const auto g = GridSpec::periodic(-800.0, 800.0, 8192);
    const auto in = symmetric_intensity(g, 200.0, 200);
    const double cont_peak = g.xi(argmax(in, g.points / 2, g.points));
    CHECK(std::abs(cont_peak - static_cast<double>(discrete_peak)) <= 5.0);
}

TEST_CASE("spectral_solve basics") {
    const auto g = GridSpec::periodic(-64.0, 64.0, 1024);
    const auto seed = initial_field(ContinuumParams{0.4, 1.0, 0.3, cplx(0.0, 0.2), 1.0}, g, FieldSign::plus);

    SUBCASE("tau = 0 is the identity") {
        const auto same = spectral_solve(seed, 0.0, FieldSign::plus);
        for (std::size_t i = 0; i < g.points; ++i) CHECK(std::abs(same.values[i] - seed.values[i]) <= 1e-14);
    }
    SUBCASE("norm is conserved") {
        for (double tau : {0.5, 3.0, 11.0})
            for (auto s : {FieldSign::plus, FieldSign::minus})
                CHECK(std::abs(l2(spectral_solve(seed, tau, s)) / l2(seed) - 1.0) < 1e-12);
    }
    SUBCASE("without the cubic term it is pure advection") {
        // tau chosen so the shift tau / sqrt2 is exactly eight cells.
        const double tau = std::numbers::sqrt2 * 8.0 * g.spacing;
        const auto plus = spectral_solve(seed, tau, FieldSign::plus, {.cubic_term = false});
        const auto minus = spectral_solve(seed, tau, FieldSign::minus, {.cubic_term = false});
        for (std::size_t i = 8; i + 8 < g.points; ++i) {
            CHECK(std::abs(plus.values[i] - seed.values[i - 8]) < 1e-12);
            CHECK(std::abs(minus.values[i] - seed.values[i + 8]) < 1e-12);
        }
    }
    SUBCASE("rejections") {
        const auto odd = GridSpec::periodic(-64.0, 64.0, 1000);
        CHECK_THROWS_AS(spectral_solve(initial_field(ContinuumParams{}, odd, FieldSign::plus), 1.0, FieldSign::plus),
                        std::invalid_argument);
        const auto small = GridSpec::periodic(-64.0, 64.0, 512);
        CHECK_THROWS_AS(spectral_solve(initial_field(ContinuumParams{0.4, 1.0}, small, FieldSign::plus), 1.0, FieldSign::plus),
                        std::invalid_argument);
        const auto shifted = GridSpec::periodic(-1.0, 127.0, 1024);
        CHECK_THROWS_AS(spectral_solve(initial_field(ContinuumParams{0.4, 1.0}, shifted, FieldSign::plus), 1.0, FieldSign::plus),
                        std::invalid_argument);
    }
}

TEST_CASE("property: spectral propagation composes") {
    const auto g = GridSpec::periodic(-512.0, 512.0, 4096);
    const auto seed = initial_field(ContinuumParams{0.4, 1.0, 0.5, -0.5, 1.0}, g, FieldSign::plus);
    for (auto s : {FieldSign::plus, FieldSign::minus}) {
        const auto two = spectral_solve(spectral_solve(seed, 5.0, s), 7.0, s);
        const auto one = spectral_solve(seed, 12.0, s);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.points; ++i) worst = std::max(worst, std::abs(two.values[i] - one.values[i]));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("closed form agrees with the spectral solution") {
    // A smaller tau keeps the trailing tail well inside a modest grid.
    const double tau = 20.0;
    const auto g = GridSpec::periodic(-1400.0, 200.0, 8192);
    const auto spectral = spectral_solve(kernel_seed(g, 0.4), tau, FieldSign::plus);
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < g.points; ++i) {
        const double z = z_kernel(g.xi(i), tau, 0.4);
        peak = std::max(peak, std::abs(z));
        worst = std::max(worst, std::abs(spectral.values[i] - z));
    }
    CHECK(worst / peak < 1e-6);
}

TEST_CASE("intensity") {
    const auto g = GridSpec::periodic(-8.0, 8.0, 16);
    FieldGrid zero{g, std::vector<cplx>(16), 0.0};
    for (double v : intensity(zero, zero)) CHECK(v == 0.0);
    CHECK(intensity(zero, zero, true) == std::vector<double>(16, 0.0));

    FieldGrid a{g, std::vector<cplx>(16, cplx(0.6, 0.0)), 0.0};
    FieldGrid b{g, std::vector<cplx>(16, cplx(0.0, 0.8)), 0.0};
    for (double v : intensity(a, b)) CHECK(std::abs(v - 1.0) < 1e-15);
    double s = 0.0;
    for (double v : intensity(a, b, true)) s += v;
    CHECK(std::abs(s - 1.0) < 1e-12);

    FieldGrid other{GridSpec::periodic(-8.0, 9.0, 16), std::vector<cplx>(16), 0.0};
    CHECK_THROWS_AS(intensity(a, other), std::invalid_argument);
}

}  // TEST_SUITE
