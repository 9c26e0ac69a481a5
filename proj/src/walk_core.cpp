#include "coinwalk/walk_core.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace coinwalk {

double CoinOperator::unitarity_defect() const {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Amplitude entry = std::conj(u[0][i]) * u[0][j] + std::conj(u[1][i]) * u[1][j];
            if (i == j) entry -= 1.0;
            worst = std::max(worst, std::abs(entry));
        }
    }
    return worst;
}

CoinOperator hadamard_coin() {
    const double h = 1.0 / std::numbers::sqrt2;
    return {{{{h, h}, {h, -h}}}};
}

CoinOperator phase_coin(double phi) {
    if (!std::isfinite(phi)) throw std::invalid_argument("phase coin angle must be finite");
    // R(t) = [[c, -s], [s, c]] at t = pi/4, so R diag(p, q) R^T
    // = 1/2 [[p + q, p - q], [p - q, p + q]].
    const Amplitude p = std::polar(1.0, phi / 2.0);
    const Amplitude q = std::polar(1.0, -phi / 2.0);
    const Amplitude diag = 0.5 * (p + q);
    const Amplitude off = 0.5 * (p - q);
    return {{{{diag, off}, {off, diag}}}};
}

WalkState::WalkState(int n, LatticeField right, LatticeField left)
    : n_(n), right_(std::move(right)), left_(std::move(left)) {
    if (n_ < 0) throw std::invalid_argument("step index must be non-negative");
    if (!right_.same_bounds(left_)) throw std::invalid_argument("coin components must share lattice bounds");
    if (right_.m_min() > -n_ || right_.m_max() < n_)
        throw std::invalid_argument("lattice bounds do not cover the light cone |m| <= n");
}

double WalkState::norm() const {
    double total = 0.0;
    for (Site m = m_min(); m <= m_max(); ++m) total += std::norm(right_.at(m)) + std::norm(left_.at(m));
    return total;
}

WalkState new_walk(Amplitude r0, Amplitude l0, int capacity) {
    if (!std::isfinite(r0.real()) || !std::isfinite(r0.imag()) || !std::isfinite(l0.real()) ||
        !std::isfinite(l0.imag()))
        throw std::invalid_argument("initial coin amplitudes must be finite");
    const double deficit = 1.0 - (std::norm(r0) + std::norm(l0));
    if (std::abs(deficit) > kNormTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "initial coin state is not normalized: 1 - (|r0|^2 + |l0|^2) = " << deficit;
        throw std::invalid_argument(msg.str());
    }
    if (capacity < 0) throw std::invalid_argument("capacity must be non-negative");
    auto right = LatticeField::symmetric(capacity);
    auto left = LatticeField::symmetric(capacity);
    right[0] = r0;
    left[0] = l0;
    return {0, std::move(right), std::move(left)};
}

WalkState step(const WalkState& s, const CoinOperator& c) {
    const int next = s.n() + 1;
    Site lo = s.m_min();
    Site hi = s.m_max();
    if (lo > -next || hi < next) {
        // Grow geometrically so repeated stepping past the budget stays O(n) amortized.
        const Site half = std::max<Site>(next, 2 * std::max(-lo, hi));
        lo = std::min(lo, -half);
        hi = std::max(hi, half);
    }
    LatticeField right(lo, hi);
    LatticeField left(lo, hi);
    const auto& u = c.u;
    for (Site m = -next; m <= next; m += 2) {
        const Amplitude from_right = s.right(m - 1);
        const Amplitude from_left = s.left(m + 1);
        right[m] = u[0][0] * from_right + u[0][1] * from_left;
        left[m] = u[1][0] * from_right + u[1][1] * from_left;
    }
    return {next, std::move(right), std::move(left)};
}

WalkState evolve(const WalkState& s, const CoinOperator& c, int steps) {
    if (steps < 0) throw std::invalid_argument("steps must be non-negative");
    WalkState out = s;
    for (int i = 0; i < steps; ++i) out = step(out, c);
    return out;
}

std::vector<WalkState> history(const WalkState& s, const CoinOperator& c, int steps) {
    if (steps < 0) throw std::invalid_argument("steps must be non-negative");
    std::vector<WalkState> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    out.push_back(s);
    for (int i = 0; i < steps; ++i) out.push_back(step(out.back(), c));
    return out;
}

double Distribution::total() const {
    double sum = 0.0;
    for (double v : p) sum += v;
    return sum;
}

double Distribution::mean() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += static_cast<double>(m_min + static_cast<Site>(i)) * p[i];
    return sum;
}

Distribution probability(const WalkState& s) {
    Distribution d{s.n(), s.m_min(), std::vector<double>(s.right_field().size(), 0.0)};
    for (Site m = s.m_min(); m <= s.m_max(); ++m)
        d.p[static_cast<std::size_t>(m - d.m_min)] = std::norm(s.right(m)) + std::norm(s.left(m));
    return d;
}

Distribution classical_distribution(int steps) {
    if (steps < 0) throw std::invalid_argument("steps must be non-negative");
    Distribution d{steps, -steps, std::vector<double>(2 * static_cast<std::size_t>(steps) + 1, 0.0)};
    const double n = steps;
    const double log_total = std::lgamma(n + 1.0) - n * std::numbers::ln2;
    for (int k = 0; k <= steps; ++k) {
        // k heads out of n tosses lands on m = 2k - n.
        const double log_p = log_total - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
        d.p[static_cast<std::size_t>(2 * k)] = std::exp(log_p);
    }
    return d;
}

double std_dev(const Distribution& d) {
    double first = 0.0;
    double second = 0.0;
    for (std::size_t i = 0; i < d.p.size(); ++i) {
        const double m = static_cast<double>(d.m_min + static_cast<Site>(i));
        first += m * d.p[i];
        second += m * m * d.p[i];
    }
    return std::sqrt(std::max(0.0, second - first * first));
}

}  // namespace coinwalk
