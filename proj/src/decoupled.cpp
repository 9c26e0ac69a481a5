#include "coinwalk/decoupled.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace coinwalk {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// next_m = older_m + sign * (current_{m-1} - current_{m+1}) / sqrt2 over [lo, hi].
LatticeField three_term(const LatticeField& older, const LatticeField& current, double sign, Site lo, Site hi) {
    LatticeField next(lo, hi);
    const double w = sign * kInvSqrt2;
    for (Site m = lo; m <= hi; ++m) next[m] = older.at(m) + w * (current.at(m - 1) - current.at(m + 1));
    return next;
}

LatticeField side_of(const WalkState& w, CoinSide side) {
    const auto& field = side == CoinSide::right ? w.right_field() : w.left_field();
    return field.resized(-w.n(), w.n());
}

}  // namespace

DecoupledTrace::DecoupledTrace(CoinSide side, int first_n, std::vector<LatticeField> slices)
    : side_(side), first_n_(first_n), slices_(std::move(slices)) {
    if (first_n_ < 0) throw std::invalid_argument("trace must start at a non-negative step index");
}

const LatticeField& DecoupledTrace::slice(int n) const {
    if (n < first_n_ || n > last_n()) throw std::out_of_range("no slice at step " + std::to_string(n));
    return slices_[static_cast<std::size_t>(n - first_n_)];
}

void DecoupledTrace::advance() {
    if (slices_.size() < 2) throw std::logic_error("decoupled recurrence needs two consecutive slices");
    const Site next = last_n() + 1;
    const auto& older = slices_[slices_.size() - 2];
    const auto& current = slices_.back();
    slices_.push_back(three_term(older, current, 1.0, -next, next));
}

void DecoupledTrace::perturb(int n, Site m, Amplitude delta) {
    auto& s = slices_.at(static_cast<std::size_t>(n - first_n_));
    s[m] += delta;
}

DecoupledTrace seed_from_walk(const WalkState& w0, const WalkState& w1, CoinSide side) {
    if (w1.n() != w0.n() + 1)
        throw std::invalid_argument("seed states must be consecutive steps (got n = " + std::to_string(w0.n()) +
                                    " and n = " + std::to_string(w1.n()) + ")");
    return {side, w0.n(), {side_of(w0, side), side_of(w1, side)}};
}

DecoupledTrace decoupled_step(const DecoupledTrace& t) {
    DecoupledTrace out = t;
    out.advance();
    return out;
}

std::vector<double> equivalence_profile(Amplitude r0, Amplitude l0, int steps, Amplitude inject) {
    if (steps < 2) throw std::invalid_argument("equivalence check needs at least two steps");
    const auto coupled = history(new_walk(r0, l0, steps), hadamard_coin(), steps);

    // The two sides never exchange data after seeding, so they run on separate threads.
    auto run_side = [&](CoinSide side) {
        auto trace = seed_from_walk(coupled[0], coupled[1], side);
        while (trace.last_n() < steps) trace.advance();
        return trace;
    };
    DecoupledTrace left_trace(CoinSide::left, 0, {});
    std::thread worker([&] { left_trace = run_side(CoinSide::left); });
    DecoupledTrace right_trace = run_side(CoinSide::right);
    worker.join();

    if (inject != Amplitude{}) right_trace.perturb(steps / 2, 0, inject);

    std::vector<double> profile(static_cast<std::size_t>(steps) + 1, 0.0);
    for (int n = 0; n <= steps; ++n) {
        const auto& w = coupled[static_cast<std::size_t>(n)];
        const auto& r = right_trace.slice(n);
        const auto& l = left_trace.slice(n);
        double worst = 0.0;
        for (Site m = -n; m <= n; ++m) {
            worst = std::max(worst, std::abs(w.right(m) - r.at(m)));
            worst = std::max(worst, std::abs(w.left(m) - l.at(m)));
        }
        profile[static_cast<std::size_t>(n)] = worst;
    }
    return profile;
}

double verify_equivalence(Amplitude r0, Amplitude l0, int steps, Amplitude inject) {
    const auto profile = equivalence_profile(r0, l0, steps, inject);
    return *std::max_element(profile.begin(), profile.end());
}

FieldPair decompose(const LatticeField& a0, const LatticeField& a1) {
    if (!a0.same_bounds(a1)) throw std::invalid_argument("slices must share lattice bounds");
    FieldPair out{0, LatticeField(a0.m_min(), a0.m_max()), LatticeField(a0.m_min(), a0.m_max())};
    for (Site m = a0.m_min(); m <= a0.m_max(); ++m) {
        out.plus[m] = 0.5 * (a0.at(m) + a1.at(m));
        out.minus[m] = 0.5 * (a0.at(m) - a1.at(m));
    }
    return out;
}

LatticeField recombine(const FieldPair& fields) {
    const Site lo = std::min(fields.plus.m_min(), fields.minus.m_min());
    const Site hi = std::max(fields.plus.m_max(), fields.minus.m_max());
    const double parity = fields.n % 2 == 0 ? 1.0 : -1.0;
    LatticeField out(lo, hi);
    for (Site m = lo; m <= hi; ++m) out[m] = fields.plus.at(m) + parity * fields.minus.at(m);
    return out;
}

double decomposition_residual(const FieldPair& fields, const LatticeField& a1) {
    const Site lo = std::min({fields.plus.m_min(), fields.minus.m_min(), a1.m_min()});
    const Site hi = std::max({fields.plus.m_max(), fields.minus.m_max(), a1.m_max()});
    double worst = 0.0;
    for (Site m = lo; m <= hi; ++m)
        worst = std::max(worst, std::abs(a1.at(m) - (fields.plus.at(m) - fields.minus.at(m))));
    return worst;
}

FieldPair evolve_fields(const FieldPair& initial, int steps) {
    if (steps < 0) throw std::invalid_argument("steps must be non-negative");
    if (steps == 0) return initial;

    auto run = [&](const LatticeField& seed, double sign) {
        LatticeField older = seed;
        LatticeField current = seed;  // slowly-varying seeding: A_{m,1} = A_{m,0}
        for (int n = 1; n < steps; ++n) {
            auto next = three_term(older, current, sign, current.m_min() - 1, current.m_max() + 1);
            older = std::move(current);
            current = std::move(next);
        }
        return current;
    };
    return {initial.n + steps, run(initial.plus, 1.0), run(initial.minus, -1.0)};
}

}  // namespace coinwalk
