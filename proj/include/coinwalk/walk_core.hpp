// Coined discrete-time quantum walk on the integer line.
//
// One step is the conditional shift (head |x) moves to m+1, tail |y) to m-1)
// followed by the coin toss:
//
//   R'_m = u00 R_{m-1} + u01 L_{m+1}
//   L'_m = u10 R_{m-1} + u11 L_{m+1}
//
// Only sites with m + n even are ever written, so the parity zeros of the
// walk are exact rather than rounded.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "coinwalk/lattice.hpp"

namespace coinwalk {

inline constexpr double kNormTolerance = 1e-12;

/// 2x2 unitary acting on the coin, rows and columns ordered [head, tail].
struct CoinOperator {
    std::array<std::array<Amplitude, 2>, 2> u{};

    /// max |(u^dagger u - I)_{ij}|
    double unitarity_defect() const;
    bool is_unitary(double tol = kNormTolerance) const { return unitarity_defect() < tol; }

    std::array<Amplitude, 2> apply(const std::array<Amplitude, 2>& coin) const {
        return {u[0][0] * coin[0] + u[0][1] * coin[1], u[1][0] * coin[0] + u[1][1] * coin[1]};
    }
};

/// (1/sqrt2) [[1, 1], [1, -1]]
CoinOperator hadamard_coin();

/// Phase plate rotated by pi/4: R(pi/4) diag(e^{i phi/2}, e^{-i phi/2}) R(-pi/4),
/// which equals cos(phi/2) I + i sin(phi/2) X. phi = pi/2 is the balanced
/// (Hadamard-like) setting; phi = pi is a pure coin flip.
CoinOperator phase_coin(double phi);

class WalkState {
public:
    WalkState(int n, LatticeField right, LatticeField left);

    int n() const { return n_; }
    Site m_min() const { return right_.m_min(); }
    Site m_max() const { return right_.m_max(); }

    /// Amplitude of the head (x polarization) component at site m.
    Amplitude right(Site m) const { return right_.at(m); }
    /// Amplitude of the tail (y polarization) component at site m.
    Amplitude left(Site m) const { return left_.at(m); }

    const LatticeField& right_field() const { return right_; }
    const LatticeField& left_field() const { return left_; }

    double norm() const;

private:
    int n_;
    LatticeField right_;
    LatticeField left_;
};

/// Walker at the origin with coin state (r0, l0). `capacity` pre-sizes the
/// lattice to [-capacity, capacity]; stepping past it grows the lattice.
/// Throws std::invalid_argument when |r0|^2 + |l0|^2 is not 1 within 1e-12.
WalkState new_walk(Amplitude r0, Amplitude l0, int capacity = 0);

WalkState step(const WalkState& s, const CoinOperator& c);
WalkState evolve(const WalkState& s, const CoinOperator& c, int steps);

/// Every intermediate state from s (index 0) to s after `steps` steps.
std::vector<WalkState> history(const WalkState& s, const CoinOperator& c, int steps);

struct Distribution {
    int n = 0;
    Site m_min = 0;
    std::vector<double> p;

    Site m_max() const { return m_min + static_cast<Site>(p.size()) - 1; }
    double at(Site m) const {
        return (m < m_min || m > m_max()) ? 0.0 : p[static_cast<std::size_t>(m - m_min)];
    }
    double total() const;
    double mean() const;
};

Distribution probability(const WalkState& s);

/// Binomial distribution of the classical +-1 walk after `steps` tosses.
Distribution classical_distribution(int steps);

double std_dev(const Distribution& d);

}  // namespace coinwalk
