// Per-coin-side evolution of the Hadamard walk.
//
// After the first step each coin component obeys its own three-term
// recurrence
//
//   a_{m,n+1} = a_{m,n-1} + (1/sqrt2) (a_{m-1,n} - a_{m+1,n}),   a = R, L
//
// so the R and L amplitudes can be propagated without reference to each
// other once the n = 0 and n = 1 slices are known. Each side further splits
// into a slowly varying field A+ and a sign-alternating field (-1)^n A-.

#pragma once

#include <vector>

#include "coinwalk/lattice.hpp"
#include "coinwalk/walk_core.hpp"

namespace coinwalk {

enum class CoinSide { right, left };

/// History of one coin side's amplitudes, one slice per consecutive step.
class DecoupledTrace {
public:
    DecoupledTrace(CoinSide side, int first_n, std::vector<LatticeField> slices);

    CoinSide side() const { return side_; }
    int first_n() const { return first_n_; }
    int last_n() const { return first_n_ + static_cast<int>(slices_.size()) - 1; }
    std::size_t size() const { return slices_.size(); }

    /// Slice at step index n.
    const LatticeField& slice(int n) const;
    const std::vector<LatticeField>& slices() const { return slices_; }

    /// Appends the next slice in place. Throws std::logic_error with fewer
    /// than two slices.
    void advance();

    /// Adds `delta` to the amplitude at (m, n). Used to check that
    /// equivalence checks detect corrupted traces.
    void perturb(int n, Site m, Amplitude delta);

private:
    CoinSide side_;
    int first_n_;
    std::vector<LatticeField> slices_;
};

/// Slices n = 0 and n = 1 of one side, read from the coupled walk.
DecoupledTrace seed_from_walk(const WalkState& w0, const WalkState& w1, CoinSide side);

/// Copy of `t` with one more slice appended.
DecoupledTrace decoupled_step(const DecoupledTrace& t);

/// Largest |coupled - decoupled| over all sites, both sides and every
/// n <= steps. The decoupled traces are seeded from the coupled walk at
/// n = 0, 1 and then evolved independently. `inject` is added to one
/// mid-run R-side amplitude before comparison (zero for a normal check).
double verify_equivalence(Amplitude r0, Amplitude l0, int steps, Amplitude inject = {});

/// Per-step breakdown of verify_equivalence: entry n is the largest
/// deviation at step n.
std::vector<double> equivalence_profile(Amplitude r0, Amplitude l0, int steps, Amplitude inject = {});

/// Ferromagnetic (plus) and antiferromagnetic (minus) fields of one side.
struct FieldPair {
    int n = 0;
    LatticeField plus;
    LatticeField minus;
};

/// A+-_{m,0} = (a_{m,0} +- a_{m,1}) / 2. This is one gauge among many; it
/// makes a0 = A+ + A- exact and a1 ~ A+ - A- an approximation.
FieldPair decompose(const LatticeField& a0, const LatticeField& a1);

/// a = A+ + (-1)^n A-
LatticeField recombine(const FieldPair& fields);

/// max_m |a1 - (A+ - A-)|, the error of the slowly-varying seeding.
double decomposition_residual(const FieldPair& fields, const LatticeField& a1);

/// Evolves both fields under A_{n+1} = A_{n-1} +- (1/sqrt2)(A_{m-1,n} - A_{m+1,n}),
/// seeded with A_{m,1} = A_{m,0}. Returns the pair at step `steps`.
FieldPair evolve_fields(const FieldPair& initial, int steps);

}  // namespace coinwalk
