// Dense complex field over a contiguous range of integer lattice sites.

#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace coinwalk {

using Amplitude = std::complex<double>;
using Site = std::int64_t;

/// Complex amplitudes on sites [m_min, m_min + size). Reads outside the
/// stored range return zero; writes outside it are an error.
class LatticeField {
public:
    LatticeField() = default;
    LatticeField(Site m_min, Site m_max)
        : m_min_(m_min), values_(m_max >= m_min ? static_cast<std::size_t>(m_max - m_min + 1) : 0) {}

    static LatticeField symmetric(Site half_width) { return {-half_width, half_width}; }

    Site m_min() const { return m_min_; }
    Site m_max() const { return m_min_ + static_cast<Site>(values_.size()) - 1; }
    std::size_t size() const { return values_.size(); }
    bool contains(Site m) const { return m >= m_min_ && m <= m_max(); }

    Amplitude at(Site m) const { return contains(m) ? values_[index(m)] : Amplitude{}; }

    Amplitude& operator[](Site m) {
        if (!contains(m)) throw std::out_of_range("lattice site outside field bounds");
        return values_[index(m)];
    }

    /// Copy of this field re-laid over [m_min, m_max]; sites outside the old
    /// range are zero, sites dropped by the new range are discarded.
    LatticeField resized(Site m_min, Site m_max) const {
        LatticeField out(m_min, m_max);
        for (Site m = std::max(m_min, m_min_); m <= std::min(m_max, this->m_max()); ++m)
            out.values_[out.index(m)] = values_[index(m)];
        return out;
    }

    std::vector<Amplitude>& values() { return values_; }
    const std::vector<Amplitude>& values() const { return values_; }

    bool same_bounds(const LatticeField& other) const {
        return m_min_ == other.m_min_ && values_.size() == other.values_.size();
    }

private:
    std::size_t index(Site m) const { return static_cast<std::size_t>(m - m_min_); }

    Site m_min_ = 0;
    std::vector<Amplitude> values_;
};

}  // namespace coinwalk
