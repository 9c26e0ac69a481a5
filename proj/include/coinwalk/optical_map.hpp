// Frequency-comb realization of the walk inside a Fabry-Perot cavity.
//
// Walker position m is the comb line omega0 + m * omega_bar, the coin is the
// polarization. Each roundtrip the modulator shifts x up and y down by
// omega_bar and a wave plate mixes the polarizations.

#pragma once

#include <cstdint>
#include <string>

namespace coinwalk {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kCommensurateTolerance = 1e-9;

/// All frequencies are angular, in rad/s.
struct CavityConfig {
    double omega0 = 0.0;
    double omega_bar = 0.0;
    double omega_fsr = 0.0;
    std::int64_t f = 1;
    double delta_omega = 0.0;
    double loss_per_roundtrip = 0.0;
    /// omega_bar must exceed this many spectral widths to count as resolved.
    double resolvability_factor = 3.0;
    /// >1 when the shift per roundtrip is below the free spectral range and
    /// a single walk step spans several roundtrips. Reported only.
    std::int64_t roundtrips_per_step = 1;

    /// Throws std::invalid_argument on non-physical values.
    void validate() const;
};

struct CheckReport {
    bool ok = false;
    /// Commensurability: |omega_bar - f omega_fsr| / omega_fsr.
    /// Resolvability: omega_bar / delta_omega (infinite for delta_omega = 0).
    double measure = 0.0;
    std::string message;
};

/// omega0 + m * omega_bar
double frequency_of(std::int64_t m, const CavityConfig& c);

/// k_m = (omega0 + m omega_bar) / c0, in rad/m. Informational only.
double wavenumber_of(std::int64_t m, const CavityConfig& c);

CheckReport validate_commensurate(const CavityConfig& c);
CheckReport resolvable(const CavityConfig& c);

/// Step budget: the smaller of the modulator band limit floor(B / omega_bar)
/// and the loss limit floor(ln(floor) / ln(1 - loss)). A lossless cavity is
/// band-limited only. Zero bandwidth gives zero steps.
std::int64_t max_steps(const CavityConfig& c, double eom_bandwidth, double intensity_floor);

}  // namespace coinwalk
