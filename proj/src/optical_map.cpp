#include "coinwalk/optical_map.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace coinwalk {

namespace {

// floor() that forgives the last-ulp shortfall of quotients like (100 w) / w.
std::int64_t robust_floor(double x) {
    const double nudged = std::floor(x * (1.0 + 1e-12) + 1e-12);
    if (nudged >= static_cast<double>(std::numeric_limits<std::int64_t>::max()))
        return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(nudged);
}

}  // namespace

void CavityConfig::validate() const {
    auto require = [](bool cond, const char* what) {
        if (!cond) throw std::invalid_argument(what);
    };
    require(omega0 > 0.0 && std::isfinite(omega0), "omega0 must be positive");
    require(omega_bar > 0.0 && std::isfinite(omega_bar), "omega_bar must be positive");
    require(omega_fsr > 0.0 && std::isfinite(omega_fsr), "omega_fsr must be positive");
    require(f >= 1, "f must be a positive integer");
    require(delta_omega >= 0.0 && std::isfinite(delta_omega), "delta_omega must be non-negative");
    require(loss_per_roundtrip >= 0.0 && loss_per_roundtrip < 1.0, "loss_per_roundtrip must lie in [0, 1)");
    require(resolvability_factor > 1.0 && std::isfinite(resolvability_factor), "resolvability_factor must exceed 1");
    require(roundtrips_per_step >= 1, "roundtrips_per_step must be a positive integer");
}

double frequency_of(std::int64_t m, const CavityConfig& c) { return c.omega0 + static_cast<double>(m) * c.omega_bar; }

double wavenumber_of(std::int64_t m, const CavityConfig& c) { return frequency_of(m, c) / kSpeedOfLight; }

CheckReport validate_commensurate(const CavityConfig& c) {
    CheckReport r;
    r.measure = std::abs(c.omega_bar - static_cast<double>(c.f) * c.omega_fsr) / c.omega_fsr;
    r.ok = r.measure < kCommensurateTolerance;
    std::ostringstream msg;
    msg.precision(6);
    if (r.ok)
        msg << "omega_bar = " << c.f << " x omega_fsr";
    else
        msg << "omega_bar is not " << c.f << " x omega_fsr: fractional detuning " << r.measure;
    r.message = msg.str();
    return r;
}

CheckReport resolvable(const CavityConfig& c) {
    CheckReport r;
    r.measure = c.delta_omega > 0.0 ? c.omega_bar / c.delta_omega : std::numeric_limits<double>::infinity();
    r.ok = c.omega_bar >= c.resolvability_factor * c.delta_omega;
    std::ostringstream msg;
    msg.precision(6);
    if (r.ok)
        msg << "comb lines resolved (omega_bar / delta_omega = " << r.measure << ")";
    else
        msg << "displaced spectra overlap: omega_bar / delta_omega = " << r.measure << " < "
            << c.resolvability_factor;
    r.message = msg.str();
    return r;
}

std::int64_t max_steps(const CavityConfig& c, double eom_bandwidth, double intensity_floor) {
    if (!(intensity_floor > 0.0 && intensity_floor < 1.0))
        throw std::invalid_argument("intensity_floor must lie in (0, 1)");
    if (!(c.loss_per_roundtrip >= 0.0 && c.loss_per_roundtrip < 1.0))
        throw std::invalid_argument("loss_per_roundtrip must lie in [0, 1)");
    if (!(eom_bandwidth >= 0.0)) throw std::invalid_argument("eom_bandwidth must be non-negative");
    if (!(c.omega_bar > 0.0)) throw std::invalid_argument("omega_bar must be positive");
    if (eom_bandwidth == 0.0) return 0;

    // |m| <= n, so every line of an n-step walk must sit inside the modulator band.
    std::int64_t budget = robust_floor(eom_bandwidth / c.omega_bar);
    if (c.loss_per_roundtrip > 0.0) {
        const auto by_loss = robust_floor(std::log(intensity_floor) / std::log1p(-c.loss_per_roundtrip));
        budget = std::min(budget, by_loss);
    }
    return budget;
}

}  // namespace coinwalk
