#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "coinwalk/continuum.hpp"

namespace coinwalk {

namespace {

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

Plan make_plan(std::vector<Amplitude>& data, int direction) {
    static_assert(sizeof(Amplitude) == sizeof(fftw_complex));
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    std::lock_guard lock(planner_mutex());
    return Plan(fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, direction, FFTW_ESTIMATE));
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

FieldGrid spectral_solve(const FieldGrid& initial, double tau, FieldSign sign, SpectralOptions options) {
    const std::size_t n = initial.size();
    if (n < 1024 || !is_power_of_two(n))
        throw std::invalid_argument("spectral_solve: grid length must be a power of two >= 1024");
    if (n != initial.grid.points) throw std::invalid_argument("spectral_solve: values do not match grid");
    if (!std::isfinite(tau)) throw std::invalid_argument("spectral_solve: tau must be finite");

    double peak = 0.0;
    for (const auto& v : initial.values) peak = std::max(peak, std::abs(v));
    const double edge = std::max(std::abs(initial.values.front()), std::abs(initial.values.back()));
    if (edge > 1e-12 * peak) {
        std::ostringstream msg;
        msg << "spectral_solve: field at grid edge is " << edge / peak
            << " of its peak (need < 1e-12); widen the grid to avoid wrap-around";
        throw std::invalid_argument(msg.str());
    }

    FieldGrid out = initial;
    out.tau = initial.tau + tau;
    if (tau == 0.0) return out;

    auto forward = make_plan(out.values, FFTW_FORWARD);
    auto backward = make_plan(out.values, FFTW_BACKWARD);
    fftw_execute(forward.get());

    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * initial.grid.spacing);
    const double rate = -sign_value(sign) * tau / std::numbers::sqrt2;
    const double cubic = options.cubic_term ? 1.0 / 12.0 : 0.0;
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto signed_j = static_cast<double>(j) - (j >= n / 2 ? static_cast<double>(n) : 0.0);
        const double k = signed_j * dk;
        out.values[j] *= std::polar(scale, rate * (k - cubic * k * k * k));
    }

    fftw_execute(backward.get());
    return out;
}

}  // namespace coinwalk
