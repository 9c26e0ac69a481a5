#include "coinwalk/airy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace coinwalk {

namespace {

constexpr double kSeriesLimit = 8.0;

// The two series cancel to within exp(-2 zeta) of their size near x = 8,
// so they are summed in quad precision to keep Ai accurate to a few ulps
// relative rather than just absolute.
using quad = __float128;

// Ai(0) and -Ai'(0)
constexpr quad kAi0 = 0.355028053887817239260063186004183176398Q;
constexpr quad kDAi0 = 0.2588194037928067984051835601892039634791Q;

double maclaurin(double x) {
    const quad z = x;
    const quad z3 = z * z * z;
    quad f = 1;
    quad g = z;
    quad tf = 1;
    quad tg = z;
    for (int k = 1; k < 200; ++k) {
        tf *= z3 / static_cast<quad>((3 * k - 1) * (3 * k));
        tg *= z3 / static_cast<quad>((3 * k) * (3 * k + 1));
        f += tf;
        g += tg;
        const quad size = (tf < 0 ? -tf : tf) + (tg < 0 ? -tg : tg);
        if (size < static_cast<quad>(1e-36)) break;
    }
    return static_cast<double>(kAi0 * f - kDAi0 * g);
}

// u_k = (2k+1)(2k+3)...(6k-1) / (216^k k!)
double next_u(double u_prev, int k) {
    return u_prev * static_cast<double>((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) /
           (216.0 * static_cast<double>(k) * static_cast<double>(2 * k - 1));
}

// sum_k (-1)^k u_k / zeta^k, truncated at its smallest term.
double decaying_series(double zeta) {
    double sum = 1.0;
    double u = 1.0;
    double last = 1.0;
    double power = 1.0;
    for (int k = 1; k < 100; ++k) {
        u = next_u(u, k);
        power /= zeta;
        const double term = u * power;
        if (term >= last) break;
        sum += (k % 2 == 0 ? term : -term);
        last = term;
        if (term < 1e-17 * std::fabs(sum)) break;
    }
    return sum;
}

// Oscillatory branch, Ai(-X) for X > 0.
double oscillating(double big_x, double log_scale) {
    const double zeta = 2.0 / 3.0 * big_x * std::sqrt(big_x);
    double even = 1.0;  // sum (-1)^k u_{2k} / zeta^{2k}
    double odd = 0.0;   // sum (-1)^k u_{2k+1} / zeta^{2k+1}
    double u = 1.0;
    double power = 1.0;
    double last = 1.0;
    for (int k = 1; k < 200; ++k) {
        u = next_u(u, k);
        power /= zeta;
        const double term = u * power;
        if (term >= last) break;
        const int j = k / 2;
        const double signed_term = (j % 2 == 0 ? term : -term);
        if (k % 2 == 0)
            even += signed_term;
        else
            odd += signed_term;
        last = term;
        if (term < 1e-17) break;
    }
    const double phase = zeta - std::numbers::pi / 4.0;
    const double amplitude = std::exp(log_scale) / (std::sqrt(std::numbers::pi) * std::pow(big_x, 0.25));
    return amplitude * (std::cos(phase) * even + std::sin(phase) * odd);
}

}  // namespace

double scaled_airy(double x, double log_scale) {
    if (!std::isfinite(x) || !std::isfinite(log_scale))
        throw std::domain_error("Airy argument and scale must be finite");
    if (std::fabs(x) <= kSeriesLimit) return std::exp(log_scale) * maclaurin(x);
    if (x < 0.0) return oscillating(-x, log_scale);
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double prefactor = 1.0 / (2.0 * std::sqrt(std::numbers::pi) * std::pow(x, 0.25));
    return std::exp(log_scale - zeta) * prefactor * decaying_series(zeta);
}

double airy(double x) {
    if (!(x >= kAiryMin && x <= kAiryMax)) {
        std::ostringstream msg;
        msg << "airy: argument " << x << " outside supported range [" << kAiryMin << ", " << kAiryMax << "]";
        throw std::domain_error(msg.str());
    }
    return scaled_airy(x, 0.0);
}

}  // namespace coinwalk
