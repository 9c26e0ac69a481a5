// Airy function Ai on the real line.
//
// |x| <= 8 is summed from the Maclaurin series in quad precision; beyond
// that the large-|x| asymptotic expansions are summed up to their smallest
// term. Absolute error is below 1e-10 on [-10, 5] and 1e-8 on [-60, 30].

#pragma once

namespace coinwalk {

inline constexpr double kAiryMin = -60.0;
inline constexpr double kAiryMax = 30.0;

/// Ai(x) for x in [kAiryMin, kAiryMax]; throws std::domain_error outside.
double airy(double x);

/// exp(log_scale) * Ai(x) for any finite x. The exponential weight is folded
/// into the decaying branch before exponentiation, so large arguments neither
/// overflow nor lose the product to underflow of Ai alone.
double scaled_airy(double x, double log_scale);

}  // namespace coinwalk
