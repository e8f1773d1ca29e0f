#pragma once

#include <cmath>

namespace ethos {

inline constexpr double kPi = 3.141592653589793;
inline constexpr double kSqrt2Pi = 2.5066282746310002;  // sqrt(2*pi)
inline constexpr double kSqrt2 = 1.4142135623730951;    // sqrt(2)

/// Standard normal density.
inline double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / kSqrt2Pi;
}

/// Standard normal CDF via the complementary error function:
/// Phi(x) = erfc(-x / sqrt(2)) / 2. Absolute accuracy is a few ulps of
/// erfc, well inside 1e-15 over the whole real line.
inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / kSqrt2);
}

namespace detail {

// Inner part of the Laplace continued fraction for the Mills ratio,
//   Phi(-q)/phi(q) = 1/(q + R),  R = 1/(q + 2/(q + 3/(q + ...))),
// evaluated bottom-up. Accurate for q >= 4 at the fixed depth used here.
inline double mills_cf_inner(double q) {
    double t = 0.0;
    for (int n = 150; n >= 2; --n) {
        t = static_cast<double>(n) / (q + t);
    }
    return 1.0 / (q + t);
}

}  // namespace detail

/// Phi(x) + phi(x)/x, the function inverted when recovering implied time
/// from an out-of-the-money normal-model price. Strictly decreasing on
/// each half-line; maps (-inf, 0) onto (0, -inf).
///
/// For x <= -4 the direct sum loses ~x^2 ulps to cancellation, so the
/// tail uses the Mills-ratio continued fraction: with q = -x and
/// Phi(-q)/phi(q) = 1/(q + R),
///   Phi(x) + phi(x)/x = -phi(q) * R / (q * (q + R)).
inline double norm_cdf_plus_pdf_over_x(double x) {
    if (x <= -4.0) {
        const double q = -x;
        const double r = detail::mills_cf_inner(q);
        return -norm_pdf(q) * r / (q * (q + r));
    }
    return norm_cdf(x) + norm_pdf(x) / x;
}

}  // namespace ethos
