#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "ethos/errors.hpp"
#include "ethos/normal.hpp"

namespace ethos {

enum class OptionKind { Call, Put };

/// Inputs for normal-model (arithmetic) option pricing. `sigma` is dollar
/// volatility in price units per sqrt(year), `tau` the tenor in years.
struct PricingInputs {
    double forward = 0.0;
    double strike = 0.0;
    double sigma = 0.0;
    double tau = 0.0;
    double rate = 0.0;
};

/// Two correlated legs; the spread trades with effective sigma
/// m = sqrt(sigma1^2 + sigma2^2 - 2 rho sigma1 sigma2).
struct SpreadSpec {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    double rho = 0.0;
};

/// Decomposition of a call into exercise probability and the expected
/// forward conditional on exercise.
struct ConditionalClaim {
    double exercise_prob = 0.0;
    double conditional_value = 0.0;
};

struct Greeks {
    double delta = 0.0;  // dPrice/dF
    double gamma = 0.0;  // d2Price/dF2, 1/price-units
};

/// Expected absolute move of an arithmetic Brownian price over `tau`:
/// 2 sigma sqrt(tau) / sqrt(2 pi). Equal to the ATM straddle value.
inline double expected_move(double sigma, double tau) {
    if (sigma < 0.0 || tau < 0.0) throw ValidationError("expected_move: negative input");
    return 2.0 * sigma * std::sqrt(tau) / kSqrt2Pi;
}

/// Value of an at-the-money option (either side) under the normal model:
/// sigma_eff * sqrt(tau) / sqrt(2 pi) = half the expected move. Serves the
/// outright case (sigma_eff = sigma) and the spread case (sigma_eff = m).
inline double half_straddle_value(double sigma_eff, double tau) {
    if (sigma_eff < 0.0 || tau < 0.0)
        throw ValidationError("half_straddle_value: negative input");
    return sigma_eff * std::sqrt(tau) / kSqrt2Pi;
}

/// Normal-model vanilla price:
///   Call = e^{-r tau} ((F - k) Phi(d1) + g)
///   Put  = e^{-r tau} ((k - F) Phi(-d1) + g)
/// with d1 = (F - k) / (sigma sqrt(tau)) and g = phi(d1) sigma sqrt(tau).
/// A vanishing sigma*sqrt(tau) returns discounted intrinsic value.
inline double vanilla_price(const PricingInputs& in, OptionKind kind) {
    if (in.sigma < 0.0 || in.tau < 0.0) throw ValidationError("vanilla_price: negative input");
    const double disc = std::exp(-in.rate * in.tau);
    const double stdev = in.sigma * std::sqrt(in.tau);
    const double moneyness = in.forward - in.strike;
    if (stdev == 0.0) {
        const double intrinsic = kind == OptionKind::Call ? std::max(moneyness, 0.0)
                                                          : std::max(-moneyness, 0.0);
        return disc * intrinsic;
    }
    const double d1 = moneyness / stdev;
    const double g = norm_pdf(d1) * stdev;
    if (kind == OptionKind::Call) return disc * (moneyness * norm_cdf(d1) + g);
    return disc * (-moneyness * norm_cdf(-d1) + g);
}

/// First and second derivatives of the call price in the forward:
/// delta = e^{-r tau} Phi(d1), gamma = e^{-r tau} phi(d1) / (sigma sqrt(tau)).
inline Greeks greeks(const PricingInputs& in) {
    const double stdev = in.sigma * std::sqrt(in.tau);
    if (stdev <= 0.0) throw DegenerateInputs("greeks: sigma*sqrt(tau) must be > 0");
    const double disc = std::exp(-in.rate * in.tau);
    const double d1 = (in.forward - in.strike) / stdev;
    return Greeks{disc * norm_cdf(d1), disc * norm_pdf(d1) / stdev};
}

/// Effective Bachelier sigma of the spread of two correlated legs.
inline double spread_sigma(const SpreadSpec& spec) {
    if (spec.sigma1 < 0.0 || spec.sigma2 < 0.0)
        throw ValidationError("spread_sigma: negative sigma");
    if (spec.rho < -1.0 || spec.rho > 1.0) throw ValidationError("spread_sigma: |rho| > 1");
    const double var = spec.sigma1 * spec.sigma1 + spec.sigma2 * spec.sigma2 -
                       2.0 * spec.rho * spec.sigma1 * spec.sigma2;
    return std::sqrt(std::max(var, 0.0));
}

/// At-the-money spread option value: e^{-r tau} phi(0) m sqrt(tau). With
/// r = 0 this is exactly half_straddle_value(spread_sigma(spec), tau).
inline double spread_option_atm(const SpreadSpec& spec, double tau, double rate = 0.0) {
    if (tau < 0.0) throw ValidationError("spread_option_atm: negative tau");
    return std::exp(-rate * tau) * half_straddle_value(spread_sigma(spec), tau);
}

/// Tenor of an at-the-money option worth `value`: 2 pi (value/sigma_eff)^2.
/// Exact inverse of half_straddle_value in tau.
inline double implied_time_atm(double value, double sigma_eff) {
    if (value < 0.0) throw ValidationError("implied_time_atm: negative value");
    if (value == 0.0) return 0.0;
    if (sigma_eff <= 0.0)
        throw ZeroVolatility("implied time of a positive premium needs sigma > 0");
    const double ratio = value / sigma_eff;
    return 2.0 * kPi * ratio * ratio;
}

namespace detail {

// Solves Phi(x) + phi(x)/x = beta for x on the monotone negative branch,
// beta < 0. Bracketed, safeguarded Newton; the initial guess comes from
// the small-|x| expansion (beta large) or the asymptotic form
// Phi~(x) ~ -phi(x)/|x|^3 (beta small). Converges at 1e-14 on the
// residual relative to |beta|, 100 iterations max.
inline double invert_cdf_plus_pdf_over_x(double beta) {
    if (!(beta < 0.0)) throw NoSolution("inversion needs a negative target");

    double x;
    if (beta <= -0.4) {
        // Root near zero: Phi~(x) ~ 0.5 + 1/(sqrt(2 pi) x).
        x = 1.0 / (kSqrt2Pi * (beta - 0.5));
    } else {
        // Root far out: |beta| ~ phi(x)/|x|^3, fixed point on w = x^2.
        const double w0 = -2.0 * std::log(kSqrt2Pi * (-beta));
        double w = std::max(w0, 0.5);
        for (int i = 0; i < 3; ++i) w = std::max(0.5, w0 - 3.0 * std::log(w));
        x = -std::sqrt(w);
    }

    // Bracket the root: Phi~ is strictly decreasing, 0- at -inf, -inf at 0-.
    double lo = x, hi = x;  // lo < root < hi, f(lo) >= beta >= f(hi)
    for (int i = 0; norm_cdf_plus_pdf_over_x(lo) < beta; ++i) {
        lo *= 2.0;
        if (i > 200 || !std::isfinite(lo)) throw NoSolution("implied-time bracket failed");
    }
    for (int i = 0; norm_cdf_plus_pdf_over_x(hi) > beta; ++i) {
        hi *= 0.5;
        if (i > 2000) throw NoSolution("implied-time bracket failed");
    }

    x = std::clamp(x, lo, hi);
    const double tol = 1e-14 * std::max(1e-300, -beta);
    for (int iter = 0; iter < 100; ++iter) {
        const double f = norm_cdf_plus_pdf_over_x(x) - beta;
        if (std::fabs(f) <= tol) return x;
        if (f > 0.0)
            lo = x;  // x left of root
        else
            hi = x;
        const double deriv = -norm_pdf(x) / (x * x);
        double next = x - f / deriv;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x) return x;
        x = next;
    }
    return x;
}

}  // namespace detail

/// Recovers the tenor at which an option away from the money is worth
/// `option_price`, holding sigma fixed. The put case solves
///   Phi(x) + phi(x)/x = P / (k - F),  x = (k - F) / (sigma sqrt(tau));
/// out of the money (k < F) the root lies on the negative half-line. A
/// call is mapped onto the put by the normal-model symmetry
/// C(F, k) = P(k, F), and an in-the-money put onto the negative branch by
/// Phi~(x) = 1 - Phi~(-x). Returns tau with
/// vanilla_price(F, k, sigma, tau) = option_price.
inline double implied_time_otm(double option_price, double forward, double strike,
                               double sigma, OptionKind kind) {
    if (sigma <= 0.0) throw ZeroVolatility("implied_time_otm needs sigma > 0");
    if (forward == strike)
        throw ValidationError("implied_time_otm needs F != k; use implied_time_atm");
    if (option_price < 0.0) throw NoSolution("option price below intrinsic floor");
    if (option_price == 0.0) return 0.0;

    // Put-space moneyness; calls become puts with F and k swapped.
    double f = forward;
    double k = strike;
    if (kind == OptionKind::Call) std::swap(f, k);
    const double theta = k - f;

    double x;
    if (theta < 0.0) {  // out of the money
        x = detail::invert_cdf_plus_pdf_over_x(option_price / theta);
    } else {  // in the money: price must clear the intrinsic floor
        if (option_price < theta) throw NoSolution("option price below intrinsic floor");
        const double mirrored = 1.0 - option_price / theta;
        if (mirrored >= 0.0) return 0.0;  // at the floor to double precision
        x = -detail::invert_cdf_plus_pdf_over_x(mirrored);
    }
    const double root = theta / (x * sigma);
    return root * root;
}

/// Splits a call into P{F > k} and E[F | F > k]:
///   exercise_prob = Phi(d1),
///   conditional_value = F + sigma sqrt(tau) phi(d1) / Phi(d1).
/// exercise_prob * (conditional_value - k) recomposes the r = 0 call.
inline ConditionalClaim conditional_claim(const PricingInputs& in) {
    const double stdev = in.sigma * std::sqrt(in.tau);
    if (stdev <= 0.0) throw DegenerateInputs("conditional_claim: sigma*sqrt(tau) must be > 0");
    const double d1 = (in.forward - in.strike) / stdev;
    const double prob = norm_cdf(d1);
    return ConditionalClaim{prob, in.forward + stdev * norm_pdf(d1) / prob};
}

}  // namespace ethos
