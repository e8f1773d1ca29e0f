#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "ethos/bachelier.hpp"
#include "ethos/clob.hpp"
#include "ethos/errors.hpp"
#include "ethos/normal.hpp"

namespace ethos {

/// Per-order schedule state. Times are year fractions since order start;
/// `t_star` is the working deadline the schedule drains toward, clamped to
/// `max_horizon`. `prev_target` carries the ratchet: a liquidation target
/// never increases.
struct HorizonState {
    double x0 = 0.0;           // contracts to execute
    double arrival = 0.0;      // benchmark price at order start
    double t = 0.0;            // years since order start
    double t_star = 0.0;       // current working horizon, years
    double prev_target = 0.0;  // last emitted target, contracts
    double max_horizon = 0.0;  // hard time budget, years
};

/// Convexity bias. `upsilon` is exogenous gamma in units of ATM option
/// gamma; `a_g` the dimensionless ratio of expected gamma profit to
/// liquidity premium; `k_t` the hyperbolic decay rate in 1/years.
struct BiasSpec {
    double upsilon = 0.0;
    double a_g = 0.0;
    double k_t = 0.0;
};

/// The horizon at which variance risk equals the liquidity premium:
/// min(2 pi (L / sigma_eff)^2, max_horizon). `sigma_eff` is the outright
/// dollar vol or the spread sigma m.
inline double equilibrium_horizon(double premium, double sigma_eff, double max_horizon) {
    if (premium < 0.0) throw ValidationError("premium must be >= 0");
    if (!(max_horizon > 0.0)) throw ValidationError("max_horizon must be > 0");
    if (sigma_eff <= 0.0)
        throw ZeroVolatility("equilibrium horizon is undefined at zero volatility");
    return std::min(implied_time_atm(premium, sigma_eff), max_horizon);
}

namespace detail {

// Ratchet and clamp a raw schedule value into a valid target.
inline double apply_ratchet(double raw, const HorizonState& state) {
    return std::clamp(std::min(raw, state.prev_target), 0.0, state.x0);
}

}  // namespace detail

/// Straight-line drain toward the current deadline:
/// Z_t = x0 (1 - t / t_star), ratcheted against prev_target. Complete at
/// or past t_star; a zero t_star completes immediately.
inline double linear_target(const HorizonState& state) {
    if (state.t >= state.t_star || state.t_star <= 0.0) return 0.0;
    const double raw = state.x0 * (1.0 - state.t / state.t_star);
    return detail::apply_ratchet(raw, state);
}

/// Expected profit of `upsilon` units of ATM gamma over `tau`:
/// upsilon * sigma_eff * sqrt(tau) / (sqrt(2) pi^{3/2}), which equals
/// 0.5 * upsilon * Gamma_ATM * ExpectedMove^2.
inline double gamma_profit(double upsilon, double sigma_eff, double tau) {
    if (sigma_eff < 0.0 || tau < 0.0) throw ValidationError("gamma_profit: negative input");
    return upsilon * sigma_eff * std::sqrt(tau) / (kSqrt2 * kPi * std::sqrt(kPi));
}

/// Signed bias ratio A_g = P_g / L. Negative accelerates (gamma costs),
/// positive delays (long-gamma preference).
inline double bias_coefficient(double p_g, double premium) {
    if (premium <= 0.0)
        throw ZeroLiquidityPremium("bias ratio needs a positive liquidity premium");
    return p_g / premium;
}

/// Hyperbolic decay rate k_t = (1 + |A_g|)^{1 / ln 2} / t_star. At
/// |A_g| = 1 this is e / t_star.
inline double decay_rate(double a_g, double t_star) {
    if (t_star <= 0.0) throw ZeroHorizon("decay rate needs t_star > 0");
    return std::pow(1.0 + std::fabs(a_g), 1.0 / std::log(2.0)) / t_star;
}

namespace detail {

// sinh(a)/sinh(b) for 0 <= a <= b without overflow:
// exp(a - b) * (1 - e^{-2a}) / (1 - e^{-2b}).
inline double sinh_ratio(double a, double b) {
    return std::exp(a - b) * std::expm1(-2.0 * a) / std::expm1(-2.0 * b);
}

}  // namespace detail

/// Hyperbolic schedule. For a_g <= 0 (gamma cost, front-loaded):
///   Z_t = sinh(k_t (t_star - t)) / sinh(k_t t_star);
/// for a_g > 0 the back-loaded analogue replaces sinh with tanh. Both
/// normalize to x0 at t = 0, drain to zero at t_star, and ratchet.
inline double hyperbolic_target(const HorizonState& state, const BiasSpec& bias) {
    if (state.t_star <= 0.0 || state.t >= state.t_star) return 0.0;
    if (bias.k_t <= 0.0) throw ZeroHorizon("hyperbolic schedule needs k_t > 0");
    const double scaled_remaining = bias.k_t * (state.t_star - state.t);
    const double scaled_full = bias.k_t * state.t_star;
    const double shape = bias.a_g > 0.0
                             ? std::tanh(scaled_remaining) / std::tanh(scaled_full)
                             : detail::sinh_ratio(scaled_remaining, scaled_full);
    return detail::apply_ratchet(state.x0 * shape, state);
}

/// Slippage-capped horizon: the implied time of an out-of-the-money
/// option whose strike sits a cap away from arrival (below for a sell,
/// above for a buy) and whose value is the liquidity premium. With drift,
/// the forward F = e^{mu tau} * arrival depends on the answer, so the
/// inversion is iterated to a 1e-10 fixed point.
inline double slippage_capped_horizon(double premium, double sigma, double arrival,
                                      double slippage_cap, Side side, double drift_mu = 0.0) {
    if (!(slippage_cap > 0.0)) throw ValidationError("slippage cap must be > 0");
    if (!(premium > 0.0)) throw ValidationError("premium must be > 0");
    if (sigma <= 0.0) throw ZeroVolatility("slippage-capped horizon needs sigma > 0");
    const auto kind = side == Side::Sell ? OptionKind::Put : OptionKind::Call;
    const double strike =
        side == Side::Sell ? arrival - slippage_cap : arrival + slippage_cap;

    double tau = implied_time_otm(premium, arrival, strike, sigma, kind);
    if (drift_mu == 0.0) return tau;

    auto next_tau = [&](double t) {
        const double forward = std::exp(drift_mu * t) * arrival;
        return implied_time_otm(premium, forward, strike, sigma, kind);
    };
    // Gap of the self-consistency map, with tenors whose drifted forward
    // leaves the premium below intrinsic counted as overshoot.
    auto gap_at = [&](double t) {
        try {
            return next_tau(t) - t;
        } catch (const NoSolution&) {
            return -std::numeric_limits<double>::infinity();
        }
    };

    const double undrifted = tau;
    for (int iter = 0; iter < 50; ++iter) {
        double next;
        try {
            next = next_tau(tau);
        } catch (const NoSolution&) {
            break;
        }
        if (std::fabs(next - tau) < 1e-10) return next;
        tau = next;
        if (!std::isfinite(tau)) break;
    }

    // The plain iteration is expansive here; bracket the gap from the
    // undrifted tenor instead and bisect.
    double lo = undrifted;
    double hi = undrifted;
    if (gap_at(lo) > 0.0) {
        for (int i = 0; gap_at(hi) > 0.0; ++i) {
            if (i >= 80) throw NoSolution("slippage-capped horizon unbounded under drift");
            hi *= 2.0;
        }
    } else {
        for (int i = 0; gap_at(lo) < 0.0; ++i) {
            if (i >= 80) throw NoSolution("slippage-capped horizon has no fixed point");
            lo *= 0.5;
        }
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double gap = gap_at(mid);
        if (std::fabs(gap) < 1e-10) return mid;
        if (gap > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    throw NoSolution("drifted slippage-capped horizon did not reach a fixed point");
}

}  // namespace ethos
