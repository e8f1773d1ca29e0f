#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ethos/errors.hpp"

namespace ethos {

/// Trading-time clock: 252 days of 6.5 hours. Overridable everywhere a
/// VolEstimate or config is built.
inline constexpr double kDefaultSecondsPerYear = 252.0 * 6.5 * 3600.0;  // 5,896,800

struct Bar {
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double duration_s = 0.0;
};

enum class RealizedEstimator { CloseToClose, Parkinson, GarmanKlass, RogersSatchell, YangZhang };

inline const char* to_string(RealizedEstimator e) {
    switch (e) {
        case RealizedEstimator::CloseToClose: return "close_to_close";
        case RealizedEstimator::Parkinson: return "parkinson";
        case RealizedEstimator::GarmanKlass: return "garman_klass";
        case RealizedEstimator::RogersSatchell: return "rogers_satchell";
        case RealizedEstimator::YangZhang: return "yang_zhang";
    }
    return "?";
}

inline RealizedEstimator estimator_from_string(const std::string& s) {
    if (s == "close_to_close" || s == "cc") return RealizedEstimator::CloseToClose;
    if (s == "parkinson") return RealizedEstimator::Parkinson;
    if (s == "garman_klass" || s == "gk") return RealizedEstimator::GarmanKlass;
    if (s == "rogers_satchell" || s == "rs") return RealizedEstimator::RogersSatchell;
    if (s == "yang_zhang" || s == "yz") return RealizedEstimator::YangZhang;
    throw ValidationError("unknown estimator: " + s);
}

enum class VolSource { Realized, Implied, Blended };

/// Annualized dollar volatility: price units per sqrt(year), together with
/// the clock that defines the year.
struct VolEstimate {
    double sigma = 0.0;
    VolSource source = VolSource::Realized;
    RealizedEstimator estimator = RealizedEstimator::CloseToClose;  // when Realized
    double seconds_per_year = kDefaultSecondsPerYear;
};

namespace detail {

// Sample variance (n-1 denominator) of a series of values.
inline double sample_variance(const std::vector<double>& xs) {
    if (xs.size() < 2) throw InsufficientData("need at least two observations");
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return acc / (xs.size() - 1);
}

}  // namespace detail

/// Annualized dollar volatility from OHLC bars. Every estimator uses raw
/// price differences where the classical form uses log returns, matching
/// arithmetic price dynamics. Per-bar variance is scaled by
/// seconds_per_year / duration.
///
/// Per-bar variance by estimator (differences o, h, l, c within a bar,
/// c_prev the prior close):
///   CloseToClose:   sample variance of (c_i - c_{i-1})
///   Parkinson:      (h - l)^2 / (4 ln 2)
///   GarmanKlass:    0.5 (h - l)^2 - (2 ln 2 - 1)(c - o)^2
///   RogersSatchell: (h - o)(h - c) + (l - o)(l - c)
///   YangZhang:      V_on + k V_oc + (1 - k) V_rs,
///                   k = 0.34 / (1.34 + (n + 1)/(n - 1)),
///                   V_on  = sample variance of (o_i - c_{i-1}),
///                   V_oc  = sample variance of (c_i - o_i),
///                   V_rs  = mean Rogers-Satchell term.
inline VolEstimate realized_vol(const std::vector<Bar>& bars, RealizedEstimator estimator,
                                double seconds_per_year = kDefaultSecondsPerYear) {
    if (bars.size() < 2) throw InsufficientData("realized_vol needs at least two bars");
    const double duration = bars.front().duration_s;
    for (const auto& b : bars) {
        if (!(b.duration_s > 0.0)) throw ValidationError("bar duration must be > 0");
        if (std::fabs(b.duration_s - duration) > 1e-9 * duration)
            throw ValidationError("bars must share one duration");
        if (b.low > std::min(b.open, b.close) + 1e-12 ||
            b.high < std::max(b.open, b.close) - 1e-12)
            throw ValidationError("bar range must contain open and close");
    }

    const std::size_t n = bars.size();
    double per_bar_var = 0.0;
    switch (estimator) {
        case RealizedEstimator::CloseToClose: {
            std::vector<double> diffs;
            diffs.reserve(n - 1);
            for (std::size_t i = 1; i < n; ++i)
                diffs.push_back(bars[i].close - bars[i - 1].close);
            per_bar_var = detail::sample_variance(diffs);
            break;
        }
        case RealizedEstimator::Parkinson: {
            double acc = 0.0;
            for (const auto& b : bars) {
                const double range = b.high - b.low;
                acc += range * range;
            }
            per_bar_var = acc / (4.0 * std::log(2.0) * n);
            break;
        }
        case RealizedEstimator::GarmanKlass: {
            double acc = 0.0;
            for (const auto& b : bars) {
                const double range = b.high - b.low;
                const double body = b.close - b.open;
                acc += 0.5 * range * range - (2.0 * std::log(2.0) - 1.0) * body * body;
            }
            per_bar_var = std::max(acc / n, 0.0);
            break;
        }
        case RealizedEstimator::RogersSatchell: {
            double acc = 0.0;
            for (const auto& b : bars)
                acc += (b.high - b.open) * (b.high - b.close) +
                       (b.low - b.open) * (b.low - b.close);
            per_bar_var = std::max(acc / n, 0.0);
            break;
        }
        case RealizedEstimator::YangZhang: {
            std::vector<double> overnight, open_close;
            overnight.reserve(n - 1);
            open_close.reserve(n);
            for (std::size_t i = 1; i < n; ++i)
                overnight.push_back(bars[i].open - bars[i - 1].close);
            for (const auto& b : bars) open_close.push_back(b.close - b.open);
            double rs = 0.0;
            for (const auto& b : bars)
                rs += (b.high - b.open) * (b.high - b.close) +
                      (b.low - b.open) * (b.low - b.close);
            rs = std::max(rs / n, 0.0);
            const double k =
                0.34 / (1.34 + static_cast<double>(n + 1) / static_cast<double>(n - 1));
            const double v_on = overnight.size() >= 2 ? detail::sample_variance(overnight) : 0.0;
            const double v_oc = detail::sample_variance(open_close);
            per_bar_var = v_on + k * v_oc + (1.0 - k) * rs;
            break;
        }
    }

    VolEstimate out;
    out.sigma = std::sqrt(per_bar_var * seconds_per_year / duration);
    out.source = VolSource::Realized;
    out.estimator = estimator;
    out.seconds_per_year = seconds_per_year;
    return out;
}

struct TermPoint {
    double tau = 0.0;    // years
    double sigma = 0.0;  // price units per sqrt(year)
};

/// Interpolates an implied-volatility term structure linearly in total
/// variance sigma^2 * tau, with flat sigma extrapolation beyond the knots.
inline VolEstimate implied_forward_vol(const std::vector<TermPoint>& term, double tau_query,
                                       double seconds_per_year = kDefaultSecondsPerYear) {
    if (term.empty()) throw EmptyTermStructure("term structure has no points");
    if (!(tau_query > 0.0)) throw ValidationError("tau_query must be > 0");
    for (std::size_t i = 0; i < term.size(); ++i) {
        if (term[i].sigma < 0.0) throw ValidationError("term sigma must be >= 0");
        if (!(term[i].tau > 0.0)) throw ValidationError("term tau must be > 0");
        if (i > 0 && term[i].tau <= term[i - 1].tau)
            throw ValidationError("term taus must be strictly increasing");
    }

    VolEstimate out;
    out.source = VolSource::Implied;
    out.seconds_per_year = seconds_per_year;

    if (tau_query <= term.front().tau) {
        out.sigma = term.front().sigma;
        return out;
    }
    if (tau_query >= term.back().tau) {
        out.sigma = term.back().sigma;
        return out;
    }
    auto hi = std::lower_bound(term.begin(), term.end(), tau_query,
                               [](const TermPoint& p, double t) { return p.tau < t; });
    const auto lo = hi - 1;
    const double w_lo = lo->sigma * lo->sigma * lo->tau;
    const double w_hi = hi->sigma * hi->sigma * hi->tau;
    const double frac = (tau_query - lo->tau) / (hi->tau - lo->tau);
    const double w = w_lo + (w_hi - w_lo) * frac;
    out.sigma = std::sqrt(w / tau_query);
    return out;
}

/// Variance-weighted blend: sigma^2 = (1 - w) spot^2 + w implied^2.
inline VolEstimate blend_sigma(const VolEstimate& spot, const VolEstimate& implied,
                               double weight_implied) {
    if (weight_implied < 0.0 || weight_implied > 1.0)
        throw ValidationError("blend weight must lie in [0, 1]");
    if (spot.seconds_per_year != implied.seconds_per_year)
        throw ConventionMismatch("blend requires one seconds_per_year convention");
    VolEstimate out;
    out.sigma = std::sqrt((1.0 - weight_implied) * spot.sigma * spot.sigma +
                          weight_implied * implied.sigma * implied.sigma);
    out.source = VolSource::Blended;
    out.seconds_per_year = spot.seconds_per_year;
    return out;
}

/// Bar CSV: `timestamp,open,high,low,close` rows (header line optional);
/// timestamps are seconds and must be evenly spaced. The common spacing
/// becomes each bar's duration.
inline std::vector<Bar> parse_bars_csv(std::istream& in) {
    std::vector<double> ts;
    std::vector<Bar> bars;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double t;
        Bar b;
        if (!(ls >> t >> b.open >> b.high >> b.low >> b.close)) {
            if (lineno == 1) continue;  // header
            throw ValidationError("bars line " + std::to_string(lineno) +
                                  ": expected `timestamp,open,high,low,close`");
        }
        ts.push_back(t);
        bars.push_back(b);
    }
    if (bars.size() < 2) throw InsufficientData("bar file needs at least two rows");
    const double dt = ts[1] - ts[0];
    if (!(dt > 0.0)) throw ValidationError("bar timestamps must increase");
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (std::fabs(ts[i] - ts[i - 1] - dt) > 1e-6 * dt)
            throw ValidationError("bar timestamps must be evenly spaced");
    for (auto& b : bars) b.duration_s = dt;
    return bars;
}

inline std::vector<Bar> load_bars_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open bars file: " + path);
    return parse_bars_csv(in);
}

/// Term-structure CSV: `tau,sigma` rows, tau in years, header optional.
inline std::vector<TermPoint> parse_term_csv(std::istream& in) {
    std::vector<TermPoint> term;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        TermPoint p;
        if (!(ls >> p.tau >> p.sigma)) {
            if (lineno == 1) continue;  // header
            throw ValidationError("term line " + std::to_string(lineno) +
                                  ": expected `tau,sigma`");
        }
        term.push_back(p);
    }
    if (term.empty()) throw EmptyTermStructure("term file has no points");
    return term;
}

inline std::vector<TermPoint> load_term_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open term file: " + path);
    return parse_term_csv(in);
}

}  // namespace ethos
