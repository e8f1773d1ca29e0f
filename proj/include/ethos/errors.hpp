#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ethos {

/// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A required side of the order book has no levels.
struct EmptyBook : Error {
    using Error::Error;
};

/// Displayed liquidity is smaller than the requested quantity.
/// `fillable` is the number of contracts that could be executed.
struct InsufficientDepth : Error {
    InsufficientDepth(const std::string& what, std::int64_t fillable_qty)
        : Error(what), fillable(fillable_qty) {}
    std::int64_t fillable;
};

/// Pricing inputs collapse the model (e.g. sigma * sqrt(tau) == 0 where a
/// distribution is required).
struct DegenerateInputs : Error {
    using Error::Error;
};

/// A horizon or implied-time query with zero volatility and a positive
/// premium: the horizon is undefined rather than infinite.
struct ZeroVolatility : Error {
    using Error::Error;
};

/// Root finding has no admissible solution for the given inputs.
struct NoSolution : Error {
    using Error::Error;
};

/// Not enough observations for the requested estimator.
struct InsufficientData : Error {
    using Error::Error;
};

/// Two estimates use different time conventions and cannot be combined.
struct ConventionMismatch : Error {
    using Error::Error;
};

/// An implied term structure with no points.
struct EmptyTermStructure : Error {
    using Error::Error;
};

/// Bias ratio requested against a zero liquidity premium.
struct ZeroLiquidityPremium : Error {
    using Error::Error;
};

/// Schedule parameter requested against a zero horizon.
struct ZeroHorizon : Error {
    using Error::Error;
};

/// Malformed input files, configs, or out-of-range parameters.
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace ethos
