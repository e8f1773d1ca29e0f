#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <vector>

#include "ethos/volatility.hpp"

using namespace ethos;
using Catch::Approx;

namespace {

std::vector<Bar> flat_bars(double price, int n, double duration = 3600.0) {
    std::vector<Bar> bars(n);
    for (auto& b : bars) b = Bar{price, price, price, price, duration};
    return bars;
}

std::vector<Bar> scaled(const std::vector<Bar>& bars, double c) {
    auto out = bars;
    for (auto& b : out) {
        b.open *= c;
        b.high *= c;
        b.low *= c;
        b.close *= c;
    }
    return out;
}

std::vector<Bar> sample_bars() {
    // A small wandering series with real ranges.
    std::vector<Bar> bars;
    double last = 100.0;
    const double moves[] = {0.5, -1.25, 2.0, 0.75, -0.5, 1.5, -2.25, 0.25, 1.0, -0.75};
    for (double m : moves) {
        Bar b;
        b.open = last + 0.1 * m;
        b.close = last + m;
        b.high = std::max(b.open, b.close) + 0.4;
        b.low = std::min(b.open, b.close) - 0.3;
        b.duration_s = 1800.0;
        bars.push_back(b);
        last = b.close;
    }
    return bars;
}

const std::vector<RealizedEstimator> kAllEstimators{
    RealizedEstimator::CloseToClose, RealizedEstimator::Parkinson,
    RealizedEstimator::GarmanKlass, RealizedEstimator::RogersSatchell,
    RealizedEstimator::YangZhang};

}  // namespace

TEST_CASE("constant prices estimate zero volatility") {
    const auto bars = flat_bars(4000.0, 12);
    for (auto est : kAllEstimators) CHECK(realized_vol(bars, est).sigma == 0.0);
}

TEST_CASE("close-to-close matches a hand computation") {
    // Closes alternate 0, 1, 0, 1, ...: differences are +-1, sample
    // variance 8/7 over 8 differences, annualized by 5896800/3600.
    std::vector<Bar> bars;
    for (int i = 0; i < 9; ++i) {
        const double c = i % 2 ? 1.0 : 0.0;
        bars.push_back(Bar{c, 1.0, 0.0, c, 3600.0});
    }
    const auto est = realized_vol(bars, RealizedEstimator::CloseToClose);
    CHECK(est.sigma == Approx(std::sqrt(8.0 / 7.0 * 5896800.0 / 3600.0)).epsilon(1e-12));
    CHECK(est.sigma == Approx(43.266615305567875).epsilon(1e-12));
    CHECK(est.seconds_per_year == 5896800.0);
}

TEST_CASE("parkinson matches the plug-in form for a constant range") {
    // High - low = 2 on every bar: per-bar variance 4 / (4 ln 2).
    std::vector<Bar> bars;
    for (int i = 0; i < 6; ++i) bars.push_back(Bar{101.0, 102.0, 100.0, 101.0, 3600.0});
    const auto est = realized_vol(bars, RealizedEstimator::Parkinson);
    CHECK(est.sigma ==
          Approx(std::sqrt(4.0 / (4.0 * std::log(2.0)) * 5896800.0 / 3600.0)).epsilon(1e-12));
    CHECK(est.sigma == Approx(48.61208159476533).epsilon(1e-12));
}

TEST_CASE("scale equivariance: prices times c scale sigma by c") {
    const auto bars = sample_bars();
    for (auto est : kAllEstimators) {
        const double base = realized_vol(bars, est).sigma;
        const double scaled_up = realized_vol(scaled(bars, 7.0), est).sigma;
        CHECK(scaled_up == Approx(7.0 * base).epsilon(1e-12));
    }
}

TEST_CASE("annualization: doubling seconds_per_year scales sigma by sqrt(2)") {
    const auto bars = sample_bars();
    for (auto est : kAllEstimators) {
        const double base = realized_vol(bars, est, 5896800.0).sigma;
        const double doubled = realized_vol(bars, est, 2.0 * 5896800.0).sigma;
        CHECK(doubled == Approx(std::sqrt(2.0) * base).epsilon(1e-12));
    }
}

TEST_CASE("realized vol input validation") {
    CHECK_THROWS_AS(realized_vol({}, RealizedEstimator::Parkinson), InsufficientData);
    CHECK_THROWS_AS(realized_vol(flat_bars(100.0, 1), RealizedEstimator::Parkinson),
                    InsufficientData);
    auto bars = flat_bars(100.0, 4);
    bars[2].duration_s = 7200.0;
    CHECK_THROWS_AS(realized_vol(bars, RealizedEstimator::Parkinson), ValidationError);
    auto bad = flat_bars(100.0, 4);
    bad[1].low = 101.0;  // low above open/close
    CHECK_THROWS_AS(realized_vol(bad, RealizedEstimator::Parkinson), ValidationError);
}

TEST_CASE("term structure interpolation in total variance") {
    const std::vector<TermPoint> single{{0.25, 15.0}};
    CHECK(implied_forward_vol(single, 0.01).sigma == 15.0);
    CHECK(implied_forward_vol(single, 2.0).sigma == 15.0);

    const std::vector<TermPoint> term{{0.1, 10.0}, {0.2, 20.0}};
    CHECK(implied_forward_vol(term, 0.1).sigma == Approx(10.0).epsilon(1e-15));
    CHECK(implied_forward_vol(term, 0.2).sigma == Approx(20.0).epsilon(1e-15));
    // Total variance midpoint: (10 + 0.5 * (80 - 10)) / 0.15 = 300.
    CHECK(implied_forward_vol(term, 0.15).sigma == Approx(std::sqrt(300.0)).epsilon(1e-14));
    CHECK(implied_forward_vol(term, 0.15).sigma == Approx(17.320508075688775).epsilon(1e-14));
    // Flat extrapolation.
    CHECK(implied_forward_vol(term, 0.05).sigma == 10.0);
    CHECK(implied_forward_vol(term, 0.5).sigma == 20.0);

    CHECK_THROWS_AS(implied_forward_vol({}, 0.1), EmptyTermStructure);
    CHECK_THROWS_AS(implied_forward_vol(term, 0.0), ValidationError);
    const std::vector<TermPoint> unsorted{{0.2, 10.0}, {0.1, 20.0}};
    CHECK_THROWS_AS(implied_forward_vol(unsorted, 0.15), ValidationError);
}

TEST_CASE("variance-weighted blend") {
    VolEstimate spot{3.0, VolSource::Realized, RealizedEstimator::CloseToClose, 5896800.0};
    VolEstimate impl{4.0, VolSource::Implied, RealizedEstimator::CloseToClose, 5896800.0};
    CHECK(blend_sigma(spot, impl, 0.0).sigma == 3.0);
    CHECK(blend_sigma(spot, impl, 1.0).sigma == 4.0);
    CHECK(blend_sigma(spot, impl, 0.5).sigma == Approx(std::sqrt(12.5)).epsilon(1e-15));
    CHECK(blend_sigma(spot, impl, 0.5).sigma == Approx(3.5355339059327378).epsilon(1e-15));
    CHECK(blend_sigma(spot, impl, 0.5).source == VolSource::Blended);

    // Monotone in the weight when implied exceeds spot.
    double prev = 0.0;
    for (double w : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
        const double s = blend_sigma(spot, impl, w).sigma;
        CHECK(s > prev);
        prev = s;
    }

    VolEstimate other_clock{4.0, VolSource::Implied, RealizedEstimator::CloseToClose, 86400.0};
    CHECK_THROWS_AS(blend_sigma(spot, other_clock, 0.5), ConventionMismatch);
    CHECK_THROWS_AS(blend_sigma(spot, impl, 1.5), ValidationError);
}

TEST_CASE("bar and term CSV parsing") {
    std::istringstream bars_csv(
        "timestamp,open,high,low,close\n"
        "0,100,101,99.5,100.5\n"
        "3600,100.5,102,100,101\n"
        "7200,101,101.5,100,100.25\n");
    const auto bars = parse_bars_csv(bars_csv);
    REQUIRE(bars.size() == 3);
    CHECK(bars[0].duration_s == 3600.0);
    CHECK(bars[2].close == 100.25);

    std::istringstream uneven(
        "0,100,101,99.5,100.5\n"
        "3600,100.5,102,100,101\n"
        "9000,101,101.5,100,100.25\n");
    CHECK_THROWS_AS(parse_bars_csv(uneven), ValidationError);

    std::istringstream term_csv("tau,sigma\n0.1,10\n0.2,20\n");
    const auto term = parse_term_csv(term_csv);
    REQUIRE(term.size() == 2);
    CHECK(term[1].sigma == 20.0);

    std::istringstream empty_term("tau,sigma\n");
    CHECK_THROWS_AS(parse_term_csv(empty_term), EmptyTermStructure);
}
