#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "ethos/errors.hpp"

namespace ethos {

enum class Side { Buy, Sell };

inline const char* to_string(Side s) { return s == Side::Buy ? "buy" : "sell"; }

inline Side side_from_string(const std::string& s) {
    if (s == "buy" || s == "Buy" || s == "BUY" || s == "b" || s == "B") return Side::Buy;
    if (s == "sell" || s == "Sell" || s == "SELL" || s == "s" || s == "S") return Side::Sell;
    throw ValidationError("unknown side: " + s);
}

/// One displayed price level. Prices are plain doubles at the API surface;
/// the book stores integer tick counts so premium arithmetic is exact.
struct PriceLevel {
    double price = 0.0;
    std::int64_t quantity = 0;
};

class OrderBook {
  public:
    struct Level {
        std::int64_t price_ticks = 0;
        std::int64_t quantity = 0;
    };

    OrderBook() = default;

    /// Builds a validated book. Bids must be given best-first (descending
    /// price), asks best-first (ascending); every price must sit on the
    /// tick grid and quantities must be positive. Either side may be empty;
    /// operations that need it raise EmptyBook.
    OrderBook(const std::vector<PriceLevel>& bids, const std::vector<PriceLevel>& asks,
              double tick_size, double multiplier)
        : tick_size_(tick_size), multiplier_(multiplier) {
        if (!(tick_size > 0.0)) throw ValidationError("tick_size must be > 0");
        if (!(multiplier > 0.0)) throw ValidationError("multiplier must be > 0");
        bids_.reserve(bids.size());
        asks_.reserve(asks.size());
        for (const auto& lvl : bids) bids_.push_back(to_ticks(lvl));
        for (const auto& lvl : asks) asks_.push_back(to_ticks(lvl));
        for (std::size_t i = 1; i < bids_.size(); ++i)
            if (bids_[i].price_ticks >= bids_[i - 1].price_ticks)
                throw ValidationError("bid ladder must be strictly descending");
        for (std::size_t i = 1; i < asks_.size(); ++i)
            if (asks_[i].price_ticks <= asks_[i - 1].price_ticks)
                throw ValidationError("ask ladder must be strictly ascending");
        if (!bids_.empty() && !asks_.empty() &&
            bids_.front().price_ticks >= asks_.front().price_ticks)
            throw ValidationError("crossed book: best bid >= best ask");
    }

    const std::vector<Level>& bids() const { return bids_; }
    const std::vector<Level>& asks() const { return asks_; }
    double tick_size() const { return tick_size_; }
    double multiplier() const { return multiplier_; }
    double price_of(const Level& lvl) const {
        return static_cast<double>(lvl.price_ticks) * tick_size_;
    }

    std::int64_t displayed_depth(Side order_side) const {
        const auto& ladder = opposing(order_side);
        std::int64_t total = 0;
        for (const auto& lvl : ladder) total += lvl.quantity;
        return total;
    }

    /// Ladder a given order side executes against: a sell consumes bids,
    /// a buy consumes asks.
    const std::vector<Level>& opposing(Side order_side) const {
        return order_side == Side::Sell ? bids_ : asks_;
    }

    /// Twice the arrival price, in ticks. Integer, so midpoints between
    /// ticks stay exact.
    std::int64_t arrival_price_twice_ticks() const {
        if (bids_.empty() || asks_.empty())
            throw EmptyBook("arrival price needs both sides of the book");
        return bids_.front().price_ticks + asks_.front().price_ticks;
    }

  private:
    Level to_ticks(const PriceLevel& lvl) const {
        if (lvl.quantity <= 0) throw ValidationError("level quantity must be > 0");
        const double raw = lvl.price / tick_size_;
        const double rounded = std::nearbyint(raw);
        if (std::fabs(raw - rounded) > 1e-6)
            throw ValidationError("price " + std::to_string(lvl.price) +
                                  " is not an integer multiple of the tick size");
        return Level{static_cast<std::int64_t>(rounded), lvl.quantity};
    }

    std::vector<Level> bids_;
    std::vector<Level> asks_;
    double tick_size_ = 0.0;
    double multiplier_ = 1.0;
};

/// Midpoint between best bid and best ask.
inline double arrival_price(const OrderBook& book) {
    return static_cast<double>(book.arrival_price_twice_ticks()) * book.tick_size() / 2.0;
}

struct SweepResult {
    double avg_price = 0.0;       // quantity-weighted fill price
    double total_cost = 0.0;      // qty * |avg - arrival| * multiplier, in currency
    double premium_per_lot = 0.0; // |avg - arrival|, price units per contract
};

/// Walks the opposing ladder in price priority until `qty` contracts are
/// filled. All accumulation is done in integer tick units; the distances
/// from arrival are half-tick integers, so the reported premium and cost
/// are exact whenever tick_size is exactly representable.
inline SweepResult sweep_to_fill(const OrderBook& book, Side side, std::int64_t qty) {
    if (qty <= 0) throw ValidationError("sweep quantity must be > 0");
    const std::int64_t arrival2 = book.arrival_price_twice_ticks();
    const auto& ladder = book.opposing(side);

    std::int64_t remaining = qty;
    std::int64_t fill_ticks = 0;      // sum of qty * price_ticks
    std::int64_t premium_half = 0;    // sum of qty * |2*price - arrival2|, half-ticks
    for (const auto& lvl : ladder) {
        const std::int64_t take = std::min(remaining, lvl.quantity);
        fill_ticks += take * lvl.price_ticks;
        premium_half += take * std::llabs(2 * lvl.price_ticks - arrival2);
        remaining -= take;
        if (remaining == 0) break;
    }
    if (remaining > 0)
        throw InsufficientDepth("displayed depth " + std::to_string(qty - remaining) +
                                    " is less than requested " + std::to_string(qty),
                                qty - remaining);

    const double tick = book.tick_size();
    SweepResult out;
    out.avg_price = static_cast<double>(fill_ticks) * tick / static_cast<double>(qty);
    out.premium_per_lot =
        static_cast<double>(premium_half) * tick / (2.0 * static_cast<double>(qty));
    out.total_cost =
        static_cast<double>(premium_half) * (tick / 2.0) * book.multiplier();
    return out;
}

/// |sweep average - arrival|, price units per contract. This is the cost
/// of immediacy for `qty`, in the same units as a dollar volatility.
inline double liquidity_premium(const OrderBook& book, Side side, std::int64_t qty) {
    return sweep_to_fill(book, side, qty).premium_per_lot;
}

/// (sum bid qty - sum ask qty) / (sum bid qty + sum ask qty) over the top
/// `depth_levels` levels of each side. +1 means all displayed size is on
/// the bid.
inline double book_imbalance(const OrderBook& book, std::size_t depth_levels) {
    if (depth_levels < 1) throw ValidationError("depth_levels must be >= 1");
    if (book.bids().empty() && book.asks().empty())
        throw EmptyBook("imbalance of an empty book");
    std::int64_t bid_qty = 0;
    std::int64_t ask_qty = 0;
    for (std::size_t i = 0; i < depth_levels && i < book.bids().size(); ++i)
        bid_qty += book.bids()[i].quantity;
    for (std::size_t i = 0; i < depth_levels && i < book.asks().size(); ++i)
        ask_qty += book.asks()[i].quantity;
    if (bid_qty + ask_qty == 0) throw EmptyBook("no displayed size within depth");
    return static_cast<double>(bid_qty - ask_qty) / static_cast<double>(bid_qty + ask_qty);
}

/// Text snapshot format, one level per line: `side price qty` with side in
/// {bid, ask} (or B/A), whitespace or comma separated. Optional directive
/// lines `tick <size>` and `multiplier <value>` set the book parameters;
/// `#` starts a comment. Levels may appear in any order; ladders are
/// sorted into price priority.
inline OrderBook parse_book(std::istream& in, double default_tick = 0.0,
                            double default_multiplier = 1.0) {
    double tick = default_tick;
    double multiplier = default_multiplier;
    std::vector<PriceLevel> bids;
    std::vector<PriceLevel> asks;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::replace(line.begin(), line.end(), ',', ' ');
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "tick") {
            if (!(ls >> tick)) throw ValidationError("book line " + std::to_string(lineno) +
                                                     ": bad tick directive");
            continue;
        }
        if (head == "multiplier" || head == "mult") {
            if (!(ls >> multiplier))
                throw ValidationError("book line " + std::to_string(lineno) +
                                      ": bad multiplier directive");
            continue;
        }
        PriceLevel lvl;
        if (!(ls >> lvl.price >> lvl.quantity))
            throw ValidationError("book line " + std::to_string(lineno) +
                                  ": expected `side price qty`");
        if (head == "bid" || head == "BID" || head == "b" || head == "B")
            bids.push_back(lvl);
        else if (head == "ask" || head == "ASK" || head == "a" || head == "A" ||
                 head == "offer")
            asks.push_back(lvl);
        else
            throw ValidationError("book line " + std::to_string(lineno) +
                                  ": unknown side `" + head + "`");
    }
    if (!(tick > 0.0))
        throw ValidationError("book snapshot needs a `tick <size>` directive or default");
    std::sort(bids.begin(), bids.end(),
              [](const PriceLevel& a, const PriceLevel& b) { return a.price > b.price; });
    std::sort(asks.begin(), asks.end(),
              [](const PriceLevel& a, const PriceLevel& b) { return a.price < b.price; });
    return OrderBook(bids, asks, tick, multiplier);
}

inline OrderBook load_book(const std::string& path, double default_tick = 0.0,
                           double default_multiplier = 1.0) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open book file: " + path);
    return parse_book(in, default_tick, default_multiplier);
}

}  // namespace ethos
