#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gmfr/date.hpp"
#include "gmfr/error.hpp"
#include "gmfr/sample.hpp"

namespace gmfr {

struct PricePoint {
    Date date;
    double price;
};

/// Dated price observations: dates strictly increasing, prices positive.
class PriceSeries {
public:
    PriceSeries() = default;

    explicit PriceSeries(std::vector<PricePoint> observations) : observations_(std::move(observations)) {
        for (std::size_t k = 0; k < observations_.size(); ++k) {
            const auto& obs = observations_[k];
            if (!(obs.price > 0.0) || !std::isfinite(obs.price)) {
                throw Error(ErrorKind::domain, "non-positive price " + std::to_string(obs.price) + " on " +
                                                   format_date(obs.date));
            }
            if (k > 0 && !(observations_[k - 1].date < obs.date)) {
                throw Error(ErrorKind::input, "price dates not strictly increasing at " + format_date(obs.date));
            }
        }
    }

    std::span<const PricePoint> observations() const noexcept { return observations_; }
    std::size_t size() const noexcept { return observations_.size(); }

private:
    std::vector<PricePoint> observations_;
};

/// How a return is measured between two prices. Never mixed within one analysis.
enum class ReturnKind { simple, log };

/// Whether rates are raw or net of the risk-free rate.
enum class RateKind { plain, excess };

struct ReturnInterval {
    Date start;
    Date end;
    double rate;  // fraction per period, 0.10 == 10%
};

/// Per-interval rates of return. Intervals are ordered and non-overlapping;
/// series built from prices are also contiguous.
class ReturnSeries {
public:
    ReturnSeries() = default;

    ReturnSeries(std::vector<ReturnInterval> intervals, RateKind kind, ReturnKind basis = ReturnKind::simple)
        : intervals_(std::move(intervals)), kind_(kind), basis_(basis) {
        for (std::size_t k = 0; k < intervals_.size(); ++k) {
            const auto& iv = intervals_[k];
            if (!(iv.start < iv.end)) {
                throw Error(ErrorKind::input, "interval ending " + format_date(iv.end) + " has no extent");
            }
            if (k > 0 && intervals_[k - 1].end > iv.start) {
                throw Error(ErrorKind::input, "overlapping intervals at " + format_date(iv.start));
            }
            if (!std::isfinite(iv.rate)) {
                throw Error(ErrorKind::domain, "non-finite rate for interval ending " + format_date(iv.end));
            }
        }
    }

    std::span<const ReturnInterval> intervals() const noexcept { return intervals_; }
    std::size_t size() const noexcept { return intervals_.size(); }
    RateKind kind() const noexcept { return kind_; }
    ReturnKind basis() const noexcept { return basis_; }

    std::vector<double> rates() const {
        std::vector<double> out;
        out.reserve(intervals_.size());
        for (const auto& iv : intervals_) out.push_back(iv.rate);
        return out;
    }

    /// Keeps the intervals lying wholly inside [from, to].
    ReturnSeries within(const Date& from, const Date& to) const {
        std::vector<ReturnInterval> kept;
        for (const auto& iv : intervals_) {
            if (iv.start >= from && iv.end <= to) kept.push_back(iv);
        }
        return ReturnSeries(std::move(kept), kind_, basis_);
    }

private:
    std::vector<ReturnInterval> intervals_;
    RateKind kind_ = RateKind::plain;
    ReturnKind basis_ = ReturnKind::simple;
};

/// One risk-free rate per return interval; rates may vary across intervals.
struct RiskFreeSeries {
    std::vector<ReturnInterval> intervals;
};

struct RatePoint {
    Date date;
    double rate;
};

/// Conversion applied to risk-free rows at ingestion. A quoted annual rate
/// becomes a per-period rate by dividing by periods_per_year.
struct RiskFreeConvention {
    double periods_per_year = 1.0;  // 1 means rows are already per-period
};

inline ReturnSeries returns_from_prices(const PriceSeries& prices, ReturnKind basis = ReturnKind::simple) {
    const auto obs = prices.observations();
    if (obs.size() < 2) {
        throw Error(ErrorKind::insufficient_data,
                    "need at least 2 price observations, got " + std::to_string(obs.size()));
    }
    std::vector<ReturnInterval> out;
    out.reserve(obs.size() - 1);
    for (std::size_t k = 0; k + 1 < obs.size(); ++k) {
        const double p0 = obs[k].price;
        const double p1 = obs[k + 1].price;
        const double rate = basis == ReturnKind::simple ? (p1 - p0) / p0 : std::log(p1 / p0);
        out.push_back({obs[k].date, obs[k + 1].date, rate});
    }
    return ReturnSeries(std::move(out), RateKind::plain, basis);
}

namespace detail {

inline std::vector<ReturnInterval> shift_rates(std::span<const ReturnInterval> rates,
                                               std::span<const ReturnInterval> offsets, double sign) {
    if (rates.size() != offsets.size()) {
        throw Error(ErrorKind::alignment, "risk-free series has " + std::to_string(offsets.size()) +
                                              " intervals, returns have " + std::to_string(rates.size()));
    }
    std::vector<ReturnInterval> out;
    out.reserve(rates.size());
    for (std::size_t k = 0; k < rates.size(); ++k) {
        if (rates[k].start != offsets[k].start || rates[k].end != offsets[k].end) {
            throw Error(ErrorKind::alignment, "risk-free interval " + format_date(offsets[k].start) + ".." +
                                                  format_date(offsets[k].end) + " does not match return interval " +
                                                  format_date(rates[k].start) + ".." + format_date(rates[k].end));
        }
        out.push_back({rates[k].start, rates[k].end, rates[k].rate - sign * offsets[k].rate});
    }
    return out;
}

}  // namespace detail

inline ReturnSeries excess_returns(const ReturnSeries& returns, const RiskFreeSeries& rf) {
    if (returns.kind() != RateKind::plain) {
        throw Error(ErrorKind::input, "excess returns require a plain return series");
    }
    return ReturnSeries(detail::shift_rates(returns.intervals(), rf.intervals, 1.0), RateKind::excess,
                        returns.basis());
}

/// Inverse of excess_returns: adds the risk-free rate back.
inline ReturnSeries plain_returns(const ReturnSeries& excess, const RiskFreeSeries& rf) {
    if (excess.kind() != RateKind::excess) {
        throw Error(ErrorKind::input, "expected an excess return series");
    }
    return ReturnSeries(detail::shift_rates(excess.intervals(), rf.intervals, -1.0), RateKind::plain,
                        excess.basis());
}

/// Restricts returns to the intervals whose end date carries a risk-free row.
inline ReturnSeries covered_by(const ReturnSeries& returns, std::span<const RatePoint> rows) {
    std::vector<ReturnInterval> kept;
    for (const auto& iv : returns.intervals()) {
        auto hit = std::find_if(rows.begin(), rows.end(), [&](const RatePoint& p) { return p.date == iv.end; });
        if (hit != rows.end()) kept.push_back(iv);
    }
    return ReturnSeries(std::move(kept), returns.kind(), returns.basis());
}

/// Builds the risk-free series for a return series from dated rows, matching
/// each interval to the row dated at its end.
inline RiskFreeSeries risk_free_for(const ReturnSeries& returns, std::span<const RatePoint> rows,
                                    RiskFreeConvention convention = {}) {
    if (!(convention.periods_per_year > 0.0)) {
        throw Error(ErrorKind::domain, "periods per year must be positive");
    }
    std::map<Date, double> by_date;
    for (const auto& row : rows) by_date[row.date] = row.rate;
    RiskFreeSeries rf;
    rf.intervals.reserve(returns.size());
    for (const auto& iv : returns.intervals()) {
        auto it = by_date.find(iv.end);
        if (it == by_date.end()) {
            throw Error(ErrorKind::alignment, "no risk-free rate dated " + format_date(iv.end));
        }
        rf.intervals.push_back({iv.start, iv.end, it->second / convention.periods_per_year});
    }
    return rf;
}

/// Pairs the intervals common to both series, in date order. Intervals match
/// when both start and end dates coincide; unmatched intervals are dropped.
inline PairedSample align(const ReturnSeries& market, const ReturnSeries& investment) {
    if (market.basis() != investment.basis()) {
        throw Error(ErrorKind::input, "cannot pair simple and log returns");
    }
    std::map<std::pair<Date, Date>, double> inv;
    for (const auto& iv : investment.intervals()) inv[{iv.start, iv.end}] = iv.rate;

    std::vector<double> xs, ys;
    std::vector<Date> dates;
    for (const auto& iv : market.intervals()) {
        auto it = inv.find({iv.start, iv.end});
        if (it == inv.end()) continue;
        xs.push_back(iv.rate);
        ys.push_back(it->second);
        dates.push_back(iv.end);
    }
    if (xs.size() < 3) {
        throw Error(ErrorKind::insufficient_data,
                    "series share " + std::to_string(xs.size()) + " common intervals, need at least 3");
    }
    return PairedSample::from_pairs(xs, ys, std::move(dates));
}

}  // namespace gmfr
