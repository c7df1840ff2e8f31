#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gmfr/date.hpp"
#include "gmfr/error.hpp"

namespace gmfr {

/// Aligned (market, investment) return pairs with their moments computed once.
///
/// Standard deviations use the n-1 divisor. The correlation is clamped to
/// [-1, 1] to absorb floating-point overshoot. A sample is only constructible
/// when n >= 3 and neither variable is constant.
class PairedSample {
public:
    /// Builds a sample from parallel market/investment rates. Optional dates
    /// label each pair (interval end dates) and must match in length.
    static PairedSample from_pairs(std::span<const double> market,
                                   std::span<const double> investment,
                                   std::vector<Date> dates = {}) {
        if (market.size() != investment.size()) {
            throw Error(ErrorKind::alignment, "market and investment series differ in length (" +
                                                  std::to_string(market.size()) + " vs " +
                                                  std::to_string(investment.size()) + ")");
        }
        if (!dates.empty() && dates.size() != market.size()) {
            throw Error(ErrorKind::alignment, "date labels do not match sample length");
        }
        if (market.size() < 3) {
            throw Error(ErrorKind::insufficient_data,
                        "a paired sample needs at least 3 observations, got " +
                            std::to_string(market.size()));
        }
        for (std::size_t k = 0; k < market.size(); ++k) {
            if (!std::isfinite(market[k]) || !std::isfinite(investment[k])) {
                throw Error(ErrorKind::domain, "non-finite rate at position " + std::to_string(k));
            }
        }
        PairedSample s;
        s.market_.assign(market.begin(), market.end());
        s.investment_.assign(investment.begin(), investment.end());
        s.dates_ = std::move(dates);
        s.compute_moments();
        return s;
    }

    std::size_t n() const noexcept { return market_.size(); }
    std::span<const double> market() const noexcept { return market_; }
    std::span<const double> investment() const noexcept { return investment_; }
    std::span<const Date> dates() const noexcept { return dates_; }

    double mean_m() const noexcept { return mean_m_; }
    double mean_i() const noexcept { return mean_i_; }
    double sd_m() const noexcept { return sd_m_; }
    double sd_i() const noexcept { return sd_i_; }
    double corr() const noexcept { return corr_; }

    /// Centered sums of squares and cross products.
    double sxx() const noexcept { return sxx_; }
    double syy() const noexcept { return syy_; }
    double sxy() const noexcept { return sxy_; }

    double covariance() const noexcept { return sxy_ / static_cast<double>(n() - 1); }

    /// The same data with the axes exchanged.
    PairedSample swapped() const {
        return from_pairs(investment_, market_, dates_);
    }

private:
    PairedSample() = default;

    void compute_moments() {
        const auto count = static_cast<double>(n());
        double sum_x = 0.0, sum_y = 0.0;
        for (std::size_t k = 0; k < n(); ++k) {
            sum_x += market_[k];
            sum_y += investment_[k];
        }
        mean_m_ = sum_x / count;
        mean_i_ = sum_y / count;

        double sxx = 0.0, syy = 0.0, sxy = 0.0;
        double max_x = 0.0, max_y = 0.0;
        for (std::size_t k = 0; k < n(); ++k) {
            const double dx = market_[k] - mean_m_;
            const double dy = investment_[k] - mean_i_;
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
            max_x = std::max(max_x, std::abs(market_[k]));
            max_y = std::max(max_y, std::abs(investment_[k]));
        }

        // Spread below rounding noise of the data counts as constant.
        auto constant = [&](double ss, double scale) {
            return ss == 0.0 || std::sqrt(ss / count) <= 64.0 * std::numeric_limits<double>::epsilon() * scale;
        };
        const bool flat_x = constant(sxx, max_x);
        const bool flat_y = constant(syy, max_y);
        if (flat_x || flat_y) {
            const Side side = flat_x && flat_y ? Side::both : (flat_x ? Side::market : Side::investment);
            throw DegenerateSampleError(side, "zero variance in paired sample");
        }

        sxx_ = sxx;
        syy_ = syy;
        sxy_ = sxy;
        sd_m_ = std::sqrt(sxx / (count - 1.0));
        sd_i_ = std::sqrt(syy / (count - 1.0));
        corr_ = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    }

    std::vector<double> market_;
    std::vector<double> investment_;
    std::vector<Date> dates_;
    double mean_m_ = 0.0, mean_i_ = 0.0;
    double sd_m_ = 0.0, sd_i_ = 0.0;
    double corr_ = 0.0;
    double sxx_ = 0.0, syy_ = 0.0, sxy_ = 0.0;
};

/// Computes the descriptive moments of a paired sample.
inline PairedSample moments(std::span<const double> market, std::span<const double> investment) {
    return PairedSample::from_pairs(market, investment);
}

}  // namespace gmfr
