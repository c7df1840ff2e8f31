#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "gmfr/error.hpp"
#include "gmfr/sample.hpp"

namespace gmfr {

enum class Estimator { ols, reverse, gmfr };

constexpr std::string_view to_string(Estimator e) noexcept {
    switch (e) {
        case Estimator::ols: return "ols";
        case Estimator::reverse: return "reverse";
        case Estimator::gmfr: return "gmfr";
    }
    return "unknown";
}

/// A fitted line y = intercept + slope * x. Every estimator here passes the
/// line through the sample centroid.
struct BetaEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    Estimator estimator = Estimator::ols;
    std::size_t n = 0;
    double corr = 0.0;

    double predict(double market_rate) const noexcept { return intercept + slope * market_rate; }
};

namespace detail {

inline BetaEstimate through_centroid(const PairedSample& s, double slope, Estimator e) {
    return BetaEstimate{slope, s.mean_i() - slope * s.mean_m(), e, s.n(), s.corr()};
}

}  // namespace detail

/// Least squares of investment on market: cov / var(market), i.e. r * sd_i / sd_m.
inline BetaEstimate ols_beta(const PairedSample& s) {
    if (s.sd_m() == 0.0) throw DegenerateSampleError(Side::market, "OLS beta needs market variance");
    return detail::through_centroid(s, s.sxy() / s.sxx(), Estimator::ols);
}

/// Least squares of market on investment, expressed as a slope in the
/// (market, investment) plane: ols / r^2.
inline BetaEstimate reverse_beta(const PairedSample& s) {
    if (s.sd_m() == 0.0) throw DegenerateSampleError(Side::market, "reverse beta needs market variance");
    if (s.sxy() == 0.0 || s.corr() == 0.0) {
        throw Error(ErrorKind::undefined_slope, "zero correlation makes the reverse regression line vertical");
    }
    return detail::through_centroid(s, s.syy() / s.sxy(), Estimator::reverse);
}

/// Geometric mean functional relationship slope: sign(r) * sd_i / sd_m.
///
/// This is the relative volatility of the investment with the sign of the
/// correlation attached. Its magnitude is the geometric mean of the OLS and
/// reverse slopes, and it equals ols / r. Exactly zero correlation leaves the
/// sign undefined and is rejected.
inline BetaEstimate beta_star(const PairedSample& s) {
    if (s.sd_m() == 0.0 || s.sd_i() == 0.0) {
        throw DegenerateSampleError(s.sd_m() == 0.0 ? Side::market : Side::investment,
                                    "beta* needs variance on both sides");
    }
    if (s.corr() == 0.0) {
        throw Error(ErrorKind::sign_undefined, "zero correlation leaves the sign of beta* undefined");
    }
    const double ratio = s.sd_i() / s.sd_m();
    return detail::through_centroid(s, s.corr() > 0.0 ? ratio : -ratio, Estimator::gmfr);
}

/// Relative volatility sd_i / sd_m, unsigned.
inline double volatility_ratio(const PairedSample& s) { return s.sd_i() / s.sd_m(); }

namespace detail {

inline void check_weight(double weight) {
    if (!(weight >= 0.0 && weight <= 1.0)) {
        throw Error(ErrorKind::domain, "shrinkage weight " + std::to_string(weight) + " outside [0, 1]");
    }
}

inline void check_ols(const BetaEstimate& fit) {
    if (fit.estimator != Estimator::ols) {
        throw Error(ErrorKind::estimator_mismatch,
                    "adjusted betas shrink the OLS beta, got " + std::string(to_string(fit.estimator)));
    }
}

}  // namespace detail

/// Shrinks the OLS beta toward one.
inline double blume_beta(const BetaEstimate& ols, double weight) {
    detail::check_ols(ols);
    detail::check_weight(weight);
    return weight * ols.slope + (1.0 - weight) * 1.0;
}

/// Shrinks the OLS beta toward a cross-sectional mean beta.
inline double vasicek_beta(const BetaEstimate& ols, double cross_section_mean, double weight) {
    detail::check_ols(ols);
    detail::check_weight(weight);
    return weight * ols.slope + (1.0 - weight) * cross_section_mean;
}

}  // namespace gmfr
