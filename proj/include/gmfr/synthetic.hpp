#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "gmfr/error.hpp"

namespace gmfr {

struct SyntheticPairs {
    std::vector<double> market;
    std::vector<double> investment;
};

struct MomentTargets {
    double corr = 0.0;
    double sd_ratio = 1.0;  // sd_i / sd_m
    double sd_m = 0.04;
    double mean_m = 0.01;
    double mean_i = 0.01;
};

namespace detail {

inline void standardize(std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double& x : v) {
        x -= mean;
        ss += x * x;
    }
    const double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    for (double& x : v) x /= sd;
}

}  // namespace detail

/// Draws a sample whose sample moments hit the targets exactly (up to rounding).
///
/// The market draw is standardized, a second draw is made orthogonal to it and
/// standardized, and the investment series mixes the two with weights r and
/// sqrt(1 - r^2).
template <class Rng>
SyntheticPairs moment_matched_pairs(std::size_t n, const MomentTargets& t, Rng& rng) {
    if (n < 3) throw Error(ErrorKind::insufficient_data, "need at least 3 pairs");
    if (!(t.corr >= -1.0 && t.corr <= 1.0)) throw Error(ErrorKind::domain, "correlation outside [-1, 1]");
    if (!(t.sd_ratio > 0.0) || !(t.sd_m > 0.0)) throw Error(ErrorKind::domain, "spreads must be positive");

    std::normal_distribution<double> normal;
    std::vector<double> zx(n), ze(n);
    for (auto& v : zx) v = normal(rng);
    for (auto& v : ze) v = normal(rng);
    detail::standardize(zx);

    double dot = 0.0, norm = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        dot += ze[k] * zx[k];
        norm += zx[k] * zx[k];
    }
    for (std::size_t k = 0; k < n; ++k) ze[k] -= dot / norm * zx[k];
    detail::standardize(ze);

    const double sd_i = t.sd_ratio * t.sd_m;
    const double resid = std::sqrt(1.0 - t.corr * t.corr);
    SyntheticPairs out;
    out.market.resize(n);
    out.investment.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.market[k] = t.mean_m + t.sd_m * zx[k];
        out.investment[k] = t.mean_i + sd_i * (t.corr * zx[k] + resid * ze[k]);
    }
    return out;
}

/// Independent draws from a bivariate normal with the given spreads and correlation.
template <class Rng>
SyntheticPairs bivariate_normal_pairs(std::size_t n, double sd_m, double sd_i, double rho, Rng& rng,
                                      double mean_m = 0.0, double mean_i = 0.0) {
    std::normal_distribution<double> normal;
    const double resid = std::sqrt(1.0 - rho * rho);
    SyntheticPairs out;
    out.market.resize(n);
    out.investment.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double z1 = normal(rng);
        const double z2 = normal(rng);
        out.market[k] = mean_m + sd_m * z1;
        out.investment[k] = mean_i + sd_i * (rho * z1 + resid * z2);
    }
    return out;
}

}  // namespace gmfr
