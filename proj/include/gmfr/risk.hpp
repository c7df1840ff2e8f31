#pragma once

#include <string>
#include <string_view>

#include "gmfr/error.hpp"
#include "gmfr/estimators.hpp"
#include "gmfr/sample.hpp"

namespace gmfr {

/// Caveat attached to every decomposition: the split assumes a constant beta.
inline constexpr std::string_view risk_decomposition_caveat =
    "Systematic/unsystematic split assumes beta is constant over the sample; betas drift over time, "
    "so the split is conditional on that assumption. It holds as an identity only for the OLS fit.";

/// var(Ri) = beta^2 var(Rm) + var(e) for an OLS fit.
struct RiskDecomposition {
    double total_variance = 0.0;
    double systematic = 0.0;
    double unsystematic = 0.0;
    double systematic_share = 0.0;
    std::string caveat{risk_decomposition_caveat};
};

/// Splits investment variance into the market-driven part and the residual
/// variance of the fitted line. Residual variance is measured from the actual
/// residuals with the same n-1 divisor as the moments.
inline RiskDecomposition decompose(const PairedSample& s, const BetaEstimate& fit) {
    if (fit.estimator != Estimator::ols) {
        throw Error(ErrorKind::estimator_mismatch, "variance decomposition is an identity only for OLS, got " +
                                                       std::string(to_string(fit.estimator)));
    }
    const auto xs = s.market();
    const auto ys = s.investment();
    const auto n = s.n();

    double mean_e = 0.0;
    for (std::size_t k = 0; k < n; ++k) mean_e += ys[k] - fit.predict(xs[k]);
    mean_e /= static_cast<double>(n);
    double ss_e = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double e = ys[k] - fit.predict(xs[k]) - mean_e;
        ss_e += e * e;
    }

    RiskDecomposition out;
    out.total_variance = s.sd_i() * s.sd_i();
    out.systematic = fit.slope * fit.slope * s.sd_m() * s.sd_m();
    out.unsystematic = ss_e / static_cast<double>(n - 1);
    out.systematic_share = out.systematic / out.total_variance;
    return out;
}

}  // namespace gmfr
