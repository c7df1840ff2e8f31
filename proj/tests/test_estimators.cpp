#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gmfr/estimators.hpp"
#include "gmfr/synthetic.hpp"

using namespace gmfr;

namespace {

// Independent oracle: solve the 2x2 normal equations from raw sums for the
// least-squares line of v on u.
struct Line {
    double slope, intercept;
};

Line normal_equations(const std::vector<double>& u, const std::vector<double>& v) {
    long double n = u.size(), su = 0, sv = 0, suu = 0, suv = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        su += u[k];
        sv += v[k];
        suu += static_cast<long double>(u[k]) * u[k];
        suv += static_cast<long double>(u[k]) * v[k];
    }
    const long double det = n * suu - su * su;
    const long double b = (n * suv - su * sv) / det;
    const long double a = (sv * suu - su * suv) / det;
    return {static_cast<double>(b), static_cast<double>(a)};
}

PairedSample random_sample(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> len(3, 200);
    std::uniform_real_distribution<double> rho(-0.99, 0.99);
    std::uniform_real_distribution<double> log_sd(-5.0, 1.0);
    std::uniform_real_distribution<double> mean(-0.05, 0.05);
    const auto n = static_cast<std::size_t>(len(rng));
    auto pairs = bivariate_normal_pairs(n, std::exp(log_sd(rng)), std::exp(log_sd(rng)), rho(rng), rng,
                                        mean(rng), mean(rng));
    return moments(pairs.market, pairs.investment);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(Moments, ExactLine) {
    const std::vector<double> x{1, 2, 3}, y{2, 4, 6};
    const auto s = moments(x, y);
    EXPECT_DOUBLE_EQ(s.sd_m(), 1.0);
    EXPECT_DOUBLE_EQ(s.sd_i(), 2.0);
    EXPECT_DOUBLE_EQ(s.corr(), 1.0);
    EXPECT_EQ(s.n(), 3u);
}

TEST(Moments, OrthogonalPatterns) {
    const std::vector<double> x{1, -1, 1, -1}, y{1, 1, -1, -1};
    EXPECT_EQ(moments(x, y).corr(), 0.0);
}

TEST(Moments, Preconditions) {
    const std::vector<double> x{0, 2}, y{1, 3};
    try {
        moments(x, y);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::insufficient_data);
    }
    const std::vector<double> flat{0.1, 0.1, 0.1}, moving{1, 2, 3};
    try {
        moments(flat, moving);
        FAIL();
    } catch (const DegenerateSampleError& e) {
        EXPECT_EQ(e.side(), Side::market);
        EXPECT_EQ(e.kind(), ErrorKind::degenerate_sample);
    }
    try {
        moments(moving, flat);
        FAIL();
    } catch (const DegenerateSampleError& e) {
        EXPECT_EQ(e.side(), Side::investment);
    }
    const std::vector<double> bad{1, NAN, 3};
    EXPECT_THROW(moments(bad, moving), Error);
}

TEST(Moments, CachedMatchRecomputation) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_sample(rng);
        long double mx = 0, my = 0;
        for (std::size_t k = 0; k < s.n(); ++k) {
            mx += s.market()[k];
            my += s.investment()[k];
        }
        mx /= s.n();
        my /= s.n();
        long double sxx = 0, syy = 0, sxy = 0;
        for (std::size_t k = 0; k < s.n(); ++k) {
            sxx += (s.market()[k] - mx) * (s.market()[k] - mx);
            syy += (s.investment()[k] - my) * (s.investment()[k] - my);
            sxy += (s.market()[k] - mx) * (s.investment()[k] - my);
        }
        const double sd_m = std::sqrt(static_cast<double>(sxx / (s.n() - 1)));
        const double sd_i = std::sqrt(static_cast<double>(syy / (s.n() - 1)));
        const double r = static_cast<double>(sxy / std::sqrt(sxx * syy));
        EXPECT_LE(rel(s.sd_m(), sd_m), 1e-12);
        EXPECT_LE(rel(s.sd_i(), sd_i), 1e-12);
        EXPECT_LE(std::abs(s.corr() - r), 1e-12);
        EXPECT_LE(std::abs(s.mean_m() - static_cast<double>(mx)), 1e-12 * std::max(1.0, s.sd_m()));
        EXPECT_GE(s.corr(), -1.0);
        EXPECT_LE(s.corr(), 1.0);
    }
}

TEST(OlsBeta, ExactLine) {
    const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
    const auto fit = ols_beta(moments(x, y));
    EXPECT_NEAR(fit.slope, 2.0, 1e-15);
    EXPECT_NEAR(fit.intercept, 1.0, 1e-15);
    EXPECT_EQ(fit.estimator, Estimator::ols);
}

TEST(OlsBeta, FourPointSampleMatchesNormalEquations) {
    const std::vector<double> x{0, 1, 2, 3}, y{1, 2, 2, 4};
    const auto oracle = normal_equations(x, y);
    const auto fit = ols_beta(moments(x, y));
    EXPECT_NEAR(oracle.slope, 0.9, 1e-15);
    EXPECT_NEAR(oracle.intercept, 0.9, 1e-15);
    EXPECT_NEAR(fit.slope, oracle.slope, 1e-14);
    EXPECT_NEAR(fit.intercept, oracle.intercept, 1e-14);
}

TEST(OlsBeta, RelativeVolatilityExample) {
    std::mt19937_64 rng(1);
    const auto p = moment_matched_pairs(60, {0.32, 2.34}, rng);
    const auto s = moments(p.market, p.investment);
    EXPECT_NEAR(s.corr(), 0.32, 1e-12);
    EXPECT_NEAR(volatility_ratio(s), 2.34, 1e-12);
    EXPECT_NEAR(ols_beta(s).slope, 0.7488, 1e-10);
}

TEST(ReverseBeta, FourPointSampleMatchesInvertedRegression) {
    const std::vector<double> x{0, 1, 2, 3}, y{1, 2, 2, 4};
    const auto x_on_y = normal_equations(y, x);
    const auto fit = reverse_beta(moments(x, y));
    EXPECT_NEAR(1.0 / x_on_y.slope, 19.0 / 18.0, 1e-14);
    EXPECT_NEAR(fit.slope, 1.0 / x_on_y.slope, 1e-14);
    EXPECT_NEAR(fit.intercept, -x_on_y.intercept / x_on_y.slope, 1e-14);
}

TEST(ReverseBeta, CorrelationPointSevenOneRoughlyDoubles) {
    std::mt19937_64 rng(2);
    const auto p = moment_matched_pairs(120, {0.71, 1.3}, rng);
    const auto s = moments(p.market, p.investment);
    const double factor = reverse_beta(s).slope / ols_beta(s).slope;
    EXPECT_NEAR(factor, 1.0 / (0.71 * 0.71), 1e-10);
    EXPECT_NEAR(factor, 2.0, 0.02);
}

TEST(ReverseBeta, PerfectLineAndZeroCorrelation) {
    const std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8};
    EXPECT_NEAR(reverse_beta(moments(x, y)).slope, 2.0, 1e-14);
    const std::vector<double> a{1, -1, 1, -1}, b{1, 1, -1, -1};
    try {
        reverse_beta(moments(a, b));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::undefined_slope);
    }
}

TEST(BetaStar, Examples) {
    const std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8}, yneg{-3, -6, -9, -12};
    EXPECT_NEAR(beta_star(moments(x, y)).slope, 2.0, 1e-14);
    EXPECT_NEAR(beta_star(moments(x, yneg)).slope, -3.0, 1e-14);

    std::mt19937_64 rng(5);
    const auto p = moment_matched_pairs(60, {0.32, 2.34}, rng);
    const auto s = moments(p.market, p.investment);
    EXPECT_NEAR(beta_star(s).slope, 2.34, 1e-12);
    EXPECT_NEAR(0.75 / 0.32, 2.34, 0.005);

    const std::vector<double> x4{0, 1, 2, 3}, y4{1, 2, 2, 4};
    const auto four = beta_star(moments(x4, y4));
    EXPECT_NEAR(four.slope, std::sqrt(0.95), 1e-14);
    EXPECT_NEAR(four.intercept, 2.25 - 1.5 * std::sqrt(0.95), 1e-14);
}

TEST(BetaStar, ZeroCorrelationSignUndefined) {
    const std::vector<double> a{1, -1, 1, -1}, b{1, 1, -1, -1};
    try {
        beta_star(moments(a, b));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::sign_undefined);
    }
}

TEST(EstimatorProperties, IdentitiesOnRandomSamples) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        const auto s = random_sample(rng);
        if (s.corr() == 0.0) continue;
        const auto ols = ols_beta(s);
        const auto rev = reverse_beta(s);
        const auto star = beta_star(s);

        // beta* = beta / r for r > 0; the sign-carrying form for any r is beta / |r|.
        EXPECT_LE(rel(star.slope, ols.slope / std::abs(s.corr())), 1e-12);
        if (s.corr() > 0) {
            EXPECT_LE(rel(star.slope, ols.slope / s.corr()), 1e-12);
        }
        EXPECT_LE(rel(std::abs(star.slope), std::sqrt(ols.slope * rev.slope)), 1e-12);
        const double tol = 1e-12 * std::abs(star.slope);
        if (s.corr() > 0) {
            EXPECT_LE(ols.slope, star.slope + tol);
            EXPECT_LE(star.slope, rev.slope + tol);
        } else {
            EXPECT_LE(rev.slope, star.slope + tol);
            EXPECT_LE(star.slope, ols.slope + tol);
        }
        if (std::abs(s.corr()) < 1.0 - 1e-9) {
            EXPECT_NE(ols.slope, star.slope);
            EXPECT_NE(star.slope, rev.slope);
        }
        for (const auto& fit : {ols, rev, star}) {
            EXPECT_LE(std::abs(fit.predict(s.mean_m()) - s.mean_i()), 1e-12 * std::max(1e-3, std::abs(s.mean_i()) + s.sd_i()));
        }
    }
}

TEST(EstimatorProperties, AxisSymmetryHoldsForBetaStarOnly) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_sample(rng);
        const auto t = s.swapped();
        EXPECT_LE(rel(beta_star(t).slope, 1.0 / beta_star(s).slope), 1e-12);
        if (std::abs(s.corr()) < 0.999) {
            EXPECT_GT(rel(ols_beta(t).slope, 1.0 / ols_beta(s).slope), 1e-6);
        }
    }
}

TEST(EstimatorProperties, ScaleAndShift) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = random_sample(rng);
        const double c = 3.5;
        std::vector<double> scaled(s.investment().begin(), s.investment().end());
        for (double& v : scaled) v *= c;
        const auto t = moments(s.market(), scaled);
        EXPECT_LE(rel(ols_beta(t).slope, c * ols_beta(s).slope), 1e-12);
        EXPECT_LE(rel(reverse_beta(t).slope, c * reverse_beta(s).slope), 1e-12);
        EXPECT_LE(rel(beta_star(t).slope, c * beta_star(s).slope), 1e-12);

        std::vector<double> shifted(s.market().begin(), s.market().end());
        for (double& v : shifted) v += 0.25;
        const auto u = moments(shifted, s.investment());
        EXPECT_LE(rel(beta_star(u).slope, beta_star(s).slope), 1e-9);
        EXPECT_LE(rel(ols_beta(u).slope, ols_beta(s).slope), 1e-9);
    }
}

TEST(AdjustedBetas, Blume) {
    BetaEstimate ols{1.5, 0.0, Estimator::ols, 60, 0.5};
    EXPECT_DOUBLE_EQ(blume_beta(ols, 1.0), 1.5);
    EXPECT_DOUBLE_EQ(blume_beta(ols, 0.0), 1.0);
    EXPECT_NEAR(blume_beta(ols, 0.6), 1.3, 1e-15);
    EXPECT_THROW(blume_beta(ols, 1.1), Error);
    EXPECT_THROW(blume_beta(ols, -0.1), Error);
    BetaEstimate star{1.5, 0.0, Estimator::gmfr, 60, 0.5};
    EXPECT_THROW(blume_beta(star, 0.5), Error);
}

TEST(AdjustedBetas, Vasicek) {
    BetaEstimate ols{1.2, 0.0, Estimator::ols, 60, 0.5};
    EXPECT_DOUBLE_EQ(vasicek_beta(ols, 1.0, 1.0), 1.2);
    EXPECT_DOUBLE_EQ(vasicek_beta(ols, 1.0, 0.0), 1.0);
    ols.slope = 0.8;
    EXPECT_NEAR(vasicek_beta(ols, 1.1, 0.5), 0.95, 1e-15);
    try {
        vasicek_beta(ols, 1.0, 2.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::domain);
    }
}
