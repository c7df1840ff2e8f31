#include <gtest/gtest.h>

#include <random>

#include "gmfr/risk.hpp"
#include "gmfr/synthetic.hpp"

using namespace gmfr;

TEST(Decompose, PerfectLine) {
    const std::vector<double> x{0.01, -0.02, 0.03, 0.00}, y{0.02, -0.04, 0.06, 0.0};
    const auto s = moments(x, y);
    const auto d = decompose(s, ols_beta(s));
    EXPECT_NEAR(d.unsystematic, 0.0, 1e-18);
    EXPECT_NEAR(d.systematic_share, 1.0, 1e-12);
    EXPECT_FALSE(d.caveat.empty());
}

TEST(Decompose, ZeroCorrelation) {
    const std::vector<double> x{1, -1, 1, -1}, y{1, 1, -1, -1};
    const auto s = moments(x, y);
    const auto d = decompose(s, ols_beta(s));
    EXPECT_EQ(d.systematic, 0.0);
    EXPECT_DOUBLE_EQ(d.unsystematic, d.total_variance);
}

TEST(Decompose, FourPointShareIsRSquared) {
    const std::vector<double> x{0, 1, 2, 3}, y{1, 2, 2, 4};
    const auto s = moments(x, y);
    // r^2 from raw sums: Sxy^2 / (Sxx Syy) = 4.5^2 / (5 * 4.75).
    const double r2 = 4.5 * 4.5 / (5.0 * 4.75);
    EXPECT_NEAR(r2, 81.0 / 95.0, 1e-15);
    EXPECT_NEAR(decompose(s, ols_beta(s)).systematic_share, r2, 1e-14);
}

TEST(Decompose, RejectsNonOlsFits) {
    const std::vector<double> x{0, 1, 2, 3}, y{1, 2, 2, 4};
    const auto s = moments(x, y);
    for (const auto& fit : {beta_star(s), reverse_beta(s)}) {
        try {
            decompose(s, fit);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::estimator_mismatch);
        }
    }
}

TEST(Decompose, AdditivityAndRescalingInvariance) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> rho(-0.95, 0.95);
    std::uniform_int_distribution<int> n(3, 300);
    for (int trial = 0; trial < 300; ++trial) {
        const auto p = bivariate_normal_pairs(static_cast<std::size_t>(n(rng)), 0.04, 0.07, rho(rng), rng, 0.01, 0.0);
        const auto s = moments(p.market, p.investment);
        const auto d = decompose(s, ols_beta(s));
        EXPECT_NEAR(d.systematic + d.unsystematic, d.total_variance, 1e-10 * d.total_variance);
        EXPECT_NEAR(d.systematic_share, s.corr() * s.corr(), 1e-10);
        EXPECT_GE(d.unsystematic, 0.0);

        std::vector<double> xs(p.market), ys(p.investment);
        for (double& v : xs) v = 3.0 * v - 0.5;
        for (double& v : ys) v = 0.2 * v + 1.0;
        const auto t = moments(xs, ys);
        EXPECT_NEAR(decompose(t, ols_beta(t)).systematic_share, d.systematic_share, 1e-10);
    }
}
