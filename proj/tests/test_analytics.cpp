#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "gmfr/analytics.hpp"
#include "gmfr/report.hpp"
#include "table1.hpp"

using namespace gmfr;

TEST(RankAssets, ReproducesDowTable) {
    const auto table = rank_assets(testdata::dow_inputs());
    std::map<std::string, RankRow> by_id;
    for (const auto& r : table.rows) by_id[r.id] = r;
    for (const auto& p : testdata::dow_table()) {
        const auto& r = by_id.at(p.id);
        EXPECT_EQ(r.rank_by_beta_star, p.star_rank) << p.id;
        EXPECT_EQ(r.rank_by_beta, p.beta_rank) << p.id;
        EXPECT_EQ(r.rank_difference, p.difference) << p.id;
    }
    EXPECT_EQ(table.rows.front().id, "INTC");
    EXPECT_TRUE(by_id.at("T").tied_beta_star);
    EXPECT_TRUE(by_id.at("C").tied_beta_star);
    EXPECT_TRUE(by_id.at("JPM").tied_beta);
    EXPECT_FALSE(by_id.at("INTC").tied_beta || by_id.at("INTC").tied_beta_star);
}

TEST(RankAssets, RanksArePermutations) {
    const auto table = rank_assets(testdata::dow_inputs());
    std::vector<int> a, b;
    for (const auto& r : table.rows) {
        a.push_back(r.rank_by_beta_star);
        b.push_back(r.rank_by_beta);
    }
    std::sort(b.begin(), b.end());
    for (int k = 0; k < 30; ++k) {
        EXPECT_EQ(a[k], k + 1);
        EXPECT_EQ(b[k], k + 1);
    }
}

TEST(RankAssets, InvariantUnderRowPermutationAndScaling) {
    const auto reference = rank_assets(testdata::dow_inputs());
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        auto rows = testdata::dow_inputs();
        std::shuffle(rows.begin(), rows.end(), rng);
        const auto shuffled = rank_assets(rows);
        ASSERT_EQ(shuffled.rows.size(), reference.rows.size());
        for (std::size_t k = 0; k < rows.size(); ++k) {
            EXPECT_EQ(shuffled.rows[k].id, reference.rows[k].id);
            EXPECT_EQ(shuffled.rows[k].rank_by_beta, reference.rows[k].rank_by_beta);
        }
    }
    auto rows = testdata::dow_inputs();
    for (auto& r : rows) r.beta_star *= 1.7;
    const auto scaled = rank_assets(rows);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        EXPECT_EQ(scaled.rows[k].id, reference.rows[k].id);
        EXPECT_EQ(scaled.rows[k].rank_by_beta_star, reference.rows[k].rank_by_beta_star);
    }
}

TEST(RankAssets, SingleAssetAndErrors) {
    const std::vector<AssetBetas> one{{"X", 0.9, 1.4}};
    const auto t = rank_assets(one);
    EXPECT_EQ(t.rows[0].rank_by_beta, 1);
    EXPECT_EQ(t.rows[0].rank_by_beta_star, 1);
    EXPECT_EQ(t.rows[0].rank_difference, 0);

    const std::vector<AssetBetas> dup{{"X", 0.9, 1.4}, {"X", 1.0, 1.1}};
    try {
        rank_assets(dup);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::input);
    }
    EXPECT_THROW(rank_assets(std::vector<AssetBetas>{}), Error);
    EXPECT_THROW(rank_assets(std::vector<AssetBetas>{{"X", NAN, 1.0}}), Error);
}

TEST(RankAssets, RendersTableLayouts) {
    const auto table = rank_assets(testdata::dow_inputs());
    const auto csv = rank_table_csv(table);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "asset,beta,beta_star,beta_star_rank,beta_rank,rank_difference,tied");
    EXPECT_NE(csv.find("\nINTC,1.0800,2.7800,1,12,11,0\n"), std::string::npos);
    EXPECT_NE(csv.find("\nT,0.7500,2.3700,6,26,20,1\n"), std::string::npos);
    const auto text = rank_table_text(table);
    EXPECT_NE(text.find("GE"), std::string::npos);
    EXPECT_NE(text.find("(tie)"), std::string::npos);
}

TEST(Stability, Arithmetic) {
    EXPECT_NEAR(absolute_pct_change(1.0, 1.23), 23.0, 1e-12);
    EXPECT_NEAR(absolute_pct_change(-2.0, -1.0), 50.0, 1e-12);
    EXPECT_THROW(absolute_pct_change(0.0, 1.0), Error);

    const std::vector<IdValue> p1{{"A", 1.0}, {"B", 2.0}}, p2{{"A", 1.1}, {"B", 1.4}};
    const auto st = stability_of(Estimator::ols, p1, p2);
    ASSERT_EQ(st.changes.size(), 2u);
    EXPECT_NEAR(st.changes[0].pct_change, 10.0, 1e-12);
    EXPECT_NEAR(st.changes[1].pct_change, 30.0, 1e-12);
    EXPECT_NEAR(st.mean_pct_change, 20.0, 1e-12);
}

TEST(Stability, IdenticalPeriodsAndDirection) {
    const auto rows = testdata::dow_inputs();
    const auto same = stability(rows, rows);
    EXPECT_EQ(same.ols.mean_pct_change, 0.0);
    EXPECT_EQ(same.gmfr.mean_pct_change, 0.0);

    const std::vector<IdValue> p1{{"A", 1.0}}, p2{{"A", 2.0}};
    EXPECT_NEAR(stability_of(Estimator::gmfr, p1, p2).mean_pct_change, 100.0, 1e-12);
    EXPECT_NEAR(stability_of(Estimator::gmfr, p2, p1).mean_pct_change, 50.0, 1e-12);
}

TEST(Stability, MeanIsArithmeticMeanOfChanges) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> beta(0.2, 2.5);
    std::vector<AssetBetas> a, b;
    for (int k = 0; k < 25; ++k) {
        const std::string id = "S" + std::to_string(k);
        a.push_back({id, beta(rng), beta(rng)});
        b.push_back({id, beta(rng), beta(rng)});
    }
    const auto st = stability(a, b);
    for (const auto* est : {&st.ols, &st.gmfr}) {
        double sum = 0.0;
        for (const auto& c : est->changes) {
            EXPECT_GE(c.pct_change, 0.0);
            sum += c.pct_change;
        }
        EXPECT_NEAR(est->mean_pct_change, sum / 25.0, 1e-12);
    }
}

TEST(Stability, MismatchedAssetsAndZeroFirstPeriod) {
    const std::vector<IdValue> p1{{"A", 1.0}, {"B", 2.0}}, p2{{"A", 1.1}, {"C", 1.4}};
    try {
        stability_of(Estimator::ols, p1, p2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::alignment);
    }
    const std::vector<IdValue> z1{{"A", 0.0}, {"B", 2.0}}, z2{{"A", 1.1}, {"B", 3.0}};
    const auto st = stability_of(Estimator::ols, z1, z2);
    ASSERT_EQ(st.changes.size(), 1u);
    EXPECT_EQ(st.warnings.size(), 1u);
    EXPECT_NEAR(st.mean_pct_change, 50.0, 1e-12);
}
