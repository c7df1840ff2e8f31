#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "gmfr/csv.hpp"
#include "gmfr/returns.hpp"
#include "gmfr/synthetic.hpp"

namespace gmfr {

/// First-of-month dates starting at `first`.
inline std::vector<Date> monthly_dates(Date first, std::size_t count) {
    std::vector<Date> out;
    out.reserve(count);
    auto ym = first.year() / first.month();
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(ym / std::chrono::day{1});
        ym += std::chrono::months{1};
    }
    return out;
}

/// Compounds simple rates into a price path: one more observation than rates.
inline PriceSeries prices_from_returns(double start_price, std::span<const Date> dates,
                                       std::span<const double> rates) {
    if (dates.size() != rates.size() + 1) throw Error(ErrorKind::alignment, "need one more date than rates");
    std::vector<PricePoint> pts;
    pts.reserve(dates.size());
    double price = start_price;
    pts.push_back({dates[0], price});
    for (std::size_t k = 0; k < rates.size(); ++k) {
        price *= 1.0 + rates[k];
        pts.push_back({dates[k + 1], price});
    }
    return PriceSeries(std::move(pts));
}

struct FixtureAsset {
    std::string id;
    double corr;
    double sd_ratio;
    double mean;
};

/// The moment-matched universe written by the fixture generator. The first
/// asset reproduces the relative-volatility example: r = 0.32, sd ratio 2.34.
inline std::vector<FixtureAsset> default_fixture_assets() {
    return {{"ATT", 0.32, 2.34, 0.012}, {"DEFENSIVE", 0.80, 0.70, 0.008}, {"HEDGE", -0.45, 1.20, 0.004}};
}

struct FixtureFiles {
    std::filesystem::path index;
    std::vector<std::filesystem::path> assets;
    std::filesystem::path zero_risk_free;
};

/// Writes index.csv, one price file per asset and riskfree_zero.csv into dir.
/// Every asset shares the index's monthly returns, so sample moments hold exactly
/// up to the rounding introduced by compounding into prices.
inline FixtureFiles write_fixture(const std::filesystem::path& dir, std::size_t months = 60,
                                  std::uint64_t seed = 20000131,
                                  const std::vector<FixtureAsset>& assets = default_fixture_assets()) {
    std::filesystem::create_directories(dir);
    std::mt19937_64 rng(seed);
    const auto dates = monthly_dates(std::chrono::year{1995} / std::chrono::January / 1, months + 1);

    std::vector<double> market;
    FixtureFiles files;
    auto write = [](const std::filesystem::path& p, auto&& body) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw Error(ErrorKind::io, "cannot write '" + p.string() + "'");
        body(out);
    };
    for (const auto& a : assets) {
        MomentTargets t;
        t.corr = a.corr;
        t.sd_ratio = a.sd_ratio;
        t.sd_m = 0.04;
        t.mean_m = 0.01;
        t.mean_i = a.mean;
        if (market.empty()) {
            auto pairs = moment_matched_pairs(months, t, rng);
            market = pairs.market;
            files.index = dir / "index.csv";
            write(files.index, [&](std::ostream& o) { write_price_csv(o, prices_from_returns(1000.0, dates, market)); });
        }
        // Reuse the market path: orthogonalise fresh noise against it.
        std::vector<double> zx = market;
        detail::standardize(zx);
        std::normal_distribution<double> normal;
        std::vector<double> ze(months);
        for (auto& v : ze) v = normal(rng);
        double dot = 0.0, norm = 0.0;
        for (std::size_t k = 0; k < months; ++k) {
            dot += ze[k] * zx[k];
            norm += zx[k] * zx[k];
        }
        for (std::size_t k = 0; k < months; ++k) ze[k] -= dot / norm * zx[k];
        detail::standardize(ze);
        const double sd_i = a.sd_ratio * t.sd_m;
        const double resid = std::sqrt(1.0 - a.corr * a.corr);
        std::vector<double> inv(months);
        for (std::size_t k = 0; k < months; ++k) inv[k] = a.mean + sd_i * (a.corr * zx[k] + resid * ze[k]);

        const auto path = dir / (a.id + ".csv");
        write(path, [&](std::ostream& o) { write_price_csv(o, prices_from_returns(50.0, dates, inv)); });
        files.assets.push_back(path);
    }
    files.zero_risk_free = dir / "riskfree_zero.csv";
    std::vector<RatePoint> zeros;
    for (const auto& d : dates) zeros.push_back({d, 0.0});
    write(files.zero_risk_free, [&](std::ostream& o) { write_rate_csv(o, zeros); });
    return files;
}

}  // namespace gmfr
