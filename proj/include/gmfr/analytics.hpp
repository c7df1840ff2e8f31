#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "gmfr/error.hpp"
#include "gmfr/estimators.hpp"

namespace gmfr {

/// Standard and GMFR beta for one asset.
struct AssetBetas {
    std::string id;
    double beta = 0.0;
    double beta_star = 0.0;
};

struct RankRow {
    std::string id;
    double beta = 0.0;
    double beta_star = 0.0;
    int rank_by_beta_star = 0;
    int rank_by_beta = 0;
    /// rank_by_beta - rank_by_beta_star; positive when beta* ranks the asset riskier.
    int rank_difference = 0;
    bool tied_beta = false;
    bool tied_beta_star = false;
};

/// Rows ordered by beta* rank. Rank 1 is the largest value in each column;
/// equal values are ordered by asset id and flagged as tied.
struct RankTable {
    std::vector<RankRow> rows;
};

namespace detail {

template <class Key>
std::vector<int> descending_ranks(std::span<const AssetBetas> assets, Key key, std::vector<bool>& tied) {
    std::vector<std::size_t> order(assets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        const double vl = key(assets[l]);
        const double vr = key(assets[r]);
        if (vl != vr) return vl > vr;
        return assets[l].id < assets[r].id;
    });
    std::vector<int> rank(assets.size());
    tied.assign(assets.size(), false);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        rank[order[pos]] = static_cast<int>(pos) + 1;
        if (pos > 0 && key(assets[order[pos]]) == key(assets[order[pos - 1]])) {
            tied[order[pos]] = true;
            tied[order[pos - 1]] = true;
        }
    }
    return rank;
}

}  // namespace detail

inline RankTable rank_assets(std::span<const AssetBetas> assets) {
    if (assets.empty()) throw Error(ErrorKind::input, "nothing to rank");
    std::set<std::string> seen;
    for (const auto& a : assets) {
        if (!std::isfinite(a.beta) || !std::isfinite(a.beta_star)) {
            throw Error(ErrorKind::domain, "non-finite beta for asset '" + a.id + "'");
        }
        if (!seen.insert(a.id).second) throw Error(ErrorKind::input, "duplicate asset id '" + a.id + "'");
    }

    std::vector<bool> tied_star, tied_beta;
    const auto star_rank = detail::descending_ranks(assets, [](const AssetBetas& a) { return a.beta_star; }, tied_star);
    const auto beta_rank = detail::descending_ranks(assets, [](const AssetBetas& a) { return a.beta; }, tied_beta);

    RankTable table;
    table.rows.reserve(assets.size());
    for (std::size_t k = 0; k < assets.size(); ++k) {
        table.rows.push_back({assets[k].id, assets[k].beta, assets[k].beta_star, star_rank[k], beta_rank[k],
                              beta_rank[k] - star_rank[k], tied_beta[k], tied_star[k]});
    }
    std::sort(table.rows.begin(), table.rows.end(),
              [](const RankRow& l, const RankRow& r) { return l.rank_by_beta_star < r.rank_by_beta_star; });
    return table;
}

struct AssetChange {
    std::string id;
    double first = 0.0;
    double second = 0.0;
    double pct_change = 0.0;  // 100 |second - first| / |first|
};

/// Per-asset absolute percentage changes for one estimator. Changes are
/// measured relative to the first period, so swapping periods changes values.
struct EstimatorStability {
    Estimator estimator = Estimator::ols;
    std::vector<AssetChange> changes;  // ordered by asset id
    double mean_pct_change = 0.0;
    std::vector<std::string> warnings;  // assets excluded for a zero first-period estimate
};

struct StabilityReport {
    std::string first_period;
    std::string second_period;
    EstimatorStability ols;
    EstimatorStability gmfr;
};

inline double absolute_pct_change(double first, double second) {
    if (first == 0.0) throw Error(ErrorKind::domain, "percentage change relative to zero");
    return 100.0 * std::abs(second - first) / std::abs(first);
}

struct IdValue {
    std::string id;
    double value = 0.0;
};

inline EstimatorStability stability_of(Estimator estimator, std::span<const IdValue> first,
                                       std::span<const IdValue> second) {
    std::map<std::string, double> a, b;
    for (const auto& e : first) {
        if (!a.emplace(e.id, e.value).second) throw Error(ErrorKind::input, "duplicate asset id '" + e.id + "'");
    }
    for (const auto& e : second) {
        if (!b.emplace(e.id, e.value).second) throw Error(ErrorKind::input, "duplicate asset id '" + e.id + "'");
    }
    if (a.size() != b.size() ||
        !std::equal(a.begin(), a.end(), b.begin(), [](const auto& l, const auto& r) { return l.first == r.first; })) {
        throw Error(ErrorKind::alignment, "the two periods cover different asset sets");
    }

    EstimatorStability out;
    out.estimator = estimator;
    for (const auto& [id, v1] : a) {
        const double v2 = b.at(id);
        if (v1 == 0.0) {
            out.warnings.push_back("asset '" + id + "' excluded: zero " + std::string(to_string(estimator)) +
                                   " estimate in first period");
            continue;
        }
        out.changes.push_back({id, v1, v2, absolute_pct_change(v1, v2)});
    }
    if (!out.changes.empty()) {
        double sum = 0.0;
        for (const auto& c : out.changes) sum += c.pct_change;
        out.mean_pct_change = sum / static_cast<double>(out.changes.size());
    }
    return out;
}

/// Two-period stability of the OLS beta and beta* over the same asset set.
inline StabilityReport stability(std::span<const AssetBetas> first, std::span<const AssetBetas> second,
                                 std::string first_label = "period 1", std::string second_label = "period 2") {
    auto project = [](std::span<const AssetBetas> src, auto member) {
        std::vector<IdValue> out;
        out.reserve(src.size());
        for (const auto& a : src) out.push_back({a.id, a.*member});
        return out;
    };
    StabilityReport report;
    report.first_period = std::move(first_label);
    report.second_period = std::move(second_label);
    report.ols = stability_of(Estimator::ols, project(first, &AssetBetas::beta), project(second, &AssetBetas::beta));
    report.gmfr = stability_of(Estimator::gmfr, project(first, &AssetBetas::beta_star),
                               project(second, &AssetBetas::beta_star));
    return report;
}

}  // namespace gmfr
