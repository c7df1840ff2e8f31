#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmfr/analytics.hpp"
#include "gmfr/csv.hpp"
#include "gmfr/date.hpp"
#include "gmfr/error.hpp"
#include "gmfr/estimators.hpp"
#include "gmfr/inference.hpp"
#include "gmfr/oracle.hpp"
#include "gmfr/plot.hpp"
#include "gmfr/returns.hpp"
#include "gmfr/risk.hpp"

namespace gmfr {

enum class ReportFormat { text, csv, json };

struct DateRange {
    Date from;
    Date to;

    std::string label() const { return format_date(from) + ":" + format_date(to); }
};

/// Parses "YYYY-MM-DD:YYYY-MM-DD".
inline std::optional<DateRange> parse_date_range(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto from = parse_date(text.substr(0, colon));
    auto to = parse_date(text.substr(colon + 1));
    if (!from || !to || !(*from < *to)) return std::nullopt;
    return DateRange{*from, *to};
}

struct AnalysisConfig {
    std::vector<std::filesystem::path> assets;
    std::filesystem::path index;
    std::optional<std::filesystem::path> risk_free;
    bool use_excess = false;
    ReturnKind basis = ReturnKind::simple;
    double level = 0.95;
    std::optional<std::pair<DateRange, DateRange>> periods;
    ReportFormat format = ReportFormat::text;
    bool verify = false;
    bool strict_eq10 = false;
    std::optional<std::filesystem::path> plot_dir;
    RiskFreeConvention risk_free_convention;

    void validate() const {
        if (assets.empty()) throw Error(ErrorKind::input, "no asset files given");
        if (!(level > 0.0 && level < 1.0)) {
            throw Error(ErrorKind::domain, "confidence level " + std::to_string(level) + " outside (0, 1)");
        }
        if (use_excess && !risk_free) throw Error(ErrorKind::input, "excess returns need a risk-free file");
        if (!(risk_free_convention.periods_per_year > 0.0)) {
            throw Error(ErrorKind::domain, "periods per year must be positive");
        }
        if (periods) {
            const auto& [a, b] = *periods;
            if (!(a.from < a.to) || !(b.from < b.to)) throw Error(ErrorKind::input, "empty stability period");
            if (a.from < b.to && b.from < a.to) throw Error(ErrorKind::input, "stability periods overlap");
        }
    }
};

struct OracleSummary {
    LineCandidate numeric;
    double slope_rel_delta = 0.0;
    double intercept_rel_delta = 0.0;
};

struct AssetResult {
    std::string id;
    std::size_t n = 0;
    double mean_m = 0.0, mean_i = 0.0;
    double sd_m = 0.0, sd_i = 0.0;
    double corr = 0.0;
    BetaEstimate ols;
    BetaEstimate reverse;
    BetaEstimate star;
    ConfidenceInterval approx;
    ConfidenceInterval exact;
    RiskDecomposition risk;
    std::optional<OracleSummary> oracle;
};

struct AssetFailure {
    std::string id;
    std::string source;
    ErrorKind kind = ErrorKind::input;
    std::string message;
};

struct ReportMetadata {
    ReturnKind basis = ReturnKind::simple;
    double level = 0.95;
    SlopeVarianceForm variance_form = SlopeVarianceForm::squared_slope;
    double risk_free_periods_per_year = 1.0;
};

inline constexpr int report_schema_version = 1;

struct Report {
    ReportMetadata metadata;
    std::vector<AssetResult> assets;  // ordered by id
    std::vector<AssetFailure> failures;
    std::optional<RankTable> ranks;
    std::optional<StabilityReport> stability;
    std::vector<std::string> warnings;
};

struct RunOutcome {
    Report report;
    int exit_status = 0;  // 0 success, 1 total failure, 2 partial failure
};

/// Asset ids are file stems.
inline std::string asset_id(const std::filesystem::path& p) { return p.stem().string(); }

namespace detail {

struct PreparedInputs {
    ReturnSeries index;
    std::optional<std::vector<RatePoint>> risk_free;
};

inline ReturnSeries to_analysis_rates(const ReturnSeries& plain, const PreparedInputs& in,
                                      const AnalysisConfig& cfg) {
    if (!cfg.use_excess) return plain;
    const auto covered = covered_by(plain, *in.risk_free);
    return excess_returns(covered, risk_free_for(covered, *in.risk_free, cfg.risk_free_convention));
}

inline AssetResult analyse_sample(const std::string& id, const PairedSample& s, const AnalysisConfig& cfg) {
    AssetResult r;
    r.id = id;
    r.n = s.n();
    r.mean_m = s.mean_m();
    r.mean_i = s.mean_i();
    r.sd_m = s.sd_m();
    r.sd_i = s.sd_i();
    r.corr = s.corr();
    r.ols = ols_beta(s);
    r.reverse = reverse_beta(s);
    r.star = beta_star(s);
    const auto form = cfg.strict_eq10 ? SlopeVarianceForm::printed : SlopeVarianceForm::squared_slope;
    r.approx = approx_ci(s, r.star, cfg.level, form);
    r.exact = exact_ci(s, r.star, cfg.level);
    r.risk = decompose(s, r.ols);
    if (cfg.verify) {
        const auto check = verify_beta_star(s);
        r.oracle = OracleSummary{check.numeric, check.slope_rel_delta, check.intercept_rel_delta};
    }
    return r;
}

}  // namespace detail

/// Runs the full estimator suite over every asset against the index.
///
/// Per-asset failures are collected rather than aborting the run. The exit
/// status is 1 only when no asset succeeds.
inline RunOutcome run(const AnalysisConfig& cfg) {
    cfg.validate();
    RunOutcome out;
    Report& report = out.report;
    report.metadata.basis = cfg.basis;
    report.metadata.level = cfg.level;
    report.metadata.variance_form = cfg.strict_eq10 ? SlopeVarianceForm::printed : SlopeVarianceForm::squared_slope;
    report.metadata.risk_free_periods_per_year = cfg.risk_free_convention.periods_per_year;

    std::vector<std::pair<std::string, std::filesystem::path>> assets;
    for (const auto& p : cfg.assets) assets.emplace_back(asset_id(p), p);
    std::stable_sort(assets.begin(), assets.end(), [](const auto& l, const auto& r) { return l.first < r.first; });

    auto fail_all = [&](const Error& e, const std::string& prefix) {
        for (const auto& [id, path] : assets) {
            report.failures.push_back({id, path.string(), e.kind(), prefix + e.detail()});
        }
        out.exit_status = 1;
        return out;
    };

    detail::PreparedInputs inputs;
    try {
        inputs.index = returns_from_prices(read_price_csv(cfg.index), cfg.basis);
        if (cfg.use_excess) inputs.risk_free = read_rate_csv(*cfg.risk_free);
        inputs.index = detail::to_analysis_rates(inputs.index, inputs, cfg);
    } catch (const Error& e) {
        return fail_all(e, "index/risk-free input: ");
    }

    std::map<std::string, int> seen;
    for (const auto& [id, path] : assets) ++seen[id];

    std::vector<AssetBetas> whole, first, second;
    for (const auto& [id, path] : assets) {
        if (seen[id] > 1) {
            report.failures.push_back({id, path.string(), ErrorKind::input, "duplicate asset id '" + id + "'"});
            continue;
        }
        try {
            const auto rates = detail::to_analysis_rates(returns_from_prices(read_price_csv(path), cfg.basis),
                                                         inputs, cfg);
            const auto sample = align(inputs.index, rates);
            auto result = detail::analyse_sample(id, sample, cfg);

            if (cfg.plot_dir) {
                const std::vector<BetaEstimate> fits{result.ols, result.reverse, result.star};
                try {
                    emit_plot_data(sample, fits, *cfg.plot_dir, id);
                } catch (const Error& e) {
                    report.warnings.push_back("plot for '" + id + "': " + e.detail());
                }
            }
            if (cfg.periods) {
                try {
                    const auto& [p1, p2] = *cfg.periods;
                    const auto s1 = align(inputs.index.within(p1.from, p1.to), rates.within(p1.from, p1.to));
                    const auto s2 = align(inputs.index.within(p2.from, p2.to), rates.within(p2.from, p2.to));
                    first.push_back({id, ols_beta(s1).slope, beta_star(s1).slope});
                    second.push_back({id, ols_beta(s2).slope, beta_star(s2).slope});
                } catch (const Error& e) {
                    report.warnings.push_back("stability for '" + id + "' skipped: " + std::string(e.what()));
                }
            }
            whole.push_back({id, result.ols.slope, result.star.slope});
            report.assets.push_back(std::move(result));
        } catch (const Error& e) {
            report.failures.push_back({id, path.string(), e.kind(), e.detail()});
        }
    }

    if (!whole.empty()) report.ranks = rank_assets(whole);
    if (cfg.periods && !first.empty()) {
        const auto& [p1, p2] = *cfg.periods;
        report.stability = stability(first, second, p1.label(), p2.label());
        for (const auto* est : {&report.stability->ols, &report.stability->gmfr}) {
            report.warnings.insert(report.warnings.end(), est->warnings.begin(), est->warnings.end());
        }
    }

    if (report.assets.empty()) {
        out.exit_status = 1;
    } else if (!report.failures.empty()) {
        out.exit_status = 2;
    }
    return out;
}

}  // namespace gmfr
