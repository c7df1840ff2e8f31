#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gmfr/analytics.hpp"
#include "gmfr/pipeline.hpp"

namespace gmfr {

/// Fixed four-decimal rendering, locale independent. Negative zero prints as zero.
inline std::string fixed4(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 4);
    std::string s(buf, ptr);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

inline std::string percent4(double fraction) { return fixed4(100.0 * fraction); }

inline std::string sci3(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 3);
    return std::string(buf, ptr);
}

inline double round4(double v) {
    const double r = std::round(v * 1e4) / 1e4;
    return r == 0.0 ? 0.0 : r;
}

inline std::string_view to_string(ReturnKind k) noexcept { return k == ReturnKind::simple ? "simple" : "log"; }

inline std::string_view to_string(SlopeVarianceForm f) noexcept {
    return f == SlopeVarianceForm::squared_slope ? "squared-slope" : "printed";
}

/// Ranking table in the layout: Company, beta, beta*, beta* rank, beta rank, difference.
inline std::string rank_table_csv(const RankTable& table) {
    std::ostringstream out;
    out << "asset,beta,beta_star,beta_star_rank,beta_rank,rank_difference,tied\n";
    for (const auto& r : table.rows) {
        out << r.id << ',' << fixed4(r.beta) << ',' << fixed4(r.beta_star) << ',' << r.rank_by_beta_star << ','
            << r.rank_by_beta << ',' << r.rank_difference << ',' << (r.tied_beta || r.tied_beta_star ? 1 : 0)
            << '\n';
    }
    return out.str();
}

inline std::string rank_table_text(const RankTable& table) {
    std::size_t width = 5;
    for (const auto& r : table.rows) width = std::max(width, r.id.size());
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(width)) << "asset" << std::right << std::setw(10) << "beta"
        << std::setw(10) << "beta*" << std::setw(12) << "beta* rank" << std::setw(11) << "beta rank"
        << std::setw(12) << "difference" << '\n';
    for (const auto& r : table.rows) {
        out << std::left << std::setw(static_cast<int>(width)) << r.id << std::right << std::setw(10)
            << fixed4(r.beta) << std::setw(10) << fixed4(r.beta_star) << std::setw(12) << r.rank_by_beta_star
            << std::setw(11) << r.rank_by_beta << std::setw(12) << r.rank_difference;
        if (r.tied_beta || r.tied_beta_star) out << "  (tie)";
        out << '\n';
    }
    return out.str();
}

namespace detail {

inline void stability_text(std::ostringstream& out, const StabilityReport& st) {
    out << "Stability: " << st.first_period << " vs " << st.second_period
        << " (absolute % change relative to the first period)\n";
    for (const auto* est : {&st.ols, &st.gmfr}) {
        out << "  " << to_string(est->estimator) << ": mean " << fixed4(est->mean_pct_change) << "%\n";
        for (const auto& c : est->changes) {
            out << "    " << c.id << ' ' << fixed4(c.first) << " -> " << fixed4(c.second) << "  "
                << fixed4(c.pct_change) << "%\n";
        }
    }
}

inline std::string render_text(const Report& rep) {
    std::ostringstream out;
    const auto& md = rep.metadata;
    out << "GMFR beta report (schema " << report_schema_version << ")\n";
    out << "returns: " << to_string(md.basis) << ", confidence level: " << fixed4(md.level)
        << ", approximate-interval variance: " << to_string(md.variance_form)
        << ", risk-free periods per year: " << fixed4(md.risk_free_periods_per_year) << '\n';
    out << "units: means, standard deviations and alphas in percent per period; variances in percent^2; "
           "betas dimensionless\n";

    for (const auto& a : rep.assets) {
        out << "\n== " << a.id << " (n = " << a.n << ")\n";
        out << "  market      mean " << percent4(a.mean_m) << "%  sd " << percent4(a.sd_m) << "%\n";
        out << "  investment  mean " << percent4(a.mean_i) << "%  sd " << percent4(a.sd_i) << "%\n";
        out << "  correlation r         " << fixed4(a.corr) << '\n';
        out << "  volatility ratio      " << fixed4(a.sd_i / a.sd_m) << '\n';
        out << "  OLS beta              " << fixed4(a.ols.slope) << "  alpha " << percent4(a.ols.intercept) << "%\n";
        out << "  reverse beta          " << fixed4(a.reverse.slope) << "  alpha " << percent4(a.reverse.intercept)
            << "%\n";
        out << "  beta*                 " << fixed4(a.star.slope) << "  alpha* " << percent4(a.star.intercept)
            << "%\n";
        out << "  approximate CI        [" << fixed4(a.approx.lower) << ", " << fixed4(a.approx.upper)
            << "]  t " << fixed4(a.approx.t_critical) << '\n';
        out << "  exact CI              [" << fixed4(a.exact.lower) << ", " << fixed4(a.exact.upper) << "]  B "
            << fixed4(a.exact.B) << '\n';
        out << "  risk (OLS)            total " << fixed4(1e4 * a.risk.total_variance) << "  systematic "
            << fixed4(1e4 * a.risk.systematic) << "  unsystematic " << fixed4(1e4 * a.risk.unsystematic)
            << "  systematic share " << fixed4(a.risk.systematic_share) << '\n';
        out << "  caveat: " << a.risk.caveat << '\n';
        if (a.oracle) {
            out << "  least-areas check     slope " << fixed4(a.oracle->numeric.slope) << "  rel. delta "
                << sci3(a.oracle->slope_rel_delta) << "  intercept rel. delta "
                << sci3(a.oracle->intercept_rel_delta) << '\n';
        }
    }

    if (rep.ranks) out << "\nRanking\n" << rank_table_text(*rep.ranks);
    if (rep.stability) {
        out << '\n';
        stability_text(out, *rep.stability);
    }
    if (!rep.warnings.empty()) {
        out << "\nWarnings\n";
        for (const auto& w : rep.warnings) out << "  " << w << '\n';
    }
    if (!rep.failures.empty()) {
        out << "\nFailures\n";
        for (const auto& f : rep.failures) {
            out << "  " << f.id << " (" << f.source << "): " << to_string(f.kind) << ": " << f.message << '\n';
        }
    }
    return out.str();
}

inline std::string render_csv(const Report& rep) {
    std::ostringstream out;
    const auto& md = rep.metadata;
    out << "# metadata\nschema_version,returns,level,variance_form,risk_free_periods_per_year\n"
        << report_schema_version << ',' << to_string(md.basis) << ',' << fixed4(md.level) << ','
        << to_string(md.variance_form) << ',' << fixed4(md.risk_free_periods_per_year) << "\n\n";
    out << "# assets (rates as decimal fractions)\n"
           "asset,n,mean_m,mean_i,sd_m,sd_i,corr,volatility_ratio,ols_beta,ols_alpha,reverse_beta,reverse_alpha,"
           "beta_star,alpha_star,approx_lower,approx_upper,exact_lower,exact_upper,t_critical,B,total_variance,"
           "systematic,unsystematic,systematic_share,oracle_slope_rel_delta,oracle_intercept_rel_delta\n";
    for (const auto& a : rep.assets) {
        out << a.id << ',' << a.n;
        for (double v : {a.mean_m, a.mean_i, a.sd_m, a.sd_i, a.corr, a.sd_i / a.sd_m, a.ols.slope, a.ols.intercept,
                         a.reverse.slope, a.reverse.intercept, a.star.slope, a.star.intercept, a.approx.lower,
                         a.approx.upper, a.exact.lower, a.exact.upper, a.exact.t_critical, a.exact.B,
                         a.risk.total_variance, a.risk.systematic, a.risk.unsystematic, a.risk.systematic_share}) {
            out << ',' << fixed4(v);
        }
        if (a.oracle) {
            out << ',' << sci3(a.oracle->slope_rel_delta) << ',' << sci3(a.oracle->intercept_rel_delta);
        } else {
            out << ",,";
        }
        out << '\n';
    }
    if (rep.ranks) out << "\n# ranking\n" << rank_table_csv(*rep.ranks);
    if (rep.stability) {
        const auto& st = *rep.stability;
        out << "\n# stability " << st.first_period << " vs " << st.second_period << "\n";
        out << "estimator,asset,first,second,pct_change\n";
        for (const auto* est : {&st.ols, &st.gmfr}) {
            for (const auto& c : est->changes) {
                out << to_string(est->estimator) << ',' << c.id << ',' << fixed4(c.first) << ','
                    << fixed4(c.second) << ',' << fixed4(c.pct_change) << '\n';
            }
            out << to_string(est->estimator) << ",MEAN,,," << fixed4(est->mean_pct_change) << '\n';
        }
    }
    if (!rep.warnings.empty()) {
        out << "\n# warnings\nmessage\n";
        for (const auto& w : rep.warnings) out << '"' << w << "\"\n";
    }
    if (!rep.failures.empty()) {
        out << "\n# failures\nasset,source,kind,message\n";
        for (const auto& f : rep.failures) {
            out << f.id << ',' << f.source << ',' << to_string(f.kind) << ",\"" << f.message << "\"\n";
        }
    }
    return out.str();
}

inline nlohmann::ordered_json interval_json(const ConfidenceInterval& ci) {
    return {{"method", std::string(to_string(ci.method))},
            {"level", round4(ci.level)},
            {"lower", round4(ci.lower)},
            {"upper", round4(ci.upper)},
            {"t_critical", round4(ci.t_critical)},
            {"B", round4(ci.B)}};
}

inline std::string render_json(const Report& rep) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["schema_version"] = report_schema_version;
    const auto& md = rep.metadata;
    doc["metadata"] = {{"returns", std::string(to_string(md.basis))},
                       {"rate_unit", "decimal fraction per period"},
                       {"level", round4(md.level)},
                       {"variance_form", std::string(to_string(md.variance_form))},
                       {"risk_free_periods_per_year", round4(md.risk_free_periods_per_year)}};
    ordered_json assets = ordered_json::array();
    for (const auto& a : rep.assets) {
        ordered_json j;
        j["asset"] = a.id;
        j["n"] = a.n;
        j["mean_m"] = round4(a.mean_m);
        j["mean_i"] = round4(a.mean_i);
        j["sd_m"] = round4(a.sd_m);
        j["sd_i"] = round4(a.sd_i);
        j["corr"] = round4(a.corr);
        j["volatility_ratio"] = round4(a.sd_i / a.sd_m);
        j["ols"] = {{"beta", round4(a.ols.slope)}, {"alpha", round4(a.ols.intercept)}};
        j["reverse"] = {{"beta", round4(a.reverse.slope)}, {"alpha", round4(a.reverse.intercept)}};
        j["beta_star"] = {{"beta", round4(a.star.slope)}, {"alpha", round4(a.star.intercept)}};
        j["intervals"] = ordered_json::array({interval_json(a.approx), interval_json(a.exact)});
        j["risk"] = {{"total_variance", round4(a.risk.total_variance)},
                     {"systematic", round4(a.risk.systematic)},
                     {"unsystematic", round4(a.risk.unsystematic)},
                     {"systematic_share", round4(a.risk.systematic_share)},
                     {"caveat", a.risk.caveat}};
        if (a.oracle) {
            j["oracle"] = {{"slope", round4(a.oracle->numeric.slope)},
                           {"intercept", round4(a.oracle->numeric.intercept)},
                           {"slope_rel_delta", a.oracle->slope_rel_delta},
                           {"intercept_rel_delta", a.oracle->intercept_rel_delta}};
        }
        assets.push_back(std::move(j));
    }
    doc["assets"] = std::move(assets);
    if (rep.ranks) {
        ordered_json rows = ordered_json::array();
        for (const auto& r : rep.ranks->rows) {
            rows.push_back({{"asset", r.id},
                            {"beta", round4(r.beta)},
                            {"beta_star", round4(r.beta_star)},
                            {"beta_star_rank", r.rank_by_beta_star},
                            {"beta_rank", r.rank_by_beta},
                            {"rank_difference", r.rank_difference},
                            {"tied", r.tied_beta || r.tied_beta_star}});
        }
        doc["ranking"] = std::move(rows);
    }
    if (rep.stability) {
        const auto& st = *rep.stability;
        ordered_json s;
        s["first_period"] = st.first_period;
        s["second_period"] = st.second_period;
        for (const auto* est : {&st.ols, &st.gmfr}) {
            ordered_json changes = ordered_json::array();
            for (const auto& c : est->changes) {
                changes.push_back({{"asset", c.id},
                                   {"first", round4(c.first)},
                                   {"second", round4(c.second)},
                                   {"pct_change", round4(c.pct_change)}});
            }
            s[std::string(to_string(est->estimator))] = {{"mean_pct_change", round4(est->mean_pct_change)},
                                                         {"changes", std::move(changes)}};
        }
        doc["stability"] = std::move(s);
    }
    doc["warnings"] = rep.warnings;
    ordered_json failures = ordered_json::array();
    for (const auto& f : rep.failures) {
        failures.push_back(
            {{"asset", f.id}, {"source", f.source}, {"kind", std::string(to_string(f.kind))}, {"message", f.message}});
    }
    doc["failures"] = std::move(failures);
    return doc.dump(2) + "\n";
}

}  // namespace detail

inline std::string render(const Report& rep, ReportFormat format) {
    switch (format) {
        case ReportFormat::text: return detail::render_text(rep);
        case ReportFormat::csv: return detail::render_csv(rep);
        case ReportFormat::json: return detail::render_json(rep);
    }
    return {};
}

}  // namespace gmfr
