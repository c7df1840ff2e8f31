// Batch front end: prices in, beta reports out.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmfr/pipeline.hpp"
#include "gmfr/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Estimate OLS, reverse-regression and GMFR (beta*) betas from price files"};

    gmfr::AnalysisConfig cfg;
    std::vector<std::string> assets;
    std::string index;
    std::string risk_free;
    std::vector<std::string> stability;
    std::string format = "text";
    std::string plot_dir;
    bool log_returns = false;

    app.add_option("--asset", assets, "Asset price CSV (date,price); repeatable")->required()->expected(1, -1);
    app.add_option("--index", index, "Market index price CSV (date,price)")->required();
    app.add_option("--risk-free", risk_free, "Risk-free rate CSV (date,rate), one row per interval end date");
    app.add_flag("--excess", cfg.use_excess, "Analyse excess returns (requires --risk-free)");
    app.add_flag("--log-returns", log_returns, "Use log returns instead of simple returns");
    app.add_option("--level", cfg.level, "Confidence level for beta* intervals")->default_val(0.95);
    app.add_option("--stability", stability, "Two date ranges FROM:TO for the two-period stability comparison")
        ->expected(2);
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_flag("--verify", cfg.verify, "Cross-check beta* against the numeric least-areas fit");
    app.add_flag("--strict-eq10", cfg.strict_eq10,
                 "Approximate interval uses s^2 = b*(1-r^2)/(n-2) instead of b*^2");
    app.add_option("--plot", plot_dir, "Directory for SVG plots and their CSV sidecars");
    app.add_option("--rf-periods-per-year", cfg.risk_free_convention.periods_per_year,
                   "Divide risk-free rows by this to convert an annual quote to a per-period rate")
        ->default_val(1.0);

    CLI11_PARSE(app, argc, argv);

    for (const auto& a : assets) cfg.assets.emplace_back(a);
    cfg.index = index;
    if (!risk_free.empty()) cfg.risk_free = risk_free;
    cfg.basis = log_returns ? gmfr::ReturnKind::log : gmfr::ReturnKind::simple;
    if (!plot_dir.empty()) cfg.plot_dir = plot_dir;
    cfg.format = format == "csv" ? gmfr::ReportFormat::csv
                 : format == "json" ? gmfr::ReportFormat::json
                                    : gmfr::ReportFormat::text;
    if (!stability.empty()) {
        auto first = gmfr::parse_date_range(stability[0]);
        auto second = gmfr::parse_date_range(stability[1]);
        if (!first || !second) {
            std::cerr << "gmfr: --stability expects two ranges of the form YYYY-MM-DD:YYYY-MM-DD\n";
            return 1;
        }
        cfg.periods = std::pair{*first, *second};
    }

    try {
        std::cerr << "gmfr: rates=" << (cfg.use_excess ? "excess" : "plain");
        if (cfg.risk_free) std::cerr << " risk-free=" << cfg.risk_free->string();
        std::cerr << '\n';
        const auto outcome = gmfr::run(cfg);
        std::cout << gmfr::render(outcome.report, cfg.format);
        for (const auto& f : outcome.report.failures) {
            std::cerr << "gmfr: " << f.source << ": " << gmfr::to_string(f.kind) << ": " << f.message << '\n';
        }
        return outcome.exit_status;
    } catch (const gmfr::Error& e) {
        std::cerr << "gmfr: " << e.what() << '\n';
        return 1;
    }
}
