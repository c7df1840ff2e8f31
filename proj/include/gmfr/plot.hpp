#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "gmfr/csv.hpp"
#include "gmfr/date.hpp"
#include "gmfr/error.hpp"
#include "gmfr/estimators.hpp"
#include "gmfr/sample.hpp"

namespace gmfr {

namespace detail {

inline std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Frame {
    double width = 640.0, height = 480.0, margin = 48.0;
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

    double sx(double x) const { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); }
    double sy(double y) const { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); }
};

inline void pad_range(double& lo, double& hi) {
    const double span = hi - lo;
    const double pad = span > 0.0 ? 0.05 * span : 1.0;
    lo -= pad;
    hi += pad;
}

inline const char* line_colour(Estimator e) {
    switch (e) {
        case Estimator::ols: return "#1f77b4";
        case Estimator::reverse: return "#2ca02c";
        case Estimator::gmfr: return "#d62728";
    }
    return "#000000";
}

inline void write_text_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::io, "cannot write '" + path.string() + "'");
    out << body;
    if (!out) throw Error(ErrorKind::io, "write failed for '" + path.string() + "'");
}

}  // namespace detail

/// Scatter of investment against market returns with one <line> per fit and
/// the triangle each point makes with the beta* line (when present).
inline std::string scatter_svg(const PairedSample& s, std::span<const BetaEstimate> fits) {
    if (fits.empty()) throw Error(ErrorKind::input, "scatter plot needs at least one fit");
    const auto xs = s.market();
    const auto ys = s.investment();
    detail::Frame f;
    f.x0 = *std::min_element(xs.begin(), xs.end());
    f.x1 = *std::max_element(xs.begin(), xs.end());
    f.y0 = *std::min_element(ys.begin(), ys.end());
    f.y1 = *std::max_element(ys.begin(), ys.end());
    detail::pad_range(f.x0, f.x1);
    detail::pad_range(f.y0, f.y1);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
    svg << "<defs><clipPath id=\"plot\"><rect x=\"48\" y=\"48\" width=\"544\" height=\"384\"/></clipPath></defs>\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
    svg << "<path d=\"M48 48 V432 H592\" stroke=\"black\" fill=\"none\"/>\n";
    svg << "<text x=\"320\" y=\"470\" text-anchor=\"middle\" font-size=\"12\">market return</text>\n";
    svg << "<text x=\"14\" y=\"240\" font-size=\"12\" transform=\"rotate(-90 14 240)\">investment return</text>\n";

    const BetaEstimate* star = nullptr;
    for (const auto& fit : fits) {
        if (fit.estimator == Estimator::gmfr) star = &fit;
    }
    svg << "<g clip-path=\"url(#plot)\">\n";
    if (star != nullptr && star->slope != 0.0) {
        for (std::size_t k = 0; k < s.n(); ++k) {
            const double on_line_y = star->predict(xs[k]);
            const double on_line_x = (ys[k] - star->intercept) / star->slope;
            svg << "<polygon points=\"" << detail::px(f.sx(xs[k])) << ',' << detail::px(f.sy(ys[k])) << ' '
                << detail::px(f.sx(xs[k])) << ',' << detail::px(f.sy(on_line_y)) << ' '
                << detail::px(f.sx(on_line_x)) << ',' << detail::px(f.sy(ys[k]))
                << "\" fill=\"#d62728\" fill-opacity=\"0.12\" stroke=\"none\"/>\n";
        }
    }
    for (const auto& fit : fits) {
        svg << "<line x1=\"" << detail::px(f.sx(f.x0)) << "\" y1=\"" << detail::px(f.sy(fit.predict(f.x0)))
            << "\" x2=\"" << detail::px(f.sx(f.x1)) << "\" y2=\"" << detail::px(f.sy(fit.predict(f.x1)))
            << "\" stroke=\"" << detail::line_colour(fit.estimator) << "\" stroke-width=\"1.5\" data-fit=\""
            << to_string(fit.estimator) << "\"/>\n";
    }
    for (std::size_t k = 0; k < s.n(); ++k) {
        svg << "<circle cx=\"" << detail::px(f.sx(xs[k])) << "\" cy=\"" << detail::px(f.sy(ys[k]))
            << "\" r=\"3\" fill=\"black\"/>\n";
    }
    svg << "</g>\n";
    double legend_y = 20.0;
    for (const auto& fit : fits) {
        svg << "<text x=\"60\" y=\"" << detail::px(legend_y) << "\" font-size=\"11\" fill=\""
            << detail::line_colour(fit.estimator) << "\">" << to_string(fit.estimator)
            << " slope " << round_trip(fit.slope) << "</text>\n";
        legend_y += 12.0;
    }
    svg << "</svg>\n";
    return svg.str();
}

inline std::string scatter_csv(const PairedSample& s, std::span<const BetaEstimate> fits) {
    std::ostringstream csv;
    csv << "market,investment";
    for (const auto& fit : fits) csv << ',' << to_string(fit.estimator) << "_fitted";
    csv << '\n';
    for (std::size_t k = 0; k < s.n(); ++k) {
        csv << round_trip(s.market()[k]) << ',' << round_trip(s.investment()[k]);
        for (const auto& fit : fits) csv << ',' << round_trip(fit.predict(s.market()[k]));
        csv << '\n';
    }
    return csv.str();
}

/// Both return series over time: the index dashed, the investment solid.
inline std::string timeseries_svg(const PairedSample& s) {
    const auto xs = s.market();
    const auto ys = s.investment();
    detail::Frame f;
    f.x0 = 0.0;
    f.x1 = static_cast<double>(s.n() - 1);
    f.y0 = std::min(*std::min_element(xs.begin(), xs.end()), *std::min_element(ys.begin(), ys.end()));
    f.y1 = std::max(*std::max_element(xs.begin(), xs.end()), *std::max_element(ys.begin(), ys.end()));
    detail::pad_range(f.y0, f.y1);

    auto polyline = [&](std::span<const double> v, const char* extra) {
        std::ostringstream p;
        p << "<polyline points=\"";
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k > 0) p << ' ';
            p << detail::px(f.sx(static_cast<double>(k))) << ',' << detail::px(f.sy(v[k]));
        }
        p << "\" fill=\"none\" stroke=\"black\"" << extra << "/>\n";
        return p.str();
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
    svg << "<path d=\"M48 48 V432 H592\" stroke=\"black\" fill=\"none\"/>\n";
    svg << "<path d=\"M48 " << detail::px(f.sy(0.0)) << " H592\" stroke=\"#999999\" fill=\"none\"/>\n";
    svg << polyline(xs, " stroke-dasharray=\"6 4\" data-series=\"index\"");
    svg << polyline(ys, " stroke-width=\"1.5\" data-series=\"investment\"");
    svg << "<text x=\"60\" y=\"20\" font-size=\"11\">solid: investment, dashed: index</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

inline std::string timeseries_csv(const PairedSample& s) {
    std::ostringstream csv;
    csv << "date,market,investment\n";
    const auto dates = s.dates();
    for (std::size_t k = 0; k < s.n(); ++k) {
        csv << (dates.empty() ? std::to_string(k) : format_date(dates[k])) << ',' << round_trip(s.market()[k])
            << ',' << round_trip(s.investment()[k]) << '\n';
    }
    return csv.str();
}

struct PlotFiles {
    std::filesystem::path scatter_svg;
    std::filesystem::path scatter_csv;
    std::filesystem::path timeseries_svg;
    std::filesystem::path timeseries_csv;
};

/// Writes <id>_scatter.{svg,csv} and <id>_timeseries.{svg,csv} into dir.
inline PlotFiles emit_plot_data(const PairedSample& s, std::span<const BetaEstimate> fits,
                                const std::filesystem::path& dir, const std::string& id) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::io, "cannot create '" + dir.string() + "': " + ec.message());
    PlotFiles files{dir / (id + "_scatter.svg"), dir / (id + "_scatter.csv"), dir / (id + "_timeseries.svg"),
                    dir / (id + "_timeseries.csv")};
    detail::write_text_file(files.scatter_svg, scatter_svg(s, fits));
    detail::write_text_file(files.scatter_csv, scatter_csv(s, fits));
    detail::write_text_file(files.timeseries_svg, timeseries_svg(s));
    detail::write_text_file(files.timeseries_csv, timeseries_csv(s));
    return files;
}

}  // namespace gmfr
