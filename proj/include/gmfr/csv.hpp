#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gmfr/date.hpp"
#include "gmfr/error.hpp"
#include "gmfr/returns.hpp"

namespace gmfr {

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline bool parse_double(std::string_view text, double& out) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

// Reads `date,<value_name>` rows. Blank lines are skipped.
inline std::vector<std::pair<Date, double>> read_dated_values(std::istream& in, std::string_view source,
                                                              std::string_view value_name) {
    const std::string where(source);
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<std::pair<Date, double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (line_no == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
        if (view.empty()) continue;
        const auto comma = view.find(',');
        if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
            throw Error(ErrorKind::parse, where + ":" + std::to_string(line_no) + ": expected two comma-separated fields");
        }
        const auto first = trim(view.substr(0, comma));
        const auto second = trim(view.substr(comma + 1));
        if (!have_header) {
            if (first != "date" || second != value_name) {
                throw Error(ErrorKind::parse, where + ":" + std::to_string(line_no) + ": expected header 'date," +
                                                  std::string(value_name) + "'");
            }
            have_header = true;
            continue;
        }
        const auto date = parse_date(first);
        if (!date) {
            throw Error(ErrorKind::parse,
                        where + ":" + std::to_string(line_no) + ": bad ISO-8601 date '" + std::string(first) + "'");
        }
        double value = 0.0;
        if (!parse_double(second, value)) {
            throw Error(ErrorKind::parse,
                        where + ":" + std::to_string(line_no) + ": bad number '" + std::string(second) + "'");
        }
        rows.emplace_back(*date, value);
    }
    if (!have_header) throw Error(ErrorKind::parse, where + ": file is empty");
    if (rows.empty()) throw Error(ErrorKind::parse, where + ": no data rows");
    return rows;
}

inline std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "'");
    return in;
}

}  // namespace detail

inline PriceSeries read_price_csv(std::istream& in, std::string_view source) {
    std::vector<PricePoint> points;
    for (const auto& [date, price] : detail::read_dated_values(in, source, "price")) points.push_back({date, price});
    try {
        return PriceSeries(std::move(points));
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(source) + ": " + e.detail());
    }
}

inline PriceSeries read_price_csv(const std::filesystem::path& path) {
    auto in = detail::open_for_read(path);
    return read_price_csv(in, path.string());
}

inline std::vector<RatePoint> read_rate_csv(std::istream& in, std::string_view source) {
    std::vector<RatePoint> points;
    for (const auto& [date, rate] : detail::read_dated_values(in, source, "rate")) {
        if (!points.empty() && !(points.back().date < date)) {
            throw Error(ErrorKind::parse, std::string(source) + ": rate dates not strictly increasing at " +
                                              format_date(date));
        }
        points.push_back({date, rate});
    }
    return points;
}

inline std::vector<RatePoint> read_rate_csv(const std::filesystem::path& path) {
    auto in = detail::open_for_read(path);
    return read_rate_csv(in, path.string());
}

/// Shortest decimal text that round-trips the value.
inline std::string round_trip(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline void write_price_csv(std::ostream& out, const PriceSeries& prices) {
    out << "date,price\n";
    for (const auto& p : prices.observations()) out << format_date(p.date) << ',' << round_trip(p.price) << '\n';
}

inline void write_rate_csv(std::ostream& out, std::span<const RatePoint> rates) {
    out << "date,rate\n";
    for (const auto& p : rates) out << format_date(p.date) << ',' << round_trip(p.rate) << '\n';
}

}  // namespace gmfr
