#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>

#include "gmfr/error.hpp"
#include "gmfr/estimators.hpp"
#include "gmfr/sample.hpp"

namespace gmfr {

struct LineCandidate {
    double slope = 0.0;
    double intercept = 0.0;

    /// The same line with the axes exchanged: x = -a/b + y/b.
    LineCandidate inverted() const { return {1.0 / slope, -intercept / slope}; }
};

/// Sum over points of the right-triangle area cut off by the line: half the
/// product of the vertical and horizontal deviations.
inline double area_objective(std::span<const double> xs, std::span<const double> ys, const LineCandidate& line) {
    if (line.slope == 0.0 || !std::isfinite(line.slope)) {
        throw Error(ErrorKind::degenerate_line, "triangle areas need a finite nonzero slope");
    }
    if (xs.size() != ys.size()) throw Error(ErrorKind::alignment, "x and y differ in length");
    double total = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double vertical = ys[k] - (line.intercept + line.slope * xs[k]);
        const double horizontal = xs[k] - (ys[k] - line.intercept) / line.slope;
        total += 0.5 * std::abs(vertical) * std::abs(horizontal);
    }
    return total;
}

inline double area_objective(const PairedSample& s, const LineCandidate& line) {
    return area_objective(s.market(), s.investment(), line);
}

struct Bracket {
    double lo;
    double hi;
};

/// Walks downhill from x0 in growing steps until the function rises again.
/// The returned bracket contains a local minimum of a unimodal function.
template <std::invocable<double> F>
Bracket bracket_minimum(F&& f, double x0, double f0, double step, std::size_t max_expansions = 200) {
    constexpr double grow = 1.618033988749895;
    double a = x0, fa = f0;
    double b = x0 + step, fb = f(b);
    if (fb > fa) {
        const double c = x0 - step;
        const double fc = f(c);
        if (fc >= fa) return {c, b};
        b = c;
        fb = fc;
    }
    for (std::size_t k = 0; k < max_expansions; ++k) {
        const double c = b + grow * (b - a);
        const double fc = f(c);
        if (fc >= fb) return {std::min(a, c), std::max(a, c)};
        a = b;
        fa = fb;
        b = c;
        fb = fc;
    }
    throw Error(ErrorKind::convergence, "no minimum bracketed; objective decreases without bound");
}

/// Golden-section search on [lo, hi]. Returns the best abscissa and its value.
template <std::invocable<double> F>
std::pair<double, double> golden_section_minimize(F&& f, double lo, double hi, double rtol = 1e-12,
                                                  std::size_t max_iterations = 300) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (std::size_t it = 0; it < max_iterations; ++it) {
        if (hi - lo <= rtol * (std::abs(c) + std::abs(d)) + std::numeric_limits<double>::min()) break;
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

struct MinimizerOptions {
    /// Stop once a full cycle improves the objective by at most this fraction.
    double objective_rtol = 1e-12;
    std::size_t max_cycles = 5000;
    /// Also probe from the reverse-regression line and keep the better result.
    bool reverse_restart = true;
};

struct AreaMinimum {
    LineCandidate line;
    double objective = 0.0;
    std::size_t cycles = 0;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& message, AreaMinimum best)
        : Error(ErrorKind::convergence, message), best_(best) {}

    const AreaMinimum& best() const noexcept { return best_; }

private:
    AreaMinimum best_;
};

namespace detail {

inline AreaMinimum descend_area(std::span<const double> xs, std::span<const double> ys, LineCandidate start,
                                double intercept_scale, const MinimizerOptions& opt) {
    const double sign = start.slope > 0.0 ? 1.0 : -1.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    // Slopes that cross zero leave the admissible half-plane.
    auto objective = [&](double slope, double intercept) {
        if (!(slope * sign > 0.0) || !std::isfinite(slope)) return inf;
        return area_objective(xs, ys, {slope, intercept});
    };

    double b = start.slope;
    double a = start.intercept;
    double f = objective(b, a);
    for (std::size_t cycle = 1; cycle <= opt.max_cycles; ++cycle) {
        if (f == 0.0) return {{b, a}, f, cycle - 1};
        const double b0 = b, a0 = a, f0 = f;

        {
            auto along = [&](double v) { return objective(v, a); };
            auto br = bracket_minimum(along, b, f, 0.01 * std::abs(b));
            auto [v, fv] = golden_section_minimize(along, br.lo, br.hi);
            if (fv <= f) {
                b = v;
                f = fv;
            }
        }
        {
            auto along = [&](double v) { return objective(b, v); };
            auto br = bracket_minimum(along, a, f, 0.01 * (std::abs(a) + intercept_scale));
            auto [v, fv] = golden_section_minimize(along, br.lo, br.hi);
            if (fv <= f) {
                a = v;
                f = fv;
            }
        }
        // Pattern move along this cycle's net displacement.
        const double db = b - b0, da = a - a0;
        if (db != 0.0 || da != 0.0) {
            const double pb = b, pa = a;
            auto along = [&](double t) { return objective(pb + t * db, pa + t * da); };
            auto br = bracket_minimum(along, 0.0, f, 1.0);
            auto [t, ft] = golden_section_minimize(along, br.lo, br.hi, 1e-10);
            if (ft <= f) {
                b = pb + t * db;
                a = pa + t * da;
                f = ft;
            }
        }

        if (f0 - f <= opt.objective_rtol * f0) return {{b, a}, f, cycle};
    }
    throw ConvergenceError("least-areas descent exhausted its cycle budget", {{b, a}, f, opt.max_cycles});
}

}  // namespace detail

/// Numerically finds the line minimizing the summed triangle areas.
///
/// Coordinate descent with golden-section line searches on slope and
/// intercept alternately, plus a pattern move per cycle. Seeded at the OLS
/// fit and, when enabled, restarted from the reverse-regression fit. Uses no
/// closed form for the answer, so it can check one.
inline AreaMinimum minimize_area(const PairedSample& s, const MinimizerOptions& opt = {}) {
    if (s.corr() == 0.0) {
        throw Error(ErrorKind::degenerate_line, "zero correlation gives a zero-slope OLS seed");
    }
    const auto ols = ols_beta(s);
    AreaMinimum best =
        detail::descend_area(s.market(), s.investment(), {ols.slope, ols.intercept}, s.sd_i(), opt);
    if (opt.reverse_restart && best.objective > 0.0) {
        const auto rev = reverse_beta(s);
        AreaMinimum other =
            detail::descend_area(s.market(), s.investment(), {rev.slope, rev.intercept}, s.sd_i(), opt);
        other.cycles += best.cycles;
        if (other.objective < best.objective) {
            best = other;
        } else {
            best.cycles = other.cycles;
        }
    }
    return best;
}

/// Closed-form beta* next to the least-areas minimizer.
struct OracleCheck {
    LineCandidate closed_form;
    LineCandidate numeric;
    double slope_rel_delta = 0.0;
    /// Intercept delta scaled by max(|alpha*|, sd_i).
    double intercept_rel_delta = 0.0;
};

inline OracleCheck verify_beta_star(const PairedSample& s, const MinimizerOptions& opt = {}) {
    const auto star = beta_star(s);
    const auto found = minimize_area(s, opt);
    OracleCheck out;
    out.closed_form = {star.slope, star.intercept};
    out.numeric = found.line;
    out.slope_rel_delta = std::abs(found.line.slope - star.slope) / std::abs(star.slope);
    out.intercept_rel_delta =
        std::abs(found.line.intercept - star.intercept) / std::max(std::abs(star.intercept), s.sd_i());
    return out;
}

}  // namespace gmfr
