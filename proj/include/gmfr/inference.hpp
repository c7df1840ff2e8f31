#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

#include "gmfr/error.hpp"
#include "gmfr/estimators.hpp"
#include "gmfr/sample.hpp"

namespace gmfr {

namespace detail {

// Continued fraction for the incomplete beta function (modified Lentz).
inline double beta_continued_fraction(double a, double b, double x) {
    constexpr int max_iterations = 200000;
    constexpr double eps = 1e-16;
    constexpr double tiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h;
    }
    throw Error(ErrorKind::convergence, "incomplete beta continued fraction did not converge");
}

}  // namespace detail

/// Regularized incomplete beta function I_x(a, b).
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::domain, "incomplete beta needs a, b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::domain, "incomplete beta needs x in [0, 1]");
    if (x == 0.0 || x == 1.0) return x;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// CDF of Student's t with df degrees of freedom.
inline double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw Error(ErrorKind::domain, "degrees of freedom must be positive");
    if (t == 0.0) return 0.5;
    const double tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
    return t > 0.0 ? 1.0 - tail : tail;
}

/// Two-sided critical value: P(|T| <= t) = level. Found by bisection on the CDF.
inline double t_critical(double level, std::size_t df) {
    if (df == 0) throw Error(ErrorKind::domain, "t critical value needs df >= 1");
    if (!(level > 0.0 && level < 1.0)) {
        throw Error(ErrorKind::domain, "confidence level " + std::to_string(level) + " outside (0, 1)");
    }
    const double target = 0.5 + 0.5 * level;
    const auto nu = static_cast<double>(df);
    double lo = 0.0;
    double hi = 1.0;
    while (student_t_cdf(hi, nu) < target) {
        lo = hi;
        hi *= 2.0;
    }
    constexpr double tolerance = 1e-10;
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, nu) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Which variance formula backs the approximate interval.
///
/// `squared_slope` uses s^2 = b*^2 (1 - r^2) / (n - 2), the form consistent
/// with the exact interval in its small-B limit. `printed` keeps
/// s^2 = b* (1 - r^2) / (n - 2) verbatim for audit comparisons; it is only
/// defined for b* >= 0.
enum class SlopeVarianceForm { squared_slope, printed };

enum class IntervalMethod { approximate, exact };

constexpr std::string_view to_string(IntervalMethod m) noexcept {
    return m == IntervalMethod::approximate ? "approximate" : "exact";
}

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;
    IntervalMethod method = IntervalMethod::approximate;
    double t_critical = 0.0;
    double B = 0.0;  // t^2 (1 - r^2) / (n - 2)

    double midpoint() const noexcept { return 0.5 * (lower + upper); }
    double half_width() const noexcept { return 0.5 * (upper - lower); }
    bool contains(double v) const noexcept { return lower <= v && v <= upper; }
};

namespace detail {

inline void check_n(std::size_t n) {
    if (n <= 2) {
        throw Error(ErrorKind::insufficient_data, "slope inference needs n >= 3, got " + std::to_string(n));
    }
}

inline double b_statistic(double t, double corr, std::size_t n) {
    return t * t * (1.0 - corr * corr) / static_cast<double>(n - 2);
}

}  // namespace detail

/// Standard error of b* from its slope, correlation and sample size.
inline double slope_stderr(double slope, double corr, std::size_t n,
                           SlopeVarianceForm form = SlopeVarianceForm::squared_slope) {
    detail::check_n(n);
    const double spread = (1.0 - corr * corr) / static_cast<double>(n - 2);
    if (form == SlopeVarianceForm::squared_slope) return std::abs(slope) * std::sqrt(spread);
    if (slope < 0.0) {
        throw Error(ErrorKind::domain, "printed variance form gives a negative variance for a negative slope");
    }
    return std::sqrt(slope * spread);
}

inline double slope_stderr(const PairedSample& s, const BetaEstimate& star,
                           SlopeVarianceForm form = SlopeVarianceForm::squared_slope) {
    if (s.corr() == 0.0) throw Error(ErrorKind::sign_undefined, "zero correlation");
    return slope_stderr(star.slope, s.corr(), s.n(), form);
}

/// Symmetric interval b* +/- t s with n - 2 degrees of freedom.
inline ConfidenceInterval approx_ci(double slope, double corr, std::size_t n, double level,
                                    SlopeVarianceForm form = SlopeVarianceForm::squared_slope) {
    const double s = slope_stderr(slope, corr, n, form);
    const double t = t_critical(level, n - 2);
    return {slope - t * s, slope + t * s, level, IntervalMethod::approximate, t,
            detail::b_statistic(t, corr, n)};
}

inline ConfidenceInterval approx_ci(const PairedSample& s, const BetaEstimate& star, double level,
                                    SlopeVarianceForm form = SlopeVarianceForm::squared_slope) {
    if (s.corr() == 0.0) throw Error(ErrorKind::sign_undefined, "zero correlation");
    return approx_ci(star.slope, s.corr(), s.n(), level, form);
}

/// Multiplicatively symmetric interval b* [sqrt(B + 1) -/+ sqrt(B)].
///
/// The endpoints multiply to b*^2 since (sqrt(B+1) + sqrt(B))(sqrt(B+1) - sqrt(B)) = 1.
/// For negative slopes the endpoints are swapped so that lower <= upper.
inline ConfidenceInterval exact_ci(double slope, double corr, std::size_t n, double level) {
    detail::check_n(n);
    const double t = t_critical(level, n - 2);
    const double B = detail::b_statistic(t, corr, n);
    const double root_b1 = std::sqrt(B + 1.0);
    const double root_b = std::sqrt(B);
    double lo = slope * (root_b1 - root_b);
    double hi = slope * (root_b1 + root_b);
    if (lo > hi) std::swap(lo, hi);
    return {lo, hi, level, IntervalMethod::exact, t, B};
}

inline ConfidenceInterval exact_ci(const PairedSample& s, const BetaEstimate& star, double level) {
    return exact_ci(star.slope, s.corr(), s.n(), level);
}

}  // namespace gmfr
