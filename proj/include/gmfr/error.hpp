#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmfr {

enum class ErrorKind {
    insufficient_data,
    domain,
    alignment,
    degenerate_sample,
    undefined_slope,
    sign_undefined,
    estimator_mismatch,
    degenerate_line,
    convergence,
    input,
    parse,
    io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::insufficient_data: return "insufficient-data";
        case ErrorKind::domain: return "domain";
        case ErrorKind::alignment: return "alignment";
        case ErrorKind::degenerate_sample: return "degenerate-sample";
        case ErrorKind::undefined_slope: return "undefined-slope";
        case ErrorKind::sign_undefined: return "sign-undefined";
        case ErrorKind::estimator_mismatch: return "estimator-mismatch";
        case ErrorKind::degenerate_line: return "degenerate-line";
        case ErrorKind::convergence: return "convergence";
        case ErrorKind::input: return "input";
        case ErrorKind::parse: return "parse";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

/// Base for every failure raised by the library. The kind is stable and
/// machine-checkable; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// The message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

/// Which variable of a paired sample is constant.
enum class Side { market, investment, both };

constexpr std::string_view to_string(Side side) noexcept {
    switch (side) {
        case Side::market: return "market";
        case Side::investment: return "investment";
        case Side::both: return "both";
    }
    return "unknown";
}

class DegenerateSampleError : public Error {
public:
    DegenerateSampleError(Side side, const std::string& message)
        : Error(ErrorKind::degenerate_sample,
                message + " (constant side: " + std::string(to_string(side)) + ")"),
          side_(side) {}

    Side side() const noexcept { return side_; }

private:
    Side side_;
};

}  // namespace gmfr
