#pragma once

#include <stdexcept>
#include <string>

namespace hurstlab {

// Base class for all errors raised by this library. The `kind()` string is a
// stable machine-readable tag; the what() text is free-form.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& msg) : Error("invalid_argument", msg) {}
};

// Requested truncation tolerance needs a series cutoff beyond the hard cap.
class TruncationError : public Error {
public:
    TruncationError(const std::string& msg, double achieved_bound)
        : Error("truncation_failure", msg), achieved_bound_(achieved_bound) {}

    double achieved_bound() const noexcept { return achieved_bound_; }

private:
    double achieved_bound_;
};

// A quadratic variation is zero (e.g. an affine path), so the log-ratio
// estimator is undefined.
class DegenerateVariationError : public Error {
public:
    explicit DegenerateVariationError(const std::string& msg)
        : Error("degenerate_variation", msg) {}
};

// The diffusion coefficient vanishes along the path and the limit variation
// is numerically zero.
class DegenerateCoefficientError : public Error {
public:
    explicit DegenerateCoefficientError(const std::string& msg)
        : Error("degenerate_coefficient", msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error("parse_error", msg), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error("io_error", msg) {}
};

}  // namespace hurstlab
