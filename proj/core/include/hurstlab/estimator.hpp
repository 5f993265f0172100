#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hurstlab {

// Quadratic-variation record for one path. h_hat_raw is the uncapped
// log-ratio value; h_hat clamps it to [0,1]. rescaled_error is
// sqrt(n) (h_hat_raw - H) when the true H is known.
struct QvRecord {
    std::int64_t n = 0;
    double v2_n = 0.0;
    double v2_2n = 0.0;
    double h_hat_raw = 0.0;
    double h_hat = 0.0;
    std::optional<double> rescaled_error;
};

// out[j-1] = x[j+1] - 2 x[j] + x[j-1] for j = 1..n-1. Throws on fewer than
// 3 points.
std::vector<double> second_diff(std::span<const double> x);

// Sum of squared second differences; the sum runs over j = 1..n-1.
double qv2(std::span<const double> x);

// h_hat_raw = 1/2 + log(v2_n / v2_2n)/(2 log 2), clamped to [0,1] for h_hat.
// Inputs must be strictly positive (a purely affine path gives 0/0).
std::pair<double, double> hurst_hat(double v2_n, double v2_2n);

// path has 2n+1 uniform grid values; v2_2n comes from the full path and
// v2_n from the every-other-point subsample.
QvRecord estimate_from_path(std::span<const double> path, std::int64_t n,
                            std::optional<double> true_h = std::nullopt);

}  // namespace hurstlab
