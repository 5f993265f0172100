#include "hurstlab/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hurstlab/errors.hpp"

namespace hurstlab {

std::vector<double> second_diff(std::span<const double> x) {
    if (x.size() < 3) throw InvalidArgument("second_diff requires at least 3 points");
    std::vector<double> out(x.size() - 2);
    for (std::size_t j = 1; j + 1 < x.size(); ++j)
        out[j - 1] = x[j + 1] - 2.0 * x[j] + x[j - 1];
    return out;
}

double qv2(std::span<const double> x) {
    if (x.size() < 3) throw InvalidArgument("qv2 requires at least 3 points");
    double sum = 0.0;
    for (std::size_t j = 1; j + 1 < x.size(); ++j) {
        const double d = x[j + 1] - 2.0 * x[j] + x[j - 1];
        sum += d * d;
    }
    return sum;
}

std::pair<double, double> hurst_hat(double v2_n, double v2_2n) {
    if (!(v2_n > 0.0) || !(v2_2n > 0.0))
        throw DegenerateVariationError(
            "hurst_hat requires strictly positive quadratic variations, got " +
            std::to_string(v2_n) + " and " + std::to_string(v2_2n));
    const double raw = 0.5 + std::log(v2_n / v2_2n) / (2.0 * std::log(2.0));
    return {raw, std::clamp(raw, 0.0, 1.0)};
}

QvRecord estimate_from_path(std::span<const double> path, std::int64_t n,
                            std::optional<double> true_h) {
    if (n < 2) throw InvalidArgument("estimate_from_path requires n >= 2");
    if (std::ssize(path) != 2 * n + 1)
        throw InvalidArgument("estimate_from_path expects 2n+1 = " + std::to_string(2 * n + 1) +
                              " points, got " + std::to_string(path.size()));
    QvRecord rec;
    rec.n = n;
    rec.v2_2n = qv2(path);
    std::vector<double> coarse(static_cast<std::size_t>(n) + 1);
    for (std::int64_t k = 0; k <= n; ++k)
        coarse[static_cast<std::size_t>(k)] = path[static_cast<std::size_t>(2 * k)];
    rec.v2_n = qv2(coarse);
    std::tie(rec.h_hat_raw, rec.h_hat) = hurst_hat(rec.v2_n, rec.v2_2n);
    if (true_h)
        rec.rescaled_error = std::sqrt(static_cast<double>(n)) * (rec.h_hat_raw - *true_h);
    return rec;
}

}  // namespace hurstlab
