#include "hurstlab/sde.hpp"

#include <cmath>
#include <string>

#include "hurstlab/errors.hpp"

namespace hurstlab {

namespace {

void check_driver(const FbmPath& driver) {
    driver.h.require_rough_above_half();
    if (driver.n_points < 1 || std::ssize(driver.values) != driver.n_points + 1)
        throw InvalidArgument("SDE driver path is malformed");
}

[[noreturn]] void non_finite(std::int64_t step) {
    throw Error("non_finite_state",
                "SDE state became non-finite at step " + std::to_string(step));
}

}  // namespace

SdePath euler_solve(const CoefficientSpec& coeffs, const FbmPath& driver, double x0) {
    check_driver(driver);
    const std::int64_t m = driver.n_points;
    const double dt = 1.0 / static_cast<double>(m);
    SdePath out(driver.h, m);
    out.x0 = x0;
    out.x_values.resize(static_cast<std::size_t>(m) + 1);
    double x = x0;
    out.x_values[0] = x;
    for (std::int64_t k = 0; k < m; ++k) {
        const double db = driver.values[static_cast<std::size_t>(k + 1)] -
                          driver.values[static_cast<std::size_t>(k)];
        x += coeffs.eval_v2(x) * dt + coeffs.eval_v1(x) * db;
        if (!std::isfinite(x)) non_finite(k + 1);
        out.x_values[static_cast<std::size_t>(k + 1)] = x;
    }
    return out;
}

SdePath heun_solve(const CoefficientSpec& coeffs, const FbmPath& driver, double x0) {
    check_driver(driver);
    const std::int64_t m = driver.n_points;
    const double dt = 1.0 / static_cast<double>(m);
    SdePath out(driver.h, m);
    out.x0 = x0;
    out.x_values.resize(static_cast<std::size_t>(m) + 1);
    double x = x0;
    out.x_values[0] = x;
    for (std::int64_t k = 0; k < m; ++k) {
        const double db = driver.values[static_cast<std::size_t>(k + 1)] -
                          driver.values[static_cast<std::size_t>(k)];
        const double v1 = coeffs.eval_v1(x);
        const double v2 = coeffs.eval_v2(x);
        const double pred = x + v2 * dt + v1 * db;
        x += 0.5 * (v2 + coeffs.eval_v2(pred)) * dt + 0.5 * (v1 + coeffs.eval_v1(pred)) * db;
        if (!std::isfinite(x)) non_finite(k + 1);
        out.x_values[static_cast<std::size_t>(k + 1)] = x;
    }
    return out;
}

}  // namespace hurstlab
