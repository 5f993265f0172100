#pragma once

#include <cstdint>
#include <vector>

#include "hurstlab/coeff_expr.hpp"
#include "hurstlab/fbm.hpp"

namespace hurstlab {

// Pathwise solution of dX = V2(X) dt + V1(X) dB on the driving path's grid.
struct SdePath {
    SdePath(Hurst h_, std::int64_t n_points_) : h(h_), n_points(n_points_) {}

    Hurst h;
    std::int64_t n_points = 0;  // same grid as the driver
    std::vector<double> x_values;
    double x0 = 0.0;
};

// Euler scheme: X_{k+1} = X_k + V2(X_k)/m + V1(X_k) dB_k.
SdePath euler_solve(const CoefficientSpec& coeffs, const FbmPath& driver, double x0);

// Trapezoidal predictor-corrector: Euler predictor, then the corrector
// averages the coefficients at both endpoints.
SdePath heun_solve(const CoefficientSpec& coeffs, const FbmPath& driver, double x0);

}  // namespace hurstlab
