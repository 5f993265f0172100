#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hurstlab/coeff_expr.hpp"
#include "hurstlab/interval_calculus.hpp"
#include "hurstlab/sde.hpp"

namespace hurstlab {

// Per-path random coefficients of the limit theorem:
//   v_inf = c2h * int (V1_t)^2 dt           (limit of the rescaled variation)
//   g_hat = v_inf^-2 * int (V1_t)^4 dt
//   g_inf = c_inf * g_hat                   (asymptotic conditional variance)
//   a_n   = -1/2 v_inf^-1 c2h ((V1_0)^2 + (V1_1)^2)
//   m6    = int (V1_t)^6 dt
//   c3    = c_qtor * v_inf^-3 * m6          (third-order coefficient)
struct PathFunctionals {
    double v_inf = 0.0;
    double g_hat = 0.0;
    double g_inf = 0.0;
    double a_n = 0.0;
    double m6 = 0.0;
    double c3 = 0.0;
};

struct DensityCurve {
    std::vector<double> z_grid;
    std::vector<double> leading;    // mixed-normal term
    std::vector<double> corrected;  // leading + n^-1/2 corrections
    std::int64_t n = 0;
    std::int64_t mc_replicas = 0;
};

// Integrals are left-endpoint Riemann sums over quad_n grid points; quad_n
// must divide the path's grid size. Throws DegenerateCoefficientError when
// the limit variation vanishes.
PathFunctionals path_functionals(const SdePath& path, const CoefficientSpec& coeffs,
                                 const HurstConstants& constants, std::int64_t quad_n);

// Mean over samples of the normal density with variance (2 log 2)^-2 g_inf.
std::vector<double> mixed_normal_density(std::span<const double> z_grid,
                                         std::span<const PathFunctionals> samples);

// Monte Carlo evaluation of both the mixed-normal density and the
// n^-1/2-corrected expansion density on z_grid.
DensityCurve expansion_density(std::span<const double> z_grid, std::int64_t n,
                               std::span<const PathFunctionals> samples,
                               const HurstConstants& constants);

// Pairwise (fixed-order) summation; deterministic independent of threading.
double pairwise_sum(std::span<const double> values);

}  // namespace hurstlab
