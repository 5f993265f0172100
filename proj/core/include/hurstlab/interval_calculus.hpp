#pragma once

#include <cstdint>
#include <vector>

#include "hurstlab/hurst.hpp"

namespace hurstlab {

// Covariance of fBm increments over [a,b] and [c,d]:
//   E[(B_b - B_a)(B_d - B_c)] = ((d-a)^2H + (c-b)^2H - (c-a)^2H - (d-b)^2H)/2
// with |.| around every base. Degenerate intervals (a == b or c == d) are
// zero kernels and return 0.
double interval_inner(Hurst h, double a, double b, double c, double d);

// Autocovariance of unit-lag fractional Gaussian noise,
// gamma(k) = (|k+1|^2H - 2|k|^2H + |k-1|^2H)/2 = interval_inner(h,0,1,k,k+1).
double fgn_autocov(Hurst h, std::int64_t k);

// Covariance sequence of unit-scale second differences:
// rho_hat(j) = <1_[0,1] - 1_[-1,0], 1_[j,j+1] - 1_[j-1,j]>.
// rho_hat(0) equals 4 - 2^2H.
double rho_hat(Hurst h, std::int64_t j);

// Mixed-scale covariance sequence:
// rho_tilde(j) = 2^-2H <1_[0,1] - 1_[-1,0], 1_[j,j+2] - 1_[j-2,j]>.
double rho_tilde(Hurst h, std::int64_t j);

// All series constants entering the limit theorem and the expansion density,
// together with the covariance tables and the truncation metadata.
struct HurstConstants {
    explicit HurstConstants(Hurst h_) : h(h_) {}

    Hurst h;
    double c2h = 0.0;      // 4 - 2^2H
    double c_hat = 0.0;    // sum_j rho_hat(j)^2
    double c_tilde = 0.0;  // sum_j rho_tilde(j)^2
    double c_inf = 0.0;    // 3 c_hat - 2^(2H+1) c_tilde
    double c_qtor = 0.0;   // triple-product series, see series_constants
    double g_coeff = 0.0;  // c_hat / (2 c_inf)

    std::int64_t truncation_k = 0;
    double tol = 0.0;
    double tail_bound = 0.0;  // analytic bound on the truncation error, <= tol

    // Tables over |j| <= truncation_k, index j + truncation_k.
    std::vector<double> rho_hat_table;
    std::vector<double> rho_tilde_table;

    double rho_hat_at(std::int64_t j) const;
    double rho_tilde_at(std::int64_t j) const;
};

// Sums the series
//   c_hat  = sum_j rho_hat(j)^2
//   c_tilde= sum_j rho_tilde(j)^2
//   c_inf  = 3 c_hat - 2^(2H+1) c_tilde
//   c_qtor = sum rh(i1) rh(i1-i2) rh(i2)
//            - 2^(2H+1) sum rt(i2) rt(2 i1 - i2) rh(i1)
//            + 2^2H     sum rt(i1) rt(i2) rh(i1-i2)
// over |i1|, |i2| <= K, where K is the smallest cutoff whose analytic tail
// bound (from |rho(k)| = O(|k|^(2H-4))) is below tol. Throws TruncationError
// if that K would exceed hard_cap.
HurstConstants series_constants(Hurst h, double tol, std::int64_t hard_cap = 65536);

namespace detail {
// Fixed-cutoff variant used by the truncation-stability tests.
HurstConstants series_constants_with_k(Hurst h, std::int64_t k, double tol, double tail_bound);
}  // namespace detail

}  // namespace hurstlab
