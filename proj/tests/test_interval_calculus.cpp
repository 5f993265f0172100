#include <doctest.h>

#include <cmath>
#include <vector>

#include "hurstlab/errors.hpp"
#include "hurstlab/interval_calculus.hpp"

using namespace hurstlab;

namespace {
const std::vector<double> kHGrid = {0.51, 0.55, 0.59, 0.63, 0.67, 0.71, 0.75,
                                    0.79, 0.83, 0.87, 0.91, 0.95, 0.99};
}

TEST_CASE("interval_inner closed form") {
    for (const double h : kHGrid)
        CHECK(interval_inner(Hurst(h), 0, 1, 0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    // independent Brownian increments
    CHECK(interval_inner(Hurst(0.5), 0, 1, 2, 3) == doctest::Approx(0.0).epsilon(1e-15));
    // (2^1.5 - 2)/2, evaluated with 40-digit arithmetic
    CHECK(interval_inner(Hurst(0.75), 0, 1, 1, 2) ==
          doctest::Approx(0.4142135623730950488).epsilon(1e-15));

    SUBCASE("degenerate intervals are zero kernels") {
        CHECK(interval_inner(Hurst(0.7), 1, 1, 0, 2) == 0.0);
        CHECK(interval_inner(Hurst(0.7), 0, 2, 3, 3) == 0.0);
    }
    SUBCASE("non-finite endpoints are rejected") {
        CHECK_THROWS_AS(interval_inner(Hurst(0.7), 0, std::nan(""), 0, 1), InvalidArgument);
    }
}

TEST_CASE("fgn_autocov") {
    for (const double h : kHGrid) CHECK(fgn_autocov(Hurst(h), 0) == doctest::Approx(1.0));
    CHECK(fgn_autocov(Hurst(0.5), 1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(fgn_autocov(Hurst(0.75), 1) == doctest::Approx(0.4142135623730950488).epsilon(1e-15));
    // reduction to interval_inner
    for (const std::int64_t k : {-3, -1, 0, 2, 7})
        CHECK(fgn_autocov(Hurst(0.8), k) ==
              doctest::Approx(interval_inner(Hurst(0.8), 0, 1, static_cast<double>(k),
                                             static_cast<double>(k + 1)))
                  .epsilon(1e-15));
}

TEST_CASE("rho_hat basic values and symmetry") {
    for (const double h : kHGrid) {
        const double c2h = 4.0 - std::pow(2.0, 2.0 * h);
        CHECK(std::abs(rho_hat(Hurst(h), 0) - c2h) < 1e-12);
    }
    CHECK(rho_hat(Hurst(0.5), 1) == doctest::Approx(-1.0).epsilon(1e-15));
    for (const double h : {0.55, 0.7, 0.95})
        for (const std::int64_t j : {1, 2, 5, 17, 1000})
            CHECK(rho_hat(Hurst(h), j) == rho_hat(Hurst(h), -j));
    // agreement with the autocovariance expansion 2 gamma(j) - gamma(j-1) - gamma(j+1)
    for (const std::int64_t j : {0, 1, 2, 9}) {
        const Hurst h(0.65);
        CHECK(rho_hat(h, j) == doctest::Approx(2.0 * fgn_autocov(h, j) - fgn_autocov(h, j - 1) -
                                               fgn_autocov(h, j + 1))
                                   .epsilon(1e-13));
    }
}

TEST_CASE("rho_tilde Brownian-limit hand values") {
    CHECK(rho_tilde(Hurst(0.5), 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rho_tilde(Hurst(0.5), 1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rho_tilde(Hurst(0.5), 2) == doctest::Approx(-0.5).epsilon(1e-15));
    // stored for both signs; numerically symmetric
    for (const double h : {0.55, 0.85})
        for (const std::int64_t j : {1, 2, 3, 11})
            CHECK(rho_tilde(Hurst(h), j) == doctest::Approx(rho_tilde(Hurst(h), -j)));
}

TEST_CASE("second-difference inner product identity") {
    // <d_0, 1_1> = c2h / 2 where d_0 = 1_[0,1] - 1_[-1,0]
    for (const double h : kHGrid) {
        const double lhs =
            interval_inner(Hurst(h), 0, 1, 0, 1) - interval_inner(Hurst(h), -1, 0, 0, 1);
        const double c2h = 4.0 - std::pow(2.0, 2.0 * h);
        CHECK(std::abs(lhs - 0.5 * c2h) < 1e-12);
    }
}

TEST_CASE("decay envelope |rho_hat(k)| k^(4-2H) stays under the frozen bound") {
    // Empirical maximum over the h grid is 0.535 (attained at k = 2); 0.6 is
    // the frozen regression constant.
    for (const double h : kHGrid) {
        const double alpha = 4.0 - 2.0 * h;
        double worst = 0.0;
        for (std::int64_t k = 2; k <= 10000; k = (k < 128 ? k + 1 : k + 97)) {
            const double w = std::abs(rho_hat(Hurst(h), k)) * std::pow(static_cast<double>(k), alpha);
            worst = std::max(worst, w);
        }
        CHECK(worst <= 0.6);
    }
}

TEST_CASE("series_constants Brownian-limit oracle") {
    const HurstConstants c = series_constants(Hurst(0.5), 1e-10);
    CHECK(c.c_hat == doctest::Approx(6.0).epsilon(1e-10));
    CHECK(c.c_tilde == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(c.c_inf == doctest::Approx(12.0).epsilon(1e-10));
    // Finite support: rho_hat = (-1,2,-1), rho_tilde = (-1/2,0,1,0,-1/2), so
    // the three double sums enumerate to 20, 5 and 3.
    CHECK(c.c_qtor == doctest::Approx(20.0 - 4.0 * 5.0 + 2.0 * 3.0).epsilon(1e-10));
    CHECK(c.g_coeff == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(c.rho_hat_at(0) == doctest::Approx(2.0));
    CHECK(c.rho_hat_at(1) == doctest::Approx(-1.0));
    CHECK(c.rho_tilde_at(2) == doctest::Approx(-0.5));
}

TEST_CASE("series_constants reference values at h = 0.7") {
    // Computed independently with 80-bit stencils at cutoff 16384.
    const HurstConstants c = series_constants(Hurst(0.7), 1e-12);
    CHECK(c.c_hat == doctest::Approx(2.47316183690737).epsilon(1e-11));
    CHECK(c.c_tilde == doctest::Approx(0.551801539951665).epsilon(1e-11));
    CHECK(c.c_inf == doctest::Approx(4.50705952215055).epsilon(1e-11));
    CHECK(c.c_qtor == doctest::Approx(0.931247621794095).epsilon(1e-10));
    CHECK(c.g_coeff == doctest::Approx(0.274365340057379).epsilon(1e-11));
}

TEST_CASE("series_constants invariants") {
    for (const double h : {0.55, 0.75, 0.95}) {
        const HurstConstants c = series_constants(Hurst(h), 1e-9);
        CHECK(c.rho_hat_at(0) == doctest::Approx(c.c2h).epsilon(1e-14));
        CHECK(c.c_hat >= c.rho_hat_at(0) * c.rho_hat_at(0));
        CHECK(c.c_tilde >= 0.0);
        CHECK(c.c_inf ==
              doctest::Approx(3.0 * c.c_hat - std::pow(2.0, 2.0 * h + 1.0) * c.c_tilde));
        CHECK(c.c_inf > 0.0);
        CHECK(c.tail_bound <= c.tol);
    }
}

TEST_CASE("series_constants truncation stability") {
    for (const double h : {0.55, 0.75, 0.95}) {
        const HurstConstants loose = series_constants(Hurst(h), 1e-8);
        const HurstConstants tight = series_constants(Hurst(h), 1e-12);
        CHECK(std::abs(loose.c_hat - tight.c_hat) < 1e-7);
        CHECK(std::abs(loose.c_tilde - tight.c_tilde) < 1e-7);
        CHECK(std::abs(loose.c_inf - tight.c_inf) < 1e-7);
        CHECK(std::abs(loose.c_qtor - tight.c_qtor) < 1e-7);
    }
}

TEST_CASE("series_constants monotone stability in the cutoff") {
    for (const double h : {0.6, 0.9}) {
        const HurstConstants base = series_constants(Hurst(h), 1e-8);
        const HurstConstants doubled =
            detail::series_constants_with_k(Hurst(h), 2 * base.truncation_k, base.tol,
                                            base.tail_bound);
        CHECK(std::abs(base.c_hat - doubled.c_hat) <= base.tail_bound);
        CHECK(std::abs(base.c_tilde - doubled.c_tilde) <= base.tail_bound);
        CHECK(std::abs(base.c_inf - doubled.c_inf) <= base.tail_bound);
        CHECK(std::abs(base.c_qtor - doubled.c_qtor) <= base.tail_bound);
    }
}

TEST_CASE("series_constants determinism") {
    const HurstConstants a = series_constants(Hurst(0.73), 1e-9);
    const HurstConstants b = series_constants(Hurst(0.73), 1e-9);
    CHECK(a.c_hat == b.c_hat);
    CHECK(a.c_tilde == b.c_tilde);
    CHECK(a.c_inf == b.c_inf);
    CHECK(a.c_qtor == b.c_qtor);
    CHECK(a.g_coeff == b.g_coeff);
    CHECK(a.truncation_k == b.truncation_k);
}

TEST_CASE("series_constants hard cap failure carries the achieved bound") {
    try {
        series_constants(Hurst(0.95), 1e-13, 128);
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        CHECK(e.achieved_bound() > 1e-13);
    }
    CHECK_THROWS_AS(series_constants(Hurst(0.7), 0.0), InvalidArgument);
}
