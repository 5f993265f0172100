#include <doctest.h>

#include <cmath>
#include <set>

#include "hurstlab/rng.hpp"

using namespace hurstlab;

TEST_CASE("streams are deterministic and split cleanly") {
    RngStream a = derive_stream(911, "hist", 3);
    RngStream b = derive_stream(911, "hist", 3);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    // distinct tags or indices give distinct first outputs
    std::set<std::uint64_t> firsts;
    for (std::uint64_t i = 0; i < 64; ++i) {
        firsts.insert(derive_stream(911, "hist", i).next_u64());
        firsts.insert(derive_stream(911, "mc", i).next_u64());
    }
    CHECK(firsts.size() == 128);
}

TEST_CASE("uniforms live strictly inside (0,1)") {
    RngStream rng(12345);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.next_uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("normals have the right first two moments") {
    RngStream rng(777);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.next_normal();
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / static_cast<double>(n)));
}
