#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hurstlab/hurst.hpp"
#include "hurstlab/rng.hpp"

namespace hurstlab {

enum class FgnMethod { cholesky, circulant };

// Reproducibility record attached to sampled paths.
struct SeedInfo {
    std::uint64_t master_seed = 0;
    std::string stream_tag;
    std::uint64_t replica_index = 0;
};

// fBm values on the uniform grid t_k = k/m, k = 0..m. values[0] == 0.
struct FbmPath {
    explicit FbmPath(Hurst h_) : h(h_) {}

    Hurst h;
    std::int64_t n_points = 0;  // grid size m; values has m+1 entries
    std::vector<double> values;
    SeedInfo seed_info;
};

// Exact-in-distribution sampler of fractional Gaussian noise: m increments
// with Cov(dB_j, dB_k) = m^-2H gamma(j-k). The plan (Cholesky factor or
// spectral weights) is built once and immutable afterwards; sample() only
// touches rng and out, so concurrent calls with distinct streams are safe.
class FgnSampler {
public:
    FgnSampler(Hurst h, std::int64_t m, FgnMethod method);
    ~FgnSampler();
    FgnSampler(FgnSampler&&) noexcept;
    FgnSampler& operator=(FgnSampler&&) noexcept;
    FgnSampler(const FgnSampler&) = delete;
    FgnSampler& operator=(const FgnSampler&) = delete;

    void sample(RngStream& rng, std::span<double> out) const;
    std::vector<double> sample(RngStream& rng) const;

    Hurst h() const;
    std::int64_t m() const;
    // Method actually in use (circulant may have fallen back to cholesky).
    FgnMethod method() const;
    bool fell_back_to_cholesky() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Cumulative sums prefixed with 0.
FbmPath fbm_path(Hurst h, std::span<const double> increments, SeedInfo seed_info = {});

// Keeps every factor-th grid point; factor must divide n_points.
FbmPath coarsen(const FbmPath& path, std::int64_t factor);

}  // namespace hurstlab
