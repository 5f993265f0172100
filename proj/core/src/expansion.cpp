#include "hurstlab/expansion.hpp"

#include <cmath>
#include <string>

#include "hurstlab/errors.hpp"

namespace hurstlab {

namespace {

constexpr double kTwoLog2 = 1.3862943611198906188344642429164;  // 2 log 2

double normal_pdf(double z, double variance) {
    return std::exp(-z * z / (2.0 * variance)) /
           std::sqrt(6.283185307179586476925286766559 * variance);
}

void require_positive_variances(std::span<const PathFunctionals> samples) {
    if (samples.empty()) throw InvalidArgument("density evaluation requires nonempty samples");
    for (const auto& s : samples)
        if (!(s.g_inf > 0.0))
            throw Error("nonpositive_variance",
                        "sample with g_inf = " + std::to_string(s.g_inf) +
                            "; the mixed normal limit needs c_inf > 0");
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (const double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

PathFunctionals path_functionals(const SdePath& path, const CoefficientSpec& coeffs,
                                 const HurstConstants& constants, std::int64_t quad_n) {
    const std::int64_t m = path.n_points;
    if (quad_n < 1 || quad_n > m || m % quad_n != 0)
        throw InvalidArgument("quad_n = " + std::to_string(quad_n) +
                              " must divide the path grid size " + std::to_string(m));
    const std::int64_t stride = m / quad_n;

    double i2 = 0.0, i4 = 0.0, i6 = 0.0;
    for (std::int64_t i = 0; i < quad_n; ++i) {
        const double v1 = coeffs.eval_v1(path.x_values[static_cast<std::size_t>(i * stride)]);
        const double v1sq = v1 * v1;
        i2 += v1sq;
        i4 += v1sq * v1sq;
        i6 += v1sq * v1sq * v1sq;
    }
    const double inv_qn = 1.0 / static_cast<double>(quad_n);
    i2 *= inv_qn;
    i4 *= inv_qn;
    i6 *= inv_qn;

    PathFunctionals f;
    f.v_inf = constants.c2h * i2;
    if (!(f.v_inf > 1e-300))
        throw DegenerateCoefficientError("limit variation is numerically zero (v_inf = " +
                                         std::to_string(f.v_inf) + ")");
    f.g_hat = i4 / (f.v_inf * f.v_inf);
    f.g_inf = constants.c_inf * f.g_hat;
    const double v1_start = coeffs.eval_v1(path.x_values.front());
    const double v1_end = coeffs.eval_v1(path.x_values.back());
    f.a_n = -0.5 * constants.c2h * (v1_start * v1_start + v1_end * v1_end) / f.v_inf;
    f.m6 = i6;
    f.c3 = constants.c_qtor * i6 / (f.v_inf * f.v_inf * f.v_inf);
    return f;
}

std::vector<double> mixed_normal_density(std::span<const double> z_grid,
                                         std::span<const PathFunctionals> samples) {
    require_positive_variances(samples);
    const double inv_r = 1.0 / static_cast<double>(samples.size());
    std::vector<double> out(z_grid.size());
    std::vector<double> terms(samples.size());
    for (std::size_t zi = 0; zi < z_grid.size(); ++zi) {
        const double z = z_grid[zi];
        for (std::size_t s = 0; s < samples.size(); ++s)
            terms[s] = normal_pdf(z, samples[s].g_inf / (kTwoLog2 * kTwoLog2));
        out[zi] = pairwise_sum(terms) * inv_r;
    }
    return out;
}

DensityCurve expansion_density(std::span<const double> z_grid, std::int64_t n,
                               std::span<const PathFunctionals> samples,
                               const HurstConstants& constants) {
    if (n < 2) throw InvalidArgument("expansion_density requires n >= 2");
    require_positive_variances(samples);

    DensityCurve curve;
    curve.z_grid.assign(z_grid.begin(), z_grid.end());
    curve.n = n;
    curve.mc_replicas = std::ssize(samples);
    curve.leading.resize(z_grid.size());
    curve.corrected.resize(z_grid.size());

    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const double inv_r = 1.0 / static_cast<double>(samples.size());
    std::vector<double> lead_terms(samples.size());
    std::vector<double> corr_terms(samples.size());

    for (std::size_t zi = 0; zi < z_grid.size(); ++zi) {
        const double w = kTwoLog2 * z_grid[zi];
        for (std::size_t s = 0; s < samples.size(); ++s) {
            const double g = samples[s].g_inf;
            const double phi = normal_pdf(w, g);
            lead_terms[s] = phi;
            const double third = samples[s].c3 * (w * w * w / (g * g * g) - 3.0 * w / (g * g));
            const double first = 0.5 * samples[s].a_n * (w / g);
            const double perturb = constants.g_coeff * (2.0 * w - w * w * w / g);
            corr_terms[s] = (third + first + perturb) * phi;
        }
        const double lead_mean = pairwise_sum(lead_terms) * inv_r;
        const double corr_mean = pairwise_sum(corr_terms) * inv_r;
        curve.leading[zi] = kTwoLog2 * lead_mean;
        curve.corrected[zi] = kTwoLog2 * (lead_mean + inv_sqrt_n * corr_mean);
    }
    return curve;
}

}  // namespace hurstlab
