#include "hurstlab/fbm.hpp"

#include <fftw3.h>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <mutex>
#include <string>

#include "hurstlab/errors.hpp"
#include "hurstlab/interval_calculus.hpp"

namespace hurstlab {

namespace {

// The FFTW planner has global state; executing a plan is thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Largest m for which an m x m Cholesky factor is kept in memory (m^2 doubles;
// 2048 -> 32 MiB).
constexpr std::int64_t kCholeskyMemCap = 2048;
constexpr double kEigenvalueTol = 1e-12;

struct FftwPlanDeleter {
    void operator()(fftw_plan p) const {
        if (p) {
            std::lock_guard<std::mutex> lock(planner_mutex());
            fftw_destroy_plan(p);
        }
    }
};

}  // namespace

struct FgnSampler::Impl {
    Hurst h;
    std::int64_t m;
    FgnMethod method;
    bool fallback = false;

    // circulant: sqrt(lambda_k / (2 * 2m)) for k = 0..2m-1, plus a c2c plan.
    std::vector<double> spectral_weight;
    std::unique_ptr<std::remove_pointer_t<fftw_plan>, FftwPlanDeleter> plan;

    // cholesky: lower factor of the m x m increment covariance.
    Eigen::MatrixXd chol_lower;

    explicit Impl(Hurst h_) : h(h_), m(0), method(FgnMethod::circulant) {}

    void build_cholesky() {
        if (m > kCholeskyMemCap)
            throw InvalidArgument("cholesky fGn plan capped at m = " +
                                  std::to_string(kCholeskyMemCap) +
                                  "; use the circulant method for m = " + std::to_string(m));
        const double scale = std::pow(static_cast<double>(m), -2.0 * h.value());
        Eigen::MatrixXd cov(m, m);
        std::vector<double> gamma(static_cast<std::size_t>(m));
        for (std::int64_t k = 0; k < m; ++k) gamma[static_cast<std::size_t>(k)] = fgn_autocov(h, k);
        for (std::int64_t i = 0; i < m; ++i)
            for (std::int64_t j = 0; j < m; ++j)
                cov(i, j) = scale * gamma[static_cast<std::size_t>(std::llabs(i - j))];
        Eigen::LLT<Eigen::MatrixXd> llt(cov);
        if (llt.info() != Eigen::Success)
            throw InvalidArgument("fGn covariance Cholesky factorization failed");
        chol_lower = llt.matrixL();
        method = FgnMethod::cholesky;
    }

    // Davies-Harte: embed the covariance into a circulant of length 2m and
    // take the real part of a weighted spectrum transform.
    bool try_build_circulant() {
        const std::int64_t two_m = 2 * m;
        const double scale = std::pow(static_cast<double>(m), -2.0 * h.value());
        std::vector<std::complex<double>> buf(static_cast<std::size_t>(two_m));
        for (std::int64_t k = 0; k <= m; ++k)
            buf[static_cast<std::size_t>(k)] = scale * fgn_autocov(h, k);
        for (std::int64_t k = 1; k < m; ++k)
            buf[static_cast<std::size_t>(two_m - k)] = buf[static_cast<std::size_t>(k)];

        std::vector<std::complex<double>> eig(static_cast<std::size_t>(two_m));
        {
            std::lock_guard<std::mutex> lock(planner_mutex());
            fftw_plan p = fftw_plan_dft_1d(static_cast<int>(two_m),
                                           reinterpret_cast<fftw_complex*>(buf.data()),
                                           reinterpret_cast<fftw_complex*>(eig.data()),
                                           FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
            fftw_execute(p);
            fftw_destroy_plan(p);
        }

        double max_eig = 0.0;
        for (const auto& e : eig) max_eig = std::max(max_eig, e.real());
        spectral_weight.resize(static_cast<std::size_t>(two_m));
        for (std::int64_t k = 0; k < two_m; ++k) {
            double lambda = eig[static_cast<std::size_t>(k)].real();
            if (lambda < 0.0) {
                if (lambda < -kEigenvalueTol * max_eig) return false;  // genuine negativity
                lambda = 0.0;
            }
            spectral_weight[static_cast<std::size_t>(k)] =
                std::sqrt(lambda / (2.0 * static_cast<double>(two_m)));
        }
        // Real diagonal weights at k = 0 and k = m carry the full variance.
        spectral_weight[0] *= std::sqrt(2.0);
        spectral_weight[static_cast<std::size_t>(m)] *= std::sqrt(2.0);

        {
            // Plan on scratch arrays; sampling uses the new-array execute
            // interface, and FFTW_UNALIGNED lifts the alignment requirement.
            std::vector<std::complex<double>> in(static_cast<std::size_t>(two_m));
            std::vector<std::complex<double>> tmp(static_cast<std::size_t>(two_m));
            std::lock_guard<std::mutex> lock(planner_mutex());
            plan.reset(fftw_plan_dft_1d(static_cast<int>(two_m),
                                        reinterpret_cast<fftw_complex*>(in.data()),
                                        reinterpret_cast<fftw_complex*>(tmp.data()), FFTW_FORWARD,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED));
        }
        method = FgnMethod::circulant;
        return true;
    }

    void sample_circulant(RngStream& rng, std::span<double> out) const {
        const std::int64_t two_m = 2 * m;
        std::vector<std::complex<double>> spec(static_cast<std::size_t>(two_m));
        std::vector<std::complex<double>> time(static_cast<std::size_t>(two_m));
        spec[0] = spectral_weight[0] * rng.next_normal();
        spec[static_cast<std::size_t>(m)] =
            spectral_weight[static_cast<std::size_t>(m)] * rng.next_normal();
        for (std::int64_t k = 1; k < m; ++k) {
            const double a = rng.next_normal();
            const double b = rng.next_normal();
            const double w = spectral_weight[static_cast<std::size_t>(k)];
            spec[static_cast<std::size_t>(k)] = {w * a, w * b};
            spec[static_cast<std::size_t>(two_m - k)] = {w * a, -w * b};
        }
        fftw_execute_dft(plan.get(), reinterpret_cast<fftw_complex*>(spec.data()),
                         reinterpret_cast<fftw_complex*>(time.data()));
        for (std::int64_t k = 0; k < m; ++k)
            out[static_cast<std::size_t>(k)] = time[static_cast<std::size_t>(k)].real();
    }

    void sample_cholesky(RngStream& rng, std::span<double> out) const {
        Eigen::VectorXd z(m);
        for (std::int64_t k = 0; k < m; ++k) z(k) = rng.next_normal();
        Eigen::Map<Eigen::VectorXd>(out.data(), m) =
            chol_lower.triangularView<Eigen::Lower>() * z;
    }
};

FgnSampler::FgnSampler(Hurst h, std::int64_t m, FgnMethod method)
    : impl_(std::make_unique<Impl>(h)) {
    h.require_rough_above_half();
    if (m < 2) throw InvalidArgument("fGn sampler requires m >= 2");
    impl_->m = m;
    if (method == FgnMethod::cholesky) {
        impl_->build_cholesky();
    } else {
        if (!impl_->try_build_circulant()) {
            impl_->build_cholesky();
            impl_->fallback = true;
        }
    }
}

FgnSampler::~FgnSampler() = default;
FgnSampler::FgnSampler(FgnSampler&&) noexcept = default;
FgnSampler& FgnSampler::operator=(FgnSampler&&) noexcept = default;

void FgnSampler::sample(RngStream& rng, std::span<double> out) const {
    if (std::ssize(out) != impl_->m)
        throw InvalidArgument("fGn output span must have length m = " + std::to_string(impl_->m));
    if (impl_->method == FgnMethod::circulant)
        impl_->sample_circulant(rng, out);
    else
        impl_->sample_cholesky(rng, out);
}

std::vector<double> FgnSampler::sample(RngStream& rng) const {
    std::vector<double> out(static_cast<std::size_t>(impl_->m));
    sample(rng, out);
    return out;
}

Hurst FgnSampler::h() const { return impl_->h; }
std::int64_t FgnSampler::m() const { return impl_->m; }
FgnMethod FgnSampler::method() const { return impl_->method; }
bool FgnSampler::fell_back_to_cholesky() const { return impl_->fallback; }

FbmPath fbm_path(Hurst h, std::span<const double> increments, SeedInfo seed_info) {
    if (increments.empty()) throw InvalidArgument("fbm_path requires nonempty increments");
    FbmPath path(h);
    path.n_points = std::ssize(increments);
    path.values.resize(increments.size() + 1);
    path.values[0] = 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < increments.size(); ++k) {
        acc += increments[k];
        path.values[k + 1] = acc;
    }
    path.seed_info = std::move(seed_info);
    return path;
}

FbmPath coarsen(const FbmPath& path, std::int64_t factor) {
    if (factor < 1) throw InvalidArgument("coarsen factor must be >= 1");
    if (path.n_points % factor != 0)
        throw InvalidArgument("coarsen factor " + std::to_string(factor) +
                              " does not divide grid size " + std::to_string(path.n_points));
    FbmPath out(path.h);
    out.n_points = path.n_points / factor;
    out.values.resize(static_cast<std::size_t>(out.n_points) + 1);
    for (std::int64_t k = 0; k <= out.n_points; ++k)
        out.values[static_cast<std::size_t>(k)] =
            path.values[static_cast<std::size_t>(k * factor)];
    out.seed_info = path.seed_info;
    return out;
}

}  // namespace hurstlab
