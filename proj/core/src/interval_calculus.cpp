#include "hurstlab/interval_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "hurstlab/errors.hpp"

namespace hurstlab {

namespace {

// rho_hat at large |j| is a fourth difference of |.|^2H, so the closed form
// cancels catastrophically in double (relative loss ~ |j|^4). All closed-form
// kernels are therefore evaluated in 80-bit long double.
long double pow_abs(long double x, long double p) {
    return x == 0.0L ? 0.0L : powl(fabsl(x), p);
}

long double interval_inner_ld(long double two_h, long double a, long double b, long double c,
                              long double d) {
    if (a == b || c == d) return 0.0L;
    return 0.5L * (pow_abs(d - a, two_h) + pow_abs(c - b, two_h) - pow_abs(c - a, two_h) -
                   pow_abs(d - b, two_h));
}

long double rho_hat_ld(long double two_h, std::int64_t j) {
    const long double x = static_cast<long double>(j);
    return interval_inner_ld(two_h, 0, 1, x, x + 1) - interval_inner_ld(two_h, 0, 1, x - 1, x) -
           interval_inner_ld(two_h, -1, 0, x, x + 1) + interval_inner_ld(two_h, -1, 0, x - 1, x);
}

long double rho_tilde_ld(long double two_h, std::int64_t j) {
    const long double x = static_cast<long double>(j);
    const long double s = interval_inner_ld(two_h, 0, 1, x, x + 2) -
                          interval_inner_ld(two_h, 0, 1, x - 2, x) -
                          interval_inner_ld(two_h, -1, 0, x, x + 2) +
                          interval_inner_ld(two_h, -1, 0, x - 2, x);
    return powl(2.0L, -two_h) * s;
}

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// Decay envelopes |rho(k)| <= C (|k| v 1)^-alpha with alpha = 4 - 2H, and the
// l1 norms S = sum |rho|; both estimated once from a probe window.
struct DecayInfo {
    double alpha;
    double c_hat;
    double c_tilde;
    double s_hat;
    double s_tilde;
};

DecayInfo estimate_decay(long double two_h) {
    DecayInfo d{};
    d.alpha = 4.0 - static_cast<double>(two_h);
    long double ch = 0.0L, ct = 0.0L, sh = 0.0L, st = 0.0L;
    for (std::int64_t k = -64; k <= 64; ++k) {
        const long double rh = fabsl(rho_hat_ld(two_h, k));
        const long double rt = fabsl(rho_tilde_ld(two_h, k));
        sh += rh;
        st += rt;
        if (std::llabs(k) >= 2) {
            const long double w = powl(static_cast<long double>(std::llabs(k)),
                                       static_cast<long double>(d.alpha));
            ch = std::max(ch, rh * w);
            ct = std::max(ct, rt * w);
        }
    }
    d.c_hat = 2.0 * static_cast<double>(ch);
    d.c_tilde = 2.0 * static_cast<double>(ct);
    // l1 tails beyond the probe window, from the envelope.
    const double a1 = d.alpha - 1.0;
    d.s_hat = static_cast<double>(sh) + 2.0 * d.c_hat * std::pow(64.0, -a1) / a1;
    d.s_tilde = static_cast<double>(st) + 2.0 * d.c_tilde * std::pow(64.0, -a1) / a1;
    return d;
}

// Truncation-error bound for all constants at cutoff K. Each piece follows
// the same pattern: a two-sided integral-comparison tail
//   sum_{|k|>K} (C |k|^-alpha)(D |k|^-alpha) <= 2 C D K^(1-2a)/(2a-1)
// with convolution envelopes D obtained from
//   (|x| * |y|)(m) <= 2^alpha (C_x S_y + C_y S_x) (|m| v 1)^-alpha.
double tail_bound_at(const DecayInfo& d, double two_h, std::int64_t k) {
    const double a = d.alpha;
    const double kk = static_cast<double>(k);
    const double two_sided = 2.0 * std::pow(kk, 1.0 - 2.0 * a) / (2.0 * a - 1.0);

    const double tail_c_hat = d.c_hat * d.c_hat * two_sided;
    const double tail_c_tilde = d.c_tilde * d.c_tilde * two_sided;
    const double tail_c_inf = 3.0 * tail_c_hat + std::pow(2.0, two_h + 1.0) * tail_c_tilde;

    const double conv_hh = std::pow(2.0, a) * 2.0 * d.c_hat * d.s_hat;
    const double conv_tt = std::pow(2.0, a) * 2.0 * d.c_tilde * d.s_tilde;
    const double conv_ht = std::pow(2.0, a) * (d.c_hat * d.s_tilde + d.c_tilde * d.s_hat);
    const double mix = std::pow(2.0, a) * d.c_tilde * d.s_hat + std::pow(4.0, a) * d.c_hat * d.s_tilde;

    const double t1 = 2.0 * d.c_hat * conv_hh * two_sided;
    const double t2 = (d.c_hat * conv_tt * std::pow(2.0, -a) + d.c_tilde * mix) * two_sided;
    const double t3 = 2.0 * d.c_tilde * conv_ht * two_sided;
    const double tail_c_qtor =
        t1 + std::pow(2.0, two_h + 1.0) * t2 + std::pow(2.0, two_h) * t3;

    return std::max({tail_c_hat, tail_c_tilde, tail_c_inf, tail_c_qtor});
}

HurstConstants sum_series(Hurst h, std::int64_t k, double tol, double tail_bound) {
    const long double two_h = 2.0L * static_cast<long double>(h.value());

    // rho_hat is needed up to |i1 - i2| <= 2K, rho_tilde up to |2 i1 - i2| <= 3K.
    std::vector<long double> rh(static_cast<std::size_t>(4 * k + 1));
    std::vector<long double> rt(static_cast<std::size_t>(6 * k + 1));
    for (std::int64_t j = -2 * k; j <= 2 * k; ++j)
        rh[static_cast<std::size_t>(j + 2 * k)] = rho_hat_ld(two_h, j);
    for (std::int64_t j = -3 * k; j <= 3 * k; ++j)
        rt[static_cast<std::size_t>(j + 3 * k)] = rho_tilde_ld(two_h, j);
    const auto RH = [&](std::int64_t j) { return static_cast<double>(rh[static_cast<std::size_t>(j + 2 * k)]); };
    const auto RT = [&](std::int64_t j) { return static_cast<double>(rt[static_cast<std::size_t>(j + 3 * k)]); };

    HurstConstants out(h);
    out.truncation_k = k;
    out.tol = tol;
    out.tail_bound = tail_bound;
    out.c2h = static_cast<double>(4.0L - powl(2.0L, two_h));

    out.rho_hat_table.resize(static_cast<std::size_t>(2 * k + 1));
    out.rho_tilde_table.resize(static_cast<std::size_t>(2 * k + 1));
    KahanSum c_hat, c_tilde;
    for (std::int64_t j = -k; j <= k; ++j) {
        const double a = RH(j);
        const double b = RT(j);
        out.rho_hat_table[static_cast<std::size_t>(j + k)] = a;
        out.rho_tilde_table[static_cast<std::size_t>(j + k)] = b;
        c_hat.add(a * a);
        c_tilde.add(b * b);
    }
    out.c_hat = c_hat.sum;
    out.c_tilde = c_tilde.sum;

    const double pow_2h1 = static_cast<double>(powl(2.0L, two_h + 1.0L));
    const double pow_2h = static_cast<double>(powl(2.0L, two_h));
    out.c_inf = 3.0 * out.c_hat - pow_2h1 * out.c_tilde;

    // The three double sums are accumulated separately; inner sums in plain
    // double, outer sums compensated.
    KahanSum t1, t2, t3;
    for (std::int64_t i1 = -k; i1 <= k; ++i1) {
        double in1 = 0.0, in2 = 0.0, in3 = 0.0;
        for (std::int64_t i2 = -k; i2 <= k; ++i2) {
            in1 += RH(i1 - i2) * RH(i2);
            in2 += RT(i2) * RT(2 * i1 - i2);
            in3 += RT(i2) * RH(i1 - i2);
        }
        t1.add(RH(i1) * in1);
        t2.add(RH(i1) * in2);
        t3.add(RT(i1) * in3);
    }
    out.c_qtor = t1.sum - pow_2h1 * t2.sum + pow_2h * t3.sum;
    out.g_coeff = 0.5 * out.c_hat / (3.0 * out.c_hat - 2.0 * pow_2h * out.c_tilde);
    return out;
}

}  // namespace

double interval_inner(Hurst h, double a, double b, double c, double d) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
        throw InvalidArgument("interval_inner requires finite endpoints");
    return static_cast<double>(
        interval_inner_ld(2.0L * static_cast<long double>(h.value()), a, b, c, d));
}

double fgn_autocov(Hurst h, std::int64_t k) {
    const long double two_h = 2.0L * static_cast<long double>(h.value());
    const long double x = static_cast<long double>(k);
    return static_cast<double>(interval_inner_ld(two_h, 0, 1, x, x + 1));
}

double rho_hat(Hurst h, std::int64_t j) {
    return static_cast<double>(rho_hat_ld(2.0L * static_cast<long double>(h.value()), j));
}

double rho_tilde(Hurst h, std::int64_t j) {
    return static_cast<double>(rho_tilde_ld(2.0L * static_cast<long double>(h.value()), j));
}

double HurstConstants::rho_hat_at(std::int64_t j) const {
    if (std::llabs(j) > truncation_k)
        throw InvalidArgument("rho_hat table lookup beyond truncation_k = " +
                              std::to_string(truncation_k));
    return rho_hat_table[static_cast<std::size_t>(j + truncation_k)];
}

double HurstConstants::rho_tilde_at(std::int64_t j) const {
    if (std::llabs(j) > truncation_k)
        throw InvalidArgument("rho_tilde table lookup beyond truncation_k = " +
                              std::to_string(truncation_k));
    return rho_tilde_table[static_cast<std::size_t>(j + truncation_k)];
}

HurstConstants series_constants(Hurst h, double tol, std::int64_t hard_cap) {
    if (!(tol > 0.0)) throw InvalidArgument("series_constants requires tol > 0");
    const long double two_h = 2.0L * static_cast<long double>(h.value());
    const DecayInfo decay = estimate_decay(two_h);

    std::int64_t k = 64;
    while (k < hard_cap && tail_bound_at(decay, static_cast<double>(two_h), k) > tol) k *= 2;
    if (tail_bound_at(decay, static_cast<double>(two_h), k) > tol) {
        const double achieved = tail_bound_at(decay, static_cast<double>(two_h), hard_cap);
        throw TruncationError("series_constants: cutoff beyond hard cap " +
                                  std::to_string(hard_cap) + " needed for tol " +
                                  std::to_string(tol) + "; achievable bound " +
                                  std::to_string(achieved),
                              achieved);
    }
    // Shrink back to the smallest adequate K.
    std::int64_t lo = k / 2, hi = k;
    while (lo + 1 < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (tail_bound_at(decay, static_cast<double>(two_h), mid) <= tol)
            hi = mid;
        else
            lo = mid;
    }
    k = std::max<std::int64_t>(hi, 64);
    return sum_series(h, k, tol, tail_bound_at(decay, static_cast<double>(two_h), k));
}

namespace detail {
HurstConstants series_constants_with_k(Hurst h, std::int64_t k, double tol, double tail_bound) {
    if (k < 1) throw InvalidArgument("series_constants_with_k requires k >= 1");
    return sum_series(h, k, tol, tail_bound);
}
}  // namespace detail

}  // namespace hurstlab
