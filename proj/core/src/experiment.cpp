#include "hurstlab/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "hurstlab/errors.hpp"
#include "hurstlab/estimator.hpp"
#include "hurstlab/interval_calculus.hpp"
#include "hurstlab/path_io.hpp"
#include "hurstlab/sde.hpp"
#include "hurstlab/version.hpp"

namespace hurstlab {

namespace {

using nlohmann::json;

// ----------------------------------------------------------------------
// Minimal TOML reader for one flat [experiment] table. Values are strings,
// integers, floats or booleans; '#' starts a comment outside quotes.
// ----------------------------------------------------------------------

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::string drop_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

std::map<std::string, std::string> parse_experiment_table(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open config '" + file.string() + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    bool in_experiment = false;
    bool saw_experiment = false;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(drop_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line == "[experiment]") {
                in_experiment = true;
                saw_experiment = true;
            } else {
                in_experiment = false;
            }
            continue;
        }
        if (!in_experiment) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument(file.string() + ":" + std::to_string(lineno) +
                                  ": expected key = value");
        const std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty() || value.empty())
            throw InvalidArgument(file.string() + ":" + std::to_string(lineno) +
                                  ": empty key or value");
        if (kv.count(key))
            throw InvalidArgument(file.string() + ":" + std::to_string(lineno) +
                                  ": duplicate key '" + key + "'");
        kv[key] = value;
    }
    if (!saw_experiment)
        throw InvalidArgument(file.string() + ": missing [experiment] table");
    return kv;
}

std::int64_t to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const std::int64_t out = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw InvalidArgument("config key '" + key + "': expected integer, got '" + v + "'");
    }
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw InvalidArgument("config key '" + key + "': expected number, got '" + v + "'");
    }
}

// ----------------------------------------------------------------------
// Deterministic data-parallel loop: results are written into per-index
// slots, so the outcome does not depend on the thread count.
// ----------------------------------------------------------------------

std::int64_t effective_threads(std::int64_t configured) {
    if (const char* env = std::getenv("HURSTLAB_THREADS")) {
        const std::int64_t t = std::strtoll(env, nullptr, 10);
        if (t >= 1) return t;
    }
    if (configured >= 1) return configured;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<std::int64_t>(hw);
}

template <typename Body>
void parallel_for(std::int64_t count, std::int64_t threads, Body&& body) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        body(0, count);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::int64_t chunk = (count + threads - 1) / threads;
    for (std::int64_t t = 0; t < threads; ++t) {
        const std::int64_t begin = t * chunk;
        const std::int64_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                body(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ----------------------------------------------------------------------
// Prepared state shared by the sampling loops.
// ----------------------------------------------------------------------

struct Prepared {
    Hurst h;
    CoefficientSpec coeffs;
    HurstConstants constants;
    FgnSampler sampler;
    std::int64_t m = 0;       // fine grid size = oversample * 2n
    std::int64_t quad_n = 0;  // largest divisor of m <= cfg.quad_n
    std::int64_t threads = 1;
};

CoefficientSpec coefficients_from_config(const ExperimentConfig& cfg) {
    if (cfg.sde == "expr") {
        if (cfg.v1_expr.empty() || cfg.v2_expr.empty())
            throw InvalidArgument("sde = \"expr\" requires v1 and v2 expressions");
        return make_coefficients(cfg.v1_expr, cfg.v2_expr);
    }
    return builtin_coefficients(cfg.sde);
}

Prepared prepare(const ExperimentConfig& cfg) {
    if (cfg.n < 4) throw InvalidArgument("config requires n >= 4");
    if (cfg.hist_paths < 1 || cfg.mc_paths < 1)
        throw InvalidArgument("config requires hist_paths >= 1 and mc_paths >= 1");
    if (cfg.oversample < 1) throw InvalidArgument("config requires oversample >= 1");
    if (cfg.z_points < 2) throw InvalidArgument("config requires z_points >= 2");
    Hurst h(cfg.h);
    h.require_rough_above_half();

    HurstConstants constants = series_constants(h, cfg.constants_tol);
    if (!(constants.c_inf > 0.0))
        throw Error("nonpositive_variance",
                    "c_inf = " + std::to_string(constants.c_inf) + " at h = " +
                        std::to_string(cfg.h) + "; the mixed normal limit is degenerate");

    const std::int64_t m = cfg.oversample * 2 * cfg.n;
    std::int64_t quad = std::min(cfg.quad_n, m);
    while (quad > 1 && m % quad != 0) --quad;

    return Prepared{h, coefficients_from_config(cfg), std::move(constants),
                    FgnSampler(h, m, cfg.method), m, quad, effective_threads(cfg.threads)};
}

SdePath solve_one(const Prepared& prep, const ExperimentConfig& cfg, RngStream& rng) {
    std::vector<double> inc(static_cast<std::size_t>(prep.m));
    prep.sampler.sample(rng, inc);
    const FbmPath driver = fbm_path(prep.h, inc);
    return cfg.integrator == Integrator::euler ? euler_solve(prep.coeffs, driver, cfg.x0)
                                               : heun_solve(prep.coeffs, driver, cfg.x0);
}

// ----------------------------------------------------------------------
// Statistics helpers.
// ----------------------------------------------------------------------

double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double idx = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = idx - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

SampleMoments compute_moments(const std::vector<double>& sample) {
    SampleMoments m;
    m.count = std::ssize(sample);
    if (sample.empty()) return m;
    const double n = static_cast<double>(sample.size());
    double mean = 0.0;
    for (const double v : sample) mean += v;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (const double v : sample) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    m.mean = mean;
    m.sd = std::sqrt(m2 * n / std::max(1.0, n - 1.0));
    m.skewness = m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;
    m.kurtosis_excess = m2 > 0 ? m4 / (m2 * m2) - 3.0 : 0.0;
    return m;
}

double interpolate_curve(const std::vector<double>& grid, const std::vector<double>& values,
                         double z) {
    if (grid.empty() || z < grid.front() || z > grid.back()) return 0.0;
    const auto it = std::lower_bound(grid.begin(), grid.end(), z);
    if (it == grid.begin()) return values.front();
    const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
    const std::size_t lo = hi - 1;
    const double span = grid[hi] - grid[lo];
    const double w = span > 0 ? (z - grid[lo]) / span : 0.0;
    return values[lo] * (1.0 - w) + values[hi] * w;
}

double trapezoid_mass(const std::vector<double>& grid, const std::vector<double>& values) {
    double mass = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        mass += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
    return mass;
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& file) {
    const auto kv = parse_experiment_table(file);
    ExperimentConfig cfg;
    bool have_h = false, have_n = false, have_sde = false;
    for (const auto& [key, value] : kv) {
        if (key == "h") {
            cfg.h = to_double(key, value);
            have_h = true;
        } else if (key == "n") {
            cfg.n = to_int(key, value);
            have_n = true;
        } else if (key == "sde") {
            cfg.sde = value;
            have_sde = true;
        } else if (key == "v1") {
            cfg.v1_expr = value;
        } else if (key == "v2") {
            cfg.v2_expr = value;
        } else if (key == "x0") {
            cfg.x0 = to_double(key, value);
        } else if (key == "hist_paths") {
            cfg.hist_paths = to_int(key, value);
        } else if (key == "mc_paths") {
            cfg.mc_paths = to_int(key, value);
        } else if (key == "oversample") {
            cfg.oversample = to_int(key, value);
        } else if (key == "quad_n") {
            cfg.quad_n = to_int(key, value);
        } else if (key == "master_seed") {
            cfg.master_seed = static_cast<std::uint64_t>(to_int(key, value));
        } else if (key == "z_points") {
            cfg.z_points = to_int(key, value);
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else if (key == "method") {
            if (value == "circulant")
                cfg.method = FgnMethod::circulant;
            else if (value == "cholesky")
                cfg.method = FgnMethod::cholesky;
            else
                throw InvalidArgument("config key 'method': unknown value '" + value + "'");
        } else if (key == "integrator") {
            if (value == "euler")
                cfg.integrator = Integrator::euler;
            else if (value == "heun")
                cfg.integrator = Integrator::heun;
            else
                throw InvalidArgument("config key 'integrator': unknown value '" + value + "'");
        } else if (key == "threads") {
            cfg.threads = to_int(key, value);
        } else if (key == "constants_tol") {
            cfg.constants_tol = to_double(key, value);
        } else if (key == "export_paths") {
            cfg.export_paths = to_int(key, value);
        } else {
            throw InvalidArgument("config key '" + key + "' is not recognized");
        }
    }
    if (!have_h || !have_n || !have_sde)
        throw InvalidArgument(file.string() + ": keys h, n and sde are required");
    return cfg;
}

void apply_paper_scale(ExperimentConfig& cfg) {
    cfg.hist_paths = 100000;
    cfg.mc_paths = 10000;
}

std::vector<HistogramBin> freedman_diaconis_histogram(std::vector<double> sample) {
    if (sample.empty()) throw InvalidArgument("histogram of an empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    const double lo = sample.front();
    const double hi = sample.back();

    if (lo == hi) {
        // All mass in one point; emit a single unit-width bin around it.
        return {HistogramBin{lo - 0.5, lo + 0.5, 1.0}};
    }
    const double iqr = quantile_sorted(sample, 0.75) - quantile_sorted(sample, 0.25);
    double width = 2.0 * iqr / std::cbrt(n);
    if (!(width > 0.0)) width = (hi - lo) / std::ceil(std::sqrt(n));
    std::int64_t bins = static_cast<std::int64_t>(std::ceil((hi - lo) / width));
    bins = std::clamp<std::int64_t>(bins, 1, 4096);
    width = (hi - lo) / static_cast<double>(bins);

    std::vector<std::int64_t> counts(static_cast<std::size_t>(bins), 0);
    for (const double v : sample) {
        std::int64_t b = static_cast<std::int64_t>((v - lo) / width);
        b = std::clamp<std::int64_t>(b, 0, bins - 1);
        ++counts[static_cast<std::size_t>(b)];
    }
    std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
    for (std::int64_t b = 0; b < bins; ++b) {
        out[static_cast<std::size_t>(b)].left = lo + static_cast<double>(b) * width;
        out[static_cast<std::size_t>(b)].right = lo + static_cast<double>(b + 1) * width;
        out[static_cast<std::size_t>(b)].density =
            static_cast<double>(counts[static_cast<std::size_t>(b)]) / (n * width);
    }
    return out;
}

std::vector<double> sample_rescaled_errors(const ExperimentConfig& cfg, std::int64_t paths,
                                           std::int64_t* skipped) {
    const Prepared prep = prepare(cfg);
    std::vector<double> values(static_cast<std::size_t>(paths));
    std::vector<unsigned char> ok(static_cast<std::size_t>(paths), 0);

    parallel_for(paths, prep.threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            RngStream rng =
                derive_stream(cfg.master_seed, "hist", static_cast<std::uint64_t>(i));
            const SdePath path = solve_one(prep, cfg, rng);
            std::vector<double> coarse(static_cast<std::size_t>(2 * cfg.n) + 1);
            for (std::int64_t k = 0; k <= 2 * cfg.n; ++k)
                coarse[static_cast<std::size_t>(k)] =
                    path.x_values[static_cast<std::size_t>(k * cfg.oversample)];
            try {
                const QvRecord rec = estimate_from_path(coarse, cfg.n, cfg.h);
                values[static_cast<std::size_t>(i)] = *rec.rescaled_error;
                ok[static_cast<std::size_t>(i)] = 1;
            } catch (const DegenerateVariationError&) {
                // counted below; the replica is dropped
            }
        }
    });

    std::vector<double> kept;
    kept.reserve(values.size());
    std::int64_t dropped = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (ok[i])
            kept.push_back(values[i]);
        else
            ++dropped;
    }
    if (skipped) *skipped = dropped;
    if (dropped * 100 > paths)
        throw Error("degenerate_paths",
                    std::to_string(dropped) + " of " + std::to_string(paths) +
                        " histogram paths were degenerate (> 1%); check coefficients and n");
    return kept;
}

std::vector<PathFunctionals> sample_path_functionals(const ExperimentConfig& cfg,
                                                     std::int64_t paths,
                                                     std::int64_t* skipped) {
    const Prepared prep = prepare(cfg);
    std::vector<PathFunctionals> values(static_cast<std::size_t>(paths));
    std::vector<unsigned char> ok(static_cast<std::size_t>(paths), 0);

    parallel_for(paths, prep.threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            RngStream rng = derive_stream(cfg.master_seed, "mc", static_cast<std::uint64_t>(i));
            const SdePath path = solve_one(prep, cfg, rng);
            try {
                values[static_cast<std::size_t>(i)] =
                    path_functionals(path, prep.coeffs, prep.constants, prep.quad_n);
                ok[static_cast<std::size_t>(i)] = 1;
            } catch (const DegenerateCoefficientError&) {
            }
        }
    });

    std::vector<PathFunctionals> kept;
    kept.reserve(values.size());
    std::int64_t dropped = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (ok[i])
            kept.push_back(values[i]);
        else
            ++dropped;
    }
    if (skipped) *skipped = dropped;
    if (dropped * 100 > paths)
        throw Error("degenerate_paths",
                    std::to_string(dropped) + " of " + std::to_string(paths) +
                        " Monte Carlo paths were degenerate (> 1%)");
    return kept;
}

namespace {

void write_hist_csv(const std::filesystem::path& file, const std::vector<HistogramBin>& bins) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot open '" + file.string() + "' for writing");
    out << "bin_left,bin_right,density\n";
    for (const auto& b : bins)
        out << format_double(b.left) << ',' << format_double(b.right) << ','
            << format_double(b.density) << '\n';
}

void write_curves_csv(const std::filesystem::path& file, const DensityCurve& curve) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot open '" + file.string() + "' for writing");
    out << "z,leading,corrected\n";
    for (std::size_t i = 0; i < curve.z_grid.size(); ++i)
        out << format_double(curve.z_grid[i]) << ',' << format_double(curve.leading[i]) << ','
            << format_double(curve.corrected[i]) << '\n';
}

void write_plot_script(const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot open '" + file.string() + "' for writing");
    out << R"PY(#!/usr/bin/env python3
# Renders hist.csv and curves.csv produced by `hurstlab simulate`.
import csv
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))

bins = list(csv.DictReader(open(os.path.join(here, "hist.csv"))))
curves = list(csv.DictReader(open(os.path.join(here, "curves.csv"))))

lefts = [float(b["bin_left"]) for b in bins]
widths = [float(b["bin_right"]) - float(b["bin_left"]) for b in bins]
dens = [float(b["density"]) for b in bins]
z = [float(c["z"]) for c in curves]
leading = [float(c["leading"]) for c in curves]
corrected = [float(c["corrected"]) for c in curves]

fig, ax = plt.subplots(figsize=(7, 4.5))
ax.bar(lefts, dens, width=widths, align="edge", color="#c8d8e8", edgecolor="#8aa4bc",
       linewidth=0.4, label="histogram")
ax.plot(z, leading, "--", color="#444444", label="mixed normal")
ax.plot(z, corrected, "-", color="#aa2222", label="expansion")
ax.set_xlabel("sqrt(n) (H'_n - H)")
ax.set_ylabel("density")
ax.legend()
fig.tight_layout()
target = os.path.join(here, "density_fit.png")
fig.savefig(target, dpi=150)
print(f"wrote {target}")
)PY";
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg_in) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = cfg_in;
    if (const char* env = std::getenv("HURSTLAB_OUT_DIR")) cfg.out_dir = env;

    ExperimentResult result;
    std::vector<double> errors = sample_rescaled_errors(cfg, cfg.hist_paths, &result.skipped_hist);
    std::vector<PathFunctionals> functionals =
        sample_path_functionals(cfg, cfg.mc_paths, &result.skipped_mc);

    result.moments = compute_moments(errors);

    // z grid: z_points equally spaced values across +-6 empirical sd.
    const double sd = result.moments.sd > 0 ? result.moments.sd : 1.0;
    std::vector<double> z_grid(static_cast<std::size_t>(cfg.z_points));
    for (std::int64_t i = 0; i < cfg.z_points; ++i)
        z_grid[static_cast<std::size_t>(i)] =
            -6.0 * sd + 12.0 * sd * static_cast<double>(i) / static_cast<double>(cfg.z_points - 1);

    const HurstConstants constants = series_constants(Hurst(cfg.h), cfg.constants_tol);
    const DensityCurve curve = expansion_density(z_grid, cfg.n, functionals, constants);

    const std::vector<HistogramBin> bins = freedman_diaconis_histogram(errors);
    for (const auto& b : bins) {
        const double center = 0.5 * (b.left + b.right);
        const double w = b.right - b.left;
        const double lead = interpolate_curve(curve.z_grid, curve.leading, center);
        const double corr = interpolate_curve(curve.z_grid, curve.corrected, center);
        result.l1_leading += std::abs(b.density - lead) * w;
        result.l1_corrected += std::abs(b.density - corr) * w;
        result.sup_leading = std::max(result.sup_leading, std::abs(b.density - lead));
        result.sup_corrected = std::max(result.sup_corrected, std::abs(b.density - corr));
    }
    result.mass_leading = trapezoid_mass(curve.z_grid, curve.leading);
    result.mass_corrected = trapezoid_mass(curve.z_grid, curve.corrected);

    std::filesystem::create_directories(cfg.out_dir);
    if (cfg.export_paths > 0) {
        const Prepared prep = prepare(cfg);
        for (std::int64_t i = 0; i < cfg.export_paths; ++i) {
            RngStream rng = derive_stream(cfg.master_seed, "hist", static_cast<std::uint64_t>(i));
            const SdePath path = solve_one(prep, cfg, rng);
            write_path_csv(cfg.out_dir / ("path_" + std::to_string(i) + ".csv"), path.x_values,
                           "x");
        }
    }
    result.hist_csv = cfg.out_dir / "hist.csv";
    result.curves_csv = cfg.out_dir / "curves.csv";
    result.summary_json = cfg.out_dir / "summary.json";
    result.plot_script = cfg.out_dir / "plot.py";
    write_hist_csv(result.hist_csv, bins);
    write_curves_csv(result.curves_csv, curve);
    write_plot_script(result.plot_script);

    result.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json summary;
    summary["version"] = std::string(kVersionString);
    summary["config"] = {
        {"h", cfg.h},
        {"n", cfg.n},
        {"sde", cfg.sde},
        {"v1", cfg.v1_expr},
        {"v2", cfg.v2_expr},
        {"x0", cfg.x0},
        {"hist_paths", cfg.hist_paths},
        {"mc_paths", cfg.mc_paths},
        {"oversample", cfg.oversample},
        {"quad_n", cfg.quad_n},
        {"master_seed", cfg.master_seed},
        {"z_points", cfg.z_points},
        {"out_dir", cfg.out_dir.string()},
        {"method", cfg.method == FgnMethod::circulant ? "circulant" : "cholesky"},
        {"integrator", cfg.integrator == Integrator::euler ? "euler" : "heun"},
        {"threads", cfg.threads},
        {"constants_tol", cfg.constants_tol},
        {"export_paths", cfg.export_paths},
    };
    summary["moments"] = {{"count", result.moments.count},
                          {"mean", result.moments.mean},
                          {"sd", result.moments.sd},
                          {"skewness", result.moments.skewness},
                          {"kurtosis_excess", result.moments.kurtosis_excess}};
    summary["skipped"] = {{"hist", result.skipped_hist}, {"mc", result.skipped_mc}};
    summary["distances"] = {{"l1_leading", result.l1_leading},
                            {"l1_corrected", result.l1_corrected},
                            {"sup_leading", result.sup_leading},
                            {"sup_corrected", result.sup_corrected}};
    summary["curve_mass"] = {{"leading", result.mass_leading},
                             {"corrected", result.mass_corrected}};
    summary["runtime_seconds"] = result.runtime_seconds;

    std::ofstream out(result.summary_json, std::ios::binary);
    if (!out) throw IoError("cannot open '" + result.summary_json.string() + "' for writing");
    out << summary.dump(2) << '\n';
    return result;
}

}  // namespace hurstlab
