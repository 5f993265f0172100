#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hurstlab/expansion.hpp"
#include "hurstlab/fbm.hpp"
#include "hurstlab/hurst.hpp"

namespace hurstlab {

enum class Integrator { euler, heun };

// One experiment = one config file. Defaults below match the desk-scale
// protocol; --paper-scale restores the full histogram/Monte-Carlo sizes.
struct ExperimentConfig {
    double h = 0.0;            // required
    std::int64_t n = 0;        // required
    std::string sde;           // required: builtin name, or "expr" with v1/v2
    std::string v1_expr;
    std::string v2_expr;
    double x0 = 1.0;
    std::int64_t hist_paths = 10000;
    std::int64_t mc_paths = 2000;
    std::int64_t oversample = 8;
    std::int64_t quad_n = 4096;
    std::uint64_t master_seed = 911;
    std::int64_t z_points = 401;
    std::filesystem::path out_dir = "out";
    FgnMethod method = FgnMethod::circulant;
    Integrator integrator = Integrator::euler;
    std::int64_t threads = 0;  // 0 = hardware concurrency
    double constants_tol = 1e-10;
    std::int64_t export_paths = 0;  // write the first k sample paths as t,x CSVs
};

// Reads the [experiment] table of a TOML file (flat key = value subset).
ExperimentConfig load_config(const std::filesystem::path& file);

// hist_paths = 1e5, mc_paths = 1e4.
void apply_paper_scale(ExperimentConfig& cfg);

struct SampleMoments {
    std::int64_t count = 0;
    double mean = 0.0;
    double sd = 0.0;
    double skewness = 0.0;
    double kurtosis_excess = 0.0;
};

struct ExperimentResult {
    SampleMoments moments;           // of sqrt(n) (H'_n - H) over kept paths
    std::int64_t skipped_hist = 0;   // degenerate paths, counted and excluded
    std::int64_t skipped_mc = 0;
    double l1_leading = 0.0;         // L1(histogram, leading curve)
    double l1_corrected = 0.0;
    double sup_leading = 0.0;
    double sup_corrected = 0.0;
    double mass_leading = 0.0;       // trapezoid integral over the z grid
    double mass_corrected = 0.0;
    double runtime_seconds = 0.0;
    std::filesystem::path hist_csv;
    std::filesystem::path curves_csv;
    std::filesystem::path summary_json;
    std::filesystem::path plot_script;
};

// Runs the full histogram + curve protocol and writes hist.csv, curves.csv,
// summary.json and plot.py into cfg.out_dir. The two CSVs are byte-stable
// for a fixed (config, master_seed); summary.json additionally carries the
// wall-clock runtime.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Replica helpers shared by the CLI and the tests.
struct HistogramBin {
    double left = 0.0;
    double right = 0.0;
    double density = 0.0;
};

// Freedman-Diaconis binning; density integrates to 1 over the emitted bins.
std::vector<HistogramBin> freedman_diaconis_histogram(std::vector<double> sample);

// Monte Carlo draws of the estimator error and of the path functionals.
std::vector<double> sample_rescaled_errors(const ExperimentConfig& cfg, std::int64_t paths,
                                           std::int64_t* skipped);
std::vector<PathFunctionals> sample_path_functionals(const ExperimentConfig& cfg,
                                                     std::int64_t paths, std::int64_t* skipped);

}  // namespace hurstlab
