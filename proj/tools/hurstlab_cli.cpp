// Command-line front end: constants, simulate, estimate, exponent,
// ordercheck, version. JSON goes to stdout; human-readable extras to stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "hurstlab/errors.hpp"
#include "hurstlab/estimator.hpp"
#include "hurstlab/experiment.hpp"
#include "hurstlab/exponent.hpp"
#include "hurstlab/graph_io.hpp"
#include "hurstlab/interval_calculus.hpp"
#include "hurstlab/path_io.hpp"
#include "hurstlab/version.hpp"

namespace {

using nlohmann::json;

int run_constants(double h, double tol, std::int64_t hard_cap) {
    const hurstlab::HurstConstants c = hurstlab::series_constants(hurstlab::Hurst(h), tol, hard_cap);
    json out{{"h", h},
             {"c2h", c.c2h},
             {"c_hat", c.c_hat},
             {"c_tilde", c.c_tilde},
             {"c_inf", c.c_inf},
             {"c_qtor", c.c_qtor},
             {"g_coeff", c.g_coeff},
             {"truncation_k", c.truncation_k},
             {"tol", c.tol},
             {"tail_bound", c.tail_bound}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_estimate(const std::string& path_file, std::int64_t n, std::optional<double> true_h) {
    const std::vector<double> values = hurstlab::read_path_csv(path_file);
    const hurstlab::QvRecord rec = hurstlab::estimate_from_path(values, n, true_h);
    json out{{"n", rec.n},
             {"v2_n", rec.v2_n},
             {"v2_2n", rec.v2_2n},
             {"h_hat_raw", rec.h_hat_raw},
             {"h_hat", rec.h_hat}};
    if (rec.rescaled_error) out["rescaled_error"] = *rec.rescaled_error;
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_exponent(const std::string& graph_file, std::optional<double> h) {
    std::ifstream in(graph_file, std::ios::binary);
    if (!in) throw hurstlab::IoError("cannot open '" + graph_file + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const hurstlab::WeightedGraph g = hurstlab::graph_from_json(buffer.str());
    const hurstlab::ExponentReport report = hurstlab::exponent(g);
    std::cout << hurstlab::exponent_report_to_json(report, h) << '\n';
    std::cerr << hurstlab::exponent_report_table(report, h);
    return 0;
}

int run_ordercheck(const std::string& name, double h, std::vector<std::int64_t> ns,
                   std::int64_t reps, std::uint64_t seed) {
    const hurstlab::Hurst hurst(h);
    json out{{"name", name}, {"h", h}, {"seed", seed}};

    hurstlab::AffineInH expected{};
    for (const auto& entry : hurstlab::builtin_catalog())
        if (entry.name == name) expected = entry.expected;
    out["exponent"] = {{"pretty", expected.pretty()}, {"value_at_h", expected.at(h)}};

    json rows = json::array();
    std::vector<double> norms;
    for (const std::int64_t n : ns) {
        const double exact = hurstlab::exact_l2_norm(name, n, hurst);
        json row{{"n", n}, {"exact", exact}};
        if (reps > 0) {
            const auto [mc, se] = hurstlab::mc_l2_norm(name, n, hurst, reps, seed);
            row["mc"] = mc;
            row["mc_se"] = se;
        }
        rows.push_back(std::move(row));
        norms.push_back(exact);
    }
    out["norms"] = std::move(rows);
    if (ns.size() >= 3) {
        out["slope"] = hurstlab::order_slope(ns, norms);
        out["slope_expected"] = expected.at(h);
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_simulate(const std::string& config_file, bool paper_scale) {
    hurstlab::ExperimentConfig cfg = hurstlab::load_config(config_file);
    if (paper_scale) hurstlab::apply_paper_scale(cfg);
    const hurstlab::ExperimentResult res = hurstlab::run_experiment(cfg);
    json out{{"hist_csv", res.hist_csv.string()},
             {"curves_csv", res.curves_csv.string()},
             {"summary_json", res.summary_json.string()},
             {"plot_script", res.plot_script.string()},
             {"kept_paths", res.moments.count},
             {"skipped", {{"hist", res.skipped_hist}, {"mc", res.skipped_mc}}},
             {"l1_leading", res.l1_leading},
             {"l1_corrected", res.l1_corrected},
             {"runtime_seconds", res.runtime_seconds}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hurst estimation laboratory for fractional SDEs"};
    app.require_subcommand(1);
    // --h is a domain option on several subcommands, so help is --help only.
    app.set_help_flag("--help", "print help");

    // constants
    double c_h = 0.7;
    double c_tol = 1e-10;
    std::int64_t c_cap = 65536;
    auto* constants = app.add_subcommand("constants", "series constants for one Hurst index");
    constants->set_help_flag("--help", "print help");
    constants->add_option("--h", c_h, "Hurst index in [0.5, 1); 0.5 is the test-mode boundary")
        ->required();
    constants->add_option("--tol", c_tol, "truncation tolerance");
    constants->add_option("--k-cap", c_cap, "hard cap on the series cutoff");

    // simulate
    std::string sim_config;
    bool paper_scale = false;
    auto* simulate = app.add_subcommand("simulate", "run a density-fit experiment from a config");
    simulate->set_help_flag("--help", "print help");
    simulate->add_option("--config", sim_config, "TOML config with an [experiment] table")
        ->required();
    simulate->add_flag("--paper-scale", paper_scale, "hist_paths=1e5, mc_paths=1e4");

    // estimate
    std::string est_path;
    std::int64_t est_n = 0;
    double est_true_h = -1.0;
    auto* estimate = app.add_subcommand("estimate", "estimator on a CSV path (t,value)");
    estimate->set_help_flag("--help", "print help");
    estimate->add_option("--path", est_path, "CSV file with 2n+1 uniform rows")->required();
    estimate->add_option("--n", est_n, "coarse grid size n")->required();
    estimate->add_option("--true-h", est_true_h, "include sqrt(n)(H'-H) for this H");

    // exponent
    std::string graph_file;
    double exp_h = -1.0;
    auto* exponent_cmd = app.add_subcommand("exponent", "exponent of a weighted graph file");
    exponent_cmd->set_help_flag("--help", "print help");
    exponent_cmd->add_option("--graph", graph_file, "graph JSON file")->required();
    exponent_cmd->add_option("--h", exp_h, "also evaluate the exponent at this H");

    // ordercheck
    std::string oc_name;
    double oc_h = 0.7;
    std::vector<std::int64_t> oc_ns;
    std::int64_t oc_reps = 0;
    std::uint64_t oc_seed = 911;
    auto* ordercheck = app.add_subcommand("ordercheck", "numeric order check of a catalog entry");
    ordercheck->set_help_flag("--help", "print help");
    ordercheck->add_option("--name", oc_name, "catalog id, e.g. fig1711")->required();
    ordercheck->add_option("--h", oc_h, "Hurst index")->required();
    ordercheck->add_option("--ns", oc_ns, "grid sizes, e.g. --ns 64 128 256")
        ->required()
        ->expected(-1);
    ordercheck->add_option("--reps", oc_reps, "Monte Carlo replicas (0 = exact only)");
    ordercheck->add_option("--seed", oc_seed, "master seed for the MC check");

    auto* version = app.add_subcommand("version", "print version");
    version->set_help_flag("--help", "print help");

    CLI11_PARSE(app, argc, argv);

    try {
        if (constants->parsed()) return run_constants(c_h, c_tol, c_cap);
        if (simulate->parsed()) return run_simulate(sim_config, paper_scale);
        if (estimate->parsed())
            return run_estimate(est_path, est_n,
                                est_true_h >= 0 ? std::optional<double>(est_true_h)
                                                : std::nullopt);
        if (exponent_cmd->parsed())
            return run_exponent(graph_file,
                                exp_h >= 0 ? std::optional<double>(exp_h) : std::nullopt);
        if (ordercheck->parsed()) return run_ordercheck(oc_name, oc_h, oc_ns, oc_reps, oc_seed);
        if (version->parsed()) {
            std::cout << hurstlab::kVersionString << '\n';
            return 0;
        }
    } catch (const hurstlab::Error& e) {
        nlohmann::json err{{"error", {{"type", e.kind()}, {"message", e.what()}}}};
        std::cout << err.dump(2) << '\n';
        return 1;
    } catch (const std::exception& e) {
        nlohmann::json err{{"error", {{"type", "internal"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << '\n';
        return 2;
    }
    return 0;
}
