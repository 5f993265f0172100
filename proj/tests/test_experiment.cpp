#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hurstlab/errors.hpp"
#include "hurstlab/experiment.hpp"

using namespace hurstlab;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    const auto dir = std::filesystem::temp_directory_path() / "hurstlab_test";
    std::filesystem::create_directories(dir);
    const auto file = dir / name;
    std::ofstream out(file, std::ios::binary);
    out << text;
    return file;
}

std::string slurp(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
    const auto file = write_temp("cfg_ok.toml", R"(# comment
[experiment]
h = 0.55            # trailing comment
n = 16
sde = "sde1"
hist_paths = 123
out_dir = "/tmp/somewhere"
integrator = "heun"
method = "cholesky"
)");
    const ExperimentConfig cfg = load_config(file);
    CHECK(cfg.h == 0.55);
    CHECK(cfg.n == 16);
    CHECK(cfg.sde == "sde1");
    CHECK(cfg.hist_paths == 123);
    CHECK(cfg.mc_paths == 2000);  // default
    CHECK(cfg.oversample == 8);   // default
    CHECK(cfg.master_seed == 911);
    CHECK(cfg.out_dir == "/tmp/somewhere");
    CHECK(cfg.integrator == Integrator::heun);
    CHECK(cfg.method == FgnMethod::cholesky);

    ExperimentConfig paper = cfg;
    apply_paper_scale(paper);
    CHECK(paper.hist_paths == 100000);
    CHECK(paper.mc_paths == 10000);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(load_config(write_temp("cfg_nosec.toml", "h = 0.6\n")), InvalidArgument);
    CHECK_THROWS_AS(
        load_config(write_temp("cfg_missing.toml", "[experiment]\nh = 0.6\nn = 8\n")),
        InvalidArgument);
    CHECK_THROWS_AS(load_config(write_temp(
                        "cfg_unknown.toml", "[experiment]\nh=0.6\nn=8\nsde=\"sde1\"\nfoo=1\n")),
                    InvalidArgument);
    CHECK_THROWS_AS(load_config(write_temp(
                        "cfg_badnum.toml", "[experiment]\nh=abc\nn=8\nsde=\"sde1\"\n")),
                    InvalidArgument);
    CHECK_THROWS_AS(load_config("/nonexistent/nowhere.toml"), IoError);
}

TEST_CASE("freedman-diaconis histogram integrates to one") {
    RngStream rng(4);
    std::vector<double> sample(5000);
    for (auto& v : sample) v = rng.next_normal();
    const auto bins = freedman_diaconis_histogram(sample);
    CHECK(bins.size() > 10);
    double mass = 0.0;
    for (const auto& b : bins) {
        CHECK(b.right > b.left);
        mass += b.density * (b.right - b.left);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));

    SUBCASE("single observation gives a single bin") {
        const auto single = freedman_diaconis_histogram({1.25});
        REQUIRE(single.size() == 1);
        CHECK(single[0].density * (single[0].right - single[0].left) ==
              doctest::Approx(1.0));
    }
}

namespace {

ExperimentConfig small_config(const std::filesystem::path& out) {
    ExperimentConfig cfg;
    cfg.h = 0.55;
    cfg.n = 8;
    cfg.sde = "sde1";
    cfg.hist_paths = 400;
    cfg.mc_paths = 120;
    cfg.oversample = 4;
    cfg.z_points = 101;
    cfg.out_dir = out;
    return cfg;
}

}  // namespace

TEST_CASE("run_experiment writes the full artifact set deterministically") {
    const auto base = std::filesystem::temp_directory_path() / "hurstlab_test";
    const auto cfg_a = small_config(base / "run_a");
    const auto cfg_b = small_config(base / "run_b");

    const ExperimentResult a = run_experiment(cfg_a);
    const ExperimentResult b = run_experiment(cfg_b);

    CHECK(std::filesystem::exists(a.hist_csv));
    CHECK(std::filesystem::exists(a.curves_csv));
    CHECK(std::filesystem::exists(a.summary_json));
    CHECK(std::filesystem::exists(a.plot_script));

    // byte-identical CSVs across runs with one config
    CHECK(slurp(a.hist_csv) == slurp(b.hist_csv));
    CHECK(slurp(a.curves_csv) == slurp(b.curves_csv));

    CHECK(a.moments.count + a.skipped_hist == cfg_a.hist_paths);
    CHECK(a.mass_corrected == doctest::Approx(1.0).epsilon(0.01));
    CHECK(a.mass_leading == doctest::Approx(1.0).epsilon(0.01));

    // histogram mass is 1 over emitted bins regardless of skips
    std::istringstream hist(slurp(a.hist_csv));
    std::string line;
    std::getline(hist, line);
    CHECK(line == "bin_left,bin_right,density");
    double mass = 0.0;
    while (std::getline(hist, line)) {
        double left = 0, right = 0, dens = 0;
        std::sscanf(line.c_str(), "%lf,%lf,%lf", &left, &right, &dens);
        mass += dens * (right - left);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("expansion beats the leading term at desk scale") {
    auto cfg = small_config(std::filesystem::temp_directory_path() / "hurstlab_test" / "fit");
    cfg.n = 16;
    cfg.oversample = 8;
    cfg.hist_paths = 2000;
    cfg.mc_paths = 400;
    const ExperimentResult res = run_experiment(cfg);
    CHECK(res.l1_corrected < res.l1_leading);
}

TEST_CASE("single-path histogram still produces curves") {
    auto cfg = small_config(std::filesystem::temp_directory_path() / "hurstlab_test" / "one");
    cfg.hist_paths = 1;
    cfg.mc_paths = 50;
    const ExperimentResult res = run_experiment(cfg);
    CHECK(res.moments.count == 1);
    CHECK(std::filesystem::exists(res.curves_csv));
    std::istringstream hist(slurp(res.hist_csv));
    std::string line;
    int rows = 0;
    while (std::getline(hist, line)) ++rows;
    CHECK(rows == 2);  // header + one bin
}

TEST_CASE("a constant path is degenerate and aborts the experiment") {
    // X == x0 exactly when both coefficients vanish, so every quadratic
    // variation is literally zero and every replica is skipped.
    auto cfg = small_config(std::filesystem::temp_directory_path() / "hurstlab_test" / "deg");
    cfg.sde = "expr";
    cfg.v1_expr = "0";
    cfg.v2_expr = "0";
    std::int64_t skipped = 0;
    try {
        sample_rescaled_errors(cfg, 50, &skipped);
        FAIL("expected degenerate_paths error");
    } catch (const Error& e) {
        CHECK(e.kind() == "degenerate_paths");
        CHECK(skipped == 50);
    }
}

TEST_CASE("invalid configs are rejected up front") {
    auto cfg = small_config(std::filesystem::temp_directory_path() / "hurstlab_test" / "bad");
    cfg.h = 0.5;  // boundary is rejected for simulation
    std::int64_t skipped = 0;
    CHECK_THROWS_AS(sample_rescaled_errors(cfg, 10, &skipped), InvalidArgument);
    cfg.h = 0.55;
    cfg.n = 2;
    CHECK_THROWS_AS(sample_rescaled_errors(cfg, 10, &skipped), InvalidArgument);
}
