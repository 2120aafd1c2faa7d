#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ceu/harness.hpp"

using namespace ceu;
using namespace ceu::harness;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has_note(const ValidationReport& rep, const std::string& needle) {
    for (const std::string& n : rep.notes)
        if (n.find(needle) != std::string::npos) return true;
    return false;
}

bool has_error(const ValidationReport& rep, const std::string& needle) {
    for (const std::string& e : rep.errors)
        if (e.find(needle) != std::string::npos) return true;
    return false;
}

const char* kMinimalConfig = R"({
  "scenario": "one",
  "lattice": {"n_points": 256, "y_min": -10.0, "y_max": 10.0},
  "states": {"kind": "gaussian", "width": 1.0},
  "profiles": {"f": {"shape": "gaussian", "width": 0.2},
               "g": {"shape": "gaussian", "width": 0.2}},
  "orders": [1.0],
  "tolerance": 1e-3
})";

} // namespace

TEST_CASE("config parsing") {
    CHECK_THROWS_AS(ExperimentConfig::from_json_text("{nope"), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"scenario": "three"})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_file("/nonexistent/cfg.json"),
                    std::invalid_argument);

    ExperimentConfig cfg = ExperimentConfig::from_json_text(kMinimalConfig);
    CHECK(cfg.scenario == ScenarioKind::one);
    CHECK(cfg.n_points == 256);
    CHECK(cfg.profile_f.width == 0.2);
}

TEST_CASE("validation diagnostics") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(kMinimalConfig);
    CHECK(validate(cfg).ok());
    CHECK(has_note(validate(cfg), "kappa"));

    cfg.alphas = {0.4};
    CHECK(has_error(validate(cfg), "beta"));

    cfg = ExperimentConfig::from_json_text(kMinimalConfig);
    cfg.family = EntropyFamily::tsallis;
    CHECK(has_error(validate(cfg), "Tsallis"));

    cfg = ExperimentConfig::from_json_text(kMinimalConfig);
    cfg.delta_zeta = 3.0;
    cfg.delta_xi = 3.0;
    CHECK(validate(cfg).ok());
    CHECK(has_note(validate(cfg), "small enough"));

    cfg = ExperimentConfig::from_json_text(kMinimalConfig);
    cfg.states.center = 9.0;
    CHECK(has_error(validate(cfg), "window"));
}

TEST_CASE("demo configs validate") {
    for (const std::string& name : demo_names()) {
        ExperimentConfig cfg = ExperimentConfig::from_json_text(demo_config(name));
        CHECK(validate(cfg).ok());
    }
    CHECK_THROWS_AS(demo_config("bogus"), std::invalid_argument);
}

TEST_CASE("minimal run produces one clean row and files") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(kMinimalConfig);
    RunOptions opts;
    opts.out_dir = (std::filesystem::temp_directory_path() / "ceu_harness_min").string();
    RunResult res = run(cfg, opts);
    CHECK(res.exit_code == exit_ok);
    REQUIRE(res.rows.size() == 1);
    CHECK(res.rows[0].margin >= 0.0);
    CHECK(res.rows[0].error.empty());
    for (const char* name : {"results.csv", "results.json", "run.log"})
        CHECK(std::filesystem::exists(std::filesystem::path(opts.out_dir) / name));
    const std::string csv = slurp(std::filesystem::path(opts.out_dir) / "results.csv");
    CHECK(csv.rfind("# ceu results v1", 0) == 0);
}

TEST_CASE("sweep shape and determinism across worker counts") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(kMinimalConfig);
    cfg.states.kind = "superposition";
    cfg.states.count = 2;
    cfg.states.seed = 9;
    cfg.sweep_width_f = {0.1, 0.5, 1.0};
    cfg.alphas = {1.0, 2.0};
    cfg.scenario = ScenarioKind::one;

    RunOptions one;
    one.out_dir = (std::filesystem::temp_directory_path() / "ceu_harness_t1").string();
    one.threads = 1;
    RunResult r1 = run(cfg, one);
    CHECK(r1.exit_code == exit_ok);
    CHECK(r1.rows.size() == 2 * 3 * 2);

    RunOptions four = one;
    four.out_dir = (std::filesystem::temp_directory_path() / "ceu_harness_t4").string();
    four.threads = 4;
    RunResult r4 = run(cfg, four);
    CHECK(csv_text(r1.rows) == csv_text(r4.rows));
}

TEST_CASE("invalid config routes to the config exit code") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(kMinimalConfig);
    cfg.alphas = {0.3};
    RunOptions opts;
    opts.out_dir = (std::filesystem::temp_directory_path() / "ceu_harness_bad").string();
    CHECK(run(cfg, opts).exit_code == exit_config_error);
}
