#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ceu/scenarios.hpp"

namespace ceu::harness {

enum class ScenarioKind { preparation, one, two, pegg_barnett };

enum ExitCode {
    exit_ok = 0,
    exit_margin_violation = 1,
    exit_config_error = 2,
    exit_coverage_error = 3,
    exit_io_error = 4,
};

struct StateSpec {
    std::string kind = "gaussian"; // gaussian | superposition | mixture
    double center = 0.0, width = 1.0, momentum = 0.0;
    int count = 1; // number of random states for the random kinds
    std::uint64_t seed = 1;
};

struct ProfileSpec {
    std::string shape = "gaussian"; // gaussian | top-hat
    double width = 0.1;
};

struct ExperimentConfig {
    ScenarioKind scenario = ScenarioKind::one;
    int n_points = 512;
    double y_min = -10.0, y_max = 10.0;
    StateSpec states;
    ProfileSpec profile_f, profile_g;
    std::vector<double> alphas{1.0};
    EntropyFamily family = EntropyFamily::renyi;
    BoundFamily bounds = BoundFamily::general;
    std::optional<double> delta_zeta, delta_xi;
    int zeta_stride = 1;
    double tolerance = 1e-3;
    std::vector<double> sweep_width_f, sweep_width_g; // override profile widths
    // pegg-barnett scenario
    std::vector<int> pb_dims{64, 128, 256};
    double pb_theta = 0.5, pb_scale = 1.0;

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> notes;
    bool ok() const { return errors.empty(); }
    std::string to_string() const;
};

ValidationReport validate(const ExperimentConfig& cfg);

struct ResultRow {
    int index = 0;
    std::string scenario;
    std::string state;
    double alpha = 0.0, beta = 0.0;
    double width_f = 0.0, width_g = 0.0;
    double dzeta = 0.0, dxi = 0.0; // 0 when unbinned
    std::string entropy;
    std::string bound_family;
    int dim = 0; // pegg-barnett only
    double first = 0.0, second = 0.0, bound = 0.0, margin = 0.0;
    double discarded = 0.0;
    double runtime_ms = 0.0;
    std::string error; // nonempty if the row failed
};

struct RunOptions {
    std::string out_dir = ".";
    int threads = 0;               // 0: CEU_THREADS env var, else 1
    std::string format = "both";   // csv | json | both
    std::optional<double> tolerance_override;
};

struct RunResult {
    std::vector<ResultRow> rows;
    int exit_code = exit_ok;
    std::string log;
};

/// Executes the Cartesian sweep and writes results.csv / results.json /
/// run.log under out_dir. Rows are emitted in configuration order no matter
/// how many workers ran them.
RunResult run(const ExperimentConfig& cfg, const RunOptions& opts);

std::string csv_text(const std::vector<ResultRow>& rows);
std::string json_text(const std::vector<ResultRow>& rows, const ExperimentConfig& cfg,
                      double tolerance);

/// Built-in demo configurations (JSON text) by name.
std::vector<std::string> demo_names();
std::string demo_config(const std::string& name);

} // namespace ceu::harness
