// ceu: successive conjugate-measurement uncertainty experiments.
//
// Subcommands:
//   run <config>       execute the sweep and write results.csv/json + run.log
//   validate <config>  schema and constraint checks, no computation
//   demo <name>        print a built-in configuration (saturation,
//                      width-sweep, pegg-barnett)

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "ceu/ceu.h"

namespace {

// demo configs are duplicated here so the CLI stays a pure C-API client
const char* demo_text(const std::string& name) {
    if (name == "saturation")
        return R"({
  "scenario": "one",
  "lattice": {"n_points": 1024, "y_min": -12.0, "y_max": 12.0},
  "states": {"kind": "gaussian", "center": 0.0, "width": 1.0, "momentum": 0.0},
  "profiles": {"f": {"shape": "gaussian", "width": 0.01},
               "g": {"shape": "gaussian", "width": 0.01}},
  "orders": [1.0],
  "entropy": "renyi",
  "bound_family": "position-momentum",
  "tolerance": 1e-3
}
)";
    if (name == "width-sweep")
        return R"({
  "scenario": "one",
  "lattice": {"n_points": 512, "y_min": -10.0, "y_max": 10.0},
  "states": {"kind": "superposition", "count": 5, "seed": 11},
  "profiles": {"f": {"shape": "gaussian", "width": 0.2},
               "g": {"shape": "gaussian", "width": 0.2}},
  "sweep": {"width_f": [0.05, 0.2, 1.0], "width_g": [0.05, 0.2, 1.0]},
  "orders": [1.0, 2.0],
  "entropy": "renyi",
  "bound_family": "general",
  "tolerance": 1e-3
}
)";
    if (name == "pegg-barnett")
        return R"({
  "scenario": "pegg-barnett",
  "pegg_barnett": {"dims": [64, 128, 256], "theta": 0.5, "scale": 1.0},
  "tolerance": 1e-2
}
)";
    return nullptr;
}

int open_config(const std::string& path, ceu_experiment** exp) {
    char err[512] = {0};
    const ceu_status st = ceu_open(path.c_str(), exp, err, sizeof(err));
    if (st != CEU_OK) {
        std::fprintf(stderr, "error: %s\n", err[0] ? err : "cannot load config");
        return CEU_CONFIG_ERROR;
    }
    return CEU_OK;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"successive conjugate-measurement uncertainty experiments"};
    app.require_subcommand(1);

    std::string config_path, demo_name;
    std::string out_dir = ".";
    std::string format = "both";
    int threads = 0;
    double tolerance = -1.0;

    CLI::App* run_cmd = app.add_subcommand("run", "execute a sweep");
    run_cmd->add_option("config", config_path, "JSON configuration file")->required();
    run_cmd->add_option("--out-dir", out_dir, "output directory (default: .)");
    run_cmd->add_option("--threads", threads,
                        "worker count (default: CEU_THREADS env var, else 1)");
    run_cmd->add_option("--tolerance", tolerance, "margin budget override");
    run_cmd->add_option("--format", format, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}));

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a configuration");
    validate_cmd->add_option("config", config_path, "JSON configuration file")->required();

    CLI::App* demo_cmd = app.add_subcommand("demo", "print a built-in configuration");
    demo_cmd->add_option("name", demo_name, "saturation | width-sweep | pegg-barnett")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : CEU_CONFIG_ERROR;
    }

    if (demo_cmd->parsed()) {
        const char* text = demo_text(demo_name);
        if (!text) {
            std::fprintf(stderr, "error: unknown demo '%s'\n", demo_name.c_str());
            return CEU_CONFIG_ERROR;
        }
        std::fputs(text, stdout);
        return 0;
    }

    ceu_experiment* exp = nullptr;
    if (const int st = open_config(config_path, &exp); st != CEU_OK) return st;

    int code = 0;
    if (validate_cmd->parsed()) {
        const ceu_status st = ceu_validate(exp);
        std::fputs(ceu_last_error(exp), stdout);
        code = (st == CEU_OK) ? 0 : CEU_CONFIG_ERROR;
    } else {
        const ceu_status st =
            ceu_run(exp, out_dir.c_str(), threads, tolerance, format.c_str());
        std::fputs(ceu_last_log(exp), stdout);
        if (st == CEU_INTERNAL_ERROR)
            std::fprintf(stderr, "error: %s\n", ceu_last_error(exp));
        code = static_cast<int>(st);
    }
    ceu_close(exp);
    return code;
}
