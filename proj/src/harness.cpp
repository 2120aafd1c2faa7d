#include "ceu/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ceu/conjugate_limit.hpp"
#include "ceu/random_states.hpp"

namespace ceu::harness {

using json = nlohmann::json;

namespace {

constexpr const char* kCsvHeader =
    "# ceu results v1\n"
    "index,scenario,state,alpha,beta,width_f,width_g,dzeta,dxi,entropy,bound_family,"
    "dim,first,second,bound,margin,discarded\n";

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string f9(double v) { return fmt(v, "%.9g"); }
std::string f17(double v) { return fmt(v, "%.17g"); }

ScenarioKind parse_scenario(const std::string& s) {
    if (s == "prep" || s == "preparation") return ScenarioKind::preparation;
    if (s == "one") return ScenarioKind::one;
    if (s == "two") return ScenarioKind::two;
    if (s == "pegg-barnett") return ScenarioKind::pegg_barnett;
    throw std::invalid_argument("unknown scenario '" + s + "'");
}

std::string scenario_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::preparation: return "prep";
        case ScenarioKind::one: return "one";
        case ScenarioKind::two: return "two";
        case ScenarioKind::pegg_barnett: return "pegg-barnett";
    }
    return "?";
}

AcceptanceProfile make_profile(const ProfileSpec& spec, double width) {
    if (spec.shape == "gaussian") return AcceptanceProfile::gaussian(width);
    if (spec.shape == "top-hat") return AcceptanceProfile::top_hat(width);
    throw std::invalid_argument("unknown profile shape '" + spec.shape + "'");
}

struct NamedState {
    std::string label;
    StateEnsemble ensemble;
};

std::vector<NamedState> build_states(const ExperimentConfig& cfg, const Lattice& lat) {
    std::vector<NamedState> out;
    const StateSpec& s = cfg.states;
    if (s.kind == "gaussian") {
        out.push_back({"gaussian", pure(make_gaussian(lat, s.center, s.width, s.momentum))});
    } else if (s.kind == "superposition") {
        Rng rng(s.seed);
        for (int i = 0; i < s.count; ++i)
            out.push_back({"sup-" + std::to_string(i), pure(random_superposition(lat, rng))});
    } else if (s.kind == "mixture") {
        Rng rng(s.seed);
        for (int i = 0; i < s.count; ++i)
            out.push_back({"mix-" + std::to_string(i), random_mixture(lat, rng)});
    } else {
        throw std::invalid_argument("unknown state kind '" + s.kind + "'");
    }
    return out;
}

struct RowTask {
    ResultRow row;            // labels pre-filled
    const StateEnsemble* ens = nullptr;
};

} // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg.scenario = parse_scenario(j.value("scenario", "one"));
        if (j.contains("lattice")) {
            const json& l = j.at("lattice");
            cfg.n_points = l.value("n_points", cfg.n_points);
            cfg.y_min = l.value("y_min", cfg.y_min);
            cfg.y_max = l.value("y_max", cfg.y_max);
        }
        if (j.contains("states")) {
            const json& s = j.at("states");
            cfg.states.kind = s.value("kind", cfg.states.kind);
            cfg.states.center = s.value("center", cfg.states.center);
            cfg.states.width = s.value("width", cfg.states.width);
            cfg.states.momentum = s.value("momentum", cfg.states.momentum);
            cfg.states.count = s.value("count", cfg.states.count);
            cfg.states.seed = s.value("seed", cfg.states.seed);
        }
        auto read_profile = [&](const char* key, ProfileSpec& p) {
            if (!j.contains("profiles") || !j.at("profiles").contains(key)) return;
            const json& q = j.at("profiles").at(key);
            p.shape = q.value("shape", p.shape);
            p.width = q.value("width", p.width);
        };
        read_profile("f", cfg.profile_f);
        read_profile("g", cfg.profile_g);
        if (j.contains("orders")) cfg.alphas = j.at("orders").get<std::vector<double>>();
        if (j.contains("entropy")) {
            const std::string fam = j.at("entropy").get<std::string>();
            if (fam == "renyi") cfg.family = EntropyFamily::renyi;
            else if (fam == "tsallis") cfg.family = EntropyFamily::tsallis;
            else throw std::invalid_argument("unknown entropy family '" + fam + "'");
        }
        if (j.contains("bound_family")) {
            const std::string b = j.at("bound_family").get<std::string>();
            if (b == "general") cfg.bounds = BoundFamily::general;
            else if (b == "position-momentum") cfg.bounds = BoundFamily::position_momentum;
            else throw std::invalid_argument("unknown bound family '" + b + "'");
        }
        if (j.contains("bins")) {
            const json& b = j.at("bins");
            if (b.contains("delta_zeta")) cfg.delta_zeta = b.at("delta_zeta").get<double>();
            if (b.contains("delta_xi")) cfg.delta_xi = b.at("delta_xi").get<double>();
        }
        cfg.zeta_stride = j.value("zeta_stride", cfg.zeta_stride);
        cfg.tolerance = j.value("tolerance", cfg.tolerance);
        if (j.contains("sweep")) {
            const json& s = j.at("sweep");
            if (s.contains("width_f")) cfg.sweep_width_f = s.at("width_f").get<std::vector<double>>();
            if (s.contains("width_g")) cfg.sweep_width_g = s.at("width_g").get<std::vector<double>>();
        }
        if (j.contains("pegg_barnett")) {
            const json& p = j.at("pegg_barnett");
            if (p.contains("dims")) cfg.pb_dims = p.at("dims").get<std::vector<int>>();
            cfg.pb_theta = p.value("theta", cfg.pb_theta);
            cfg.pb_scale = p.value("scale", cfg.pb_scale);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string ValidationReport::to_string() const {
    std::string out;
    for (const std::string& e : errors) out += "error: " + e + "\n";
    for (const std::string& n : notes) out += n + "\n";
    if (ok()) out += "ok\n";
    return out;
}

ValidationReport validate(const ExperimentConfig& cfg) {
    ValidationReport rep;
    if (cfg.n_points < 2 || cfg.n_points % 2 != 0)
        rep.errors.push_back("lattice n_points must be even and at least 2");
    if (!(cfg.y_max > cfg.y_min)) rep.errors.push_back("lattice window is empty");
    if (cfg.alphas.empty()) rep.errors.push_back("at least one entropy order is required");
    for (double a : cfg.alphas) {
        if (!(a > 0.5)) {
            rep.errors.push_back("order alpha = " + f9(a) +
                                 ": derived beta = alpha/(2 alpha - 1) is non-positive");
            continue;
        }
        EntropyOrderPair pair = EntropyOrderPair::from_alpha(a);
        rep.notes.push_back("alpha = " + f9(a) + ": beta = " + f9(pair.beta) +
                            ", mu = " + f9(pair.mu()) + ", kappa = " + f9(pair.kappa()));
        if (cfg.scenario == ScenarioKind::preparation && !(a > 1.0 + kOrderOneBand))
            rep.errors.push_back("preparation scenario requires alpha > 1 (got " + f9(a) + ")");
    }
    const bool has_bins = cfg.delta_zeta.has_value() && cfg.delta_xi.has_value();
    if (cfg.delta_zeta.has_value() != cfg.delta_xi.has_value())
        rep.errors.push_back("bins require both delta_zeta and delta_xi");
    if (has_bins && (!(*cfg.delta_zeta > 0.0) || !(*cfg.delta_xi > 0.0)))
        rep.errors.push_back("bin widths must be positive");
    if (cfg.family == EntropyFamily::tsallis && !has_bins)
        rep.errors.push_back("Tsallis entropies are defined for binned distributions only; "
                             "provide bins.delta_zeta and bins.delta_xi");
    if (has_bins && *cfg.delta_zeta * *cfg.delta_xi > 2.0 * M_PI)
        rep.notes.push_back("warning: delta_zeta * delta_xi = " +
                            f9(*cfg.delta_zeta * *cfg.delta_xi) +
                            " exceeds 2 pi; the binned bound is negative and the relation "
                            "holds trivially (bins should be chosen small enough)");
    if (cfg.scenario == ScenarioKind::preparation && !has_bins)
        rep.errors.push_back("preparation scenario requires bins");
    for (const ProfileSpec* p : {&cfg.profile_f, &cfg.profile_g}) {
        if (!(p->width > 0.0)) rep.errors.push_back("profile width must be positive");
        if (p->shape != "gaussian" && p->shape != "top-hat")
            rep.errors.push_back("unknown profile shape '" + p->shape + "'");
    }
    for (double w : cfg.sweep_width_f)
        if (!(w > 0.0)) rep.errors.push_back("sweep width_f entries must be positive");
    for (double w : cfg.sweep_width_g)
        if (!(w > 0.0)) rep.errors.push_back("sweep width_g entries must be positive");
    if (cfg.zeta_stride < 1) rep.errors.push_back("zeta_stride must be at least 1");
    if (cfg.scenario == ScenarioKind::pegg_barnett) {
        if (cfg.pb_dims.empty()) rep.errors.push_back("pegg-barnett scenario needs dims");
        for (int d : cfg.pb_dims)
            if (d < 2) rep.errors.push_back("pegg-barnett dims must be at least 2");
        if (!(cfg.pb_theta > 0.0 && cfg.pb_theta < 1.0))
            rep.errors.push_back("pegg-barnett theta must lie strictly in (0, 1)");
    }
    if (cfg.states.kind != "gaussian" && cfg.states.count < 1)
        rep.errors.push_back("state count must be at least 1");
    if (cfg.states.kind == "gaussian") {
        // compatibility: the packet tails must fit the window
        const double margin = std::min(cfg.states.center - cfg.y_min,
                                       cfg.y_max - cfg.states.center);
        if (margin < 7.0 * cfg.states.width)
            rep.errors.push_back("gaussian state does not fit the lattice window "
                                 "(needs 7 sigma of clearance)");
    }
    return rep;
}

namespace {

void compute_row(ResultRow& row, const ExperimentConfig& cfg, const Lattice& lat,
                 const StateEnsemble* ens) {
    const auto t0 = std::chrono::steady_clock::now();
    if (cfg.scenario == ScenarioKind::pegg_barnett) {
        LimitSchedule sched;
        sched.dims = {row.dim};
        sched.scale_c = cfg.pb_scale;
        sched.theta = cfg.pb_theta;
        LimitRow lr = limit_study(sched).front();
        row.first = lr.commutator_deviation;
        row.second = lr.gamma;
        row.bound = 0.0;
        row.margin = 0.0;
    } else {
        ScenarioConfig sc;
        sc.state = *ens;
        sc.f = make_profile(cfg.profile_f, row.width_f);
        sc.g = make_profile(cfg.profile_g, row.width_g);
        sc.orders = EntropyOrderPair::from_alpha(row.alpha);
        sc.family = cfg.family;
        sc.bounds = cfg.bounds;
        sc.zeta_stride = cfg.zeta_stride;
        if (row.dzeta > 0.0) {
            sc.zeta_bins = BinSpec::uniform(lat.y_min, lat.y_max, row.dzeta);
            sc.xi_bins = BinSpec::uniform(lat.x_min(), lat.x_min() + lat.n_points * lat.dx(),
                                          row.dxi);
        }
        if (cfg.scenario == ScenarioKind::preparation) {
            PreparationSlacks slacks =
                preparation_check(*ens, sc.orders, sc.bounds, sc.f, sc.g, *sc.zeta_bins,
                                  *sc.xi_bins);
            ProbabilityDensity w = ensemble_density(*ens, Representation::position);
            ProbabilityDensity W = ensemble_density(*ens, Representation::conjugate);
            row.first = renyi_density(w, sc.orders.alpha);
            row.second = renyi_density(W, sc.orders.beta);
            row.bound = bound_value(sc.orders, sc.bounds, EntropyFamily::renyi, std::nullopt);
            row.margin = slacks.min_slack();
        } else {
            UncertaintyReport rep = cfg.scenario == ScenarioKind::one ? scenario_one(sc)
                                                                      : scenario_two(sc);
            row.first = rep.first;
            row.second = rep.second;
            row.bound = rep.bound;
            row.margin = rep.margin;
            row.discarded = rep.discarded_mass;
        }
    }
    const auto t1 = std::chrono::steady_clock::now();
    row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (!std::isfinite(row.first) || !std::isfinite(row.second) || !std::isfinite(row.bound) ||
        !std::isfinite(row.margin))
        throw std::runtime_error("non-finite value in result row");
}

int resolve_threads(const RunOptions& opts) {
    if (opts.threads > 0) return opts.threads;
    if (const char* env = std::getenv("CEU_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

} // namespace

RunResult run(const ExperimentConfig& cfg, const RunOptions& opts) {
    RunResult result;
    std::ostringstream log;
    const double tolerance = opts.tolerance_override.value_or(cfg.tolerance);

    ValidationReport vrep = validate(cfg);
    for (const std::string& n : vrep.notes) log << n << "\n";
    if (!vrep.ok()) {
        for (const std::string& e : vrep.errors) log << "error: " << e << "\n";
        result.exit_code = exit_config_error;
        result.log = log.str();
        return result;
    }

    const Lattice lat(cfg.n_points, cfg.y_min, cfg.y_max);
    std::vector<RowTask> tasks;
    std::vector<NamedState> states;
    if (cfg.scenario == ScenarioKind::pegg_barnett) {
        int idx = 0;
        for (int dim : cfg.pb_dims) {
            RowTask t;
            t.row.index = idx++;
            t.row.scenario = scenario_name(cfg.scenario);
            t.row.state = "mid-gaussian";
            t.row.dim = dim;
            t.row.entropy = "-";
            t.row.bound_family = "-";
            tasks.push_back(std::move(t));
        }
    } else {
        states = build_states(cfg, lat);
        const std::vector<double> wf =
            cfg.sweep_width_f.empty() ? std::vector<double>{cfg.profile_f.width}
                                      : cfg.sweep_width_f;
        const std::vector<double> wg =
            cfg.sweep_width_g.empty() ? std::vector<double>{cfg.profile_g.width}
                                      : cfg.sweep_width_g;
        int idx = 0;
        for (const NamedState& ns : states)
            for (double swf : wf)
                for (double swg : wg)
                    for (double a : cfg.alphas) {
                        RowTask t;
                        t.row.index = idx++;
                        t.row.scenario = scenario_name(cfg.scenario);
                        t.row.state = ns.label;
                        t.row.alpha = a;
                        t.row.beta = EntropyOrderPair::from_alpha(a).beta;
                        t.row.width_f = swf;
                        t.row.width_g = swg;
                        t.row.dzeta = cfg.delta_zeta.value_or(0.0);
                        t.row.dxi = cfg.delta_xi.value_or(0.0);
                        t.row.entropy = cfg.family == EntropyFamily::renyi ? "renyi" : "tsallis";
                        t.row.bound_family =
                            cfg.bounds == BoundFamily::general ? "general" : "position-momentum";
                        t.ens = &ns.ensemble;
                        tasks.push_back(std::move(t));
                    }
    }

    const int threads = resolve_threads(opts);
    log << "rows: " << tasks.size() << ", workers: " << threads << ", tolerance: " << f9(tolerance)
        << "\n";

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                compute_row(tasks[i].row, cfg, lat, tasks[i].ens);
            } catch (const std::exception& e) {
                tasks[i].row.error = e.what();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    bool coverage_failed = false;
    bool margin_failed = false;
    for (RowTask& t : tasks) {
        if (!t.row.error.empty()) {
            log << "error: row " << t.row.index << " (" << t.row.state << "): " << t.row.error
                << "\n";
            coverage_failed = true;
        } else if (t.row.margin < -tolerance) {
            log << "violation: row " << t.row.index << " (" << t.row.state
                << "): margin = " << f9(t.row.margin) << "\n";
            margin_failed = true;
        }
        result.rows.push_back(std::move(t.row));
    }

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    auto write_file = [&](const std::string& name, const std::string& text) {
        std::ofstream out(fs::path(opts.out_dir) / name, std::ios::binary);
        if (!out) {
            log << "error: cannot write " << name << "\n";
            result.exit_code = exit_io_error;
            return;
        }
        out << text;
    };
    if (opts.format == "csv" || opts.format == "both")
        write_file("results.csv", csv_text(result.rows));
    if (opts.format == "json" || opts.format == "both")
        write_file("results.json", json_text(result.rows, cfg, tolerance));

    if (result.exit_code == exit_ok) {
        if (coverage_failed) result.exit_code = exit_coverage_error;
        else if (margin_failed) result.exit_code = exit_margin_violation;
    }
    log << "exit code: " << result.exit_code << "\n";
    result.log = log.str();
    write_file("run.log", result.log);
    return result;
}

std::string csv_text(const std::vector<ResultRow>& rows) {
    std::string out = kCsvHeader;
    for (const ResultRow& r : rows) {
        out += std::to_string(r.index) + ',' + r.scenario + ',' + r.state + ',' + f9(r.alpha) +
               ',' + f9(r.beta) + ',' + f9(r.width_f) + ',' + f9(r.width_g) + ',' + f9(r.dzeta) +
               ',' + f9(r.dxi) + ',' + r.entropy + ',' + r.bound_family + ',' +
               std::to_string(r.dim) + ',' + f9(r.first) + ',' + f9(r.second) + ',' +
               f9(r.bound) + ',' + f9(r.margin) + ',' + f9(r.discarded) + '\n';
    }
    return out;
}

std::string json_text(const std::vector<ResultRow>& rows, const ExperimentConfig& cfg,
                      double tolerance) {
    std::string out = "{\n  \"meta\": {\n    \"format\": \"ceu results v1\",\n";
    out += "    \"scenario\": \"" + scenario_name(cfg.scenario) + "\",\n";
    out += "    \"tolerance\": " + f17(tolerance) + ",\n";
    out += "    \"n_points\": " + std::to_string(cfg.n_points) + ",\n";
    out += "    \"window\": [" + f17(cfg.y_min) + ", " + f17(cfg.y_max) + "]\n  },\n";
    out += "  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ResultRow& r = rows[i];
        out += "    {\"index\": " + std::to_string(r.index) + ", \"scenario\": \"" + r.scenario +
               "\", \"state\": \"" + r.state + "\", \"alpha\": " + f17(r.alpha) +
               ", \"beta\": " + f17(r.beta) + ", \"width_f\": " + f17(r.width_f) +
               ", \"width_g\": " + f17(r.width_g) + ", \"dzeta\": " + f17(r.dzeta) +
               ", \"dxi\": " + f17(r.dxi) + ", \"entropy\": \"" + r.entropy +
               "\", \"bound_family\": \"" + r.bound_family +
               "\", \"dim\": " + std::to_string(r.dim) + ", \"first\": " + f17(r.first) +
               ", \"second\": " + f17(r.second) + ", \"bound\": " + f17(r.bound) +
               ", \"margin\": " + f17(r.margin) + ", \"discarded\": " + f17(r.discarded) +
               ", \"runtime_ms\": " + f17(r.runtime_ms) + "}";
        out += (i + 1 < rows.size()) ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

std::vector<std::string> demo_names() { return {"saturation", "width-sweep", "pegg-barnett"}; }

std::string demo_config(const std::string& name) {
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
    throw std::invalid_argument("unknown demo '" + name + "' (try: saturation, width-sweep, "
                                "pegg-barnett)");
}

} // namespace ceu::harness
