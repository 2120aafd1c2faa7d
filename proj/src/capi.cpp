#include "ceu/ceu.h"

#include <cmath>
#include <cstring>
#include <string>

#include "ceu/entropy.hpp"
#include "ceu/harness.hpp"

using namespace ceu;
using namespace ceu::harness;

struct ceu_experiment {
    ExperimentConfig config;
    RunResult last_run;
    std::string last_log;
    std::string last_error;
};

namespace {

void copy_msg(char* buf, size_t cap, const std::string& msg) {
    if (!buf || cap == 0) return;
    const size_t n = std::min(cap - 1, msg.size());
    std::memcpy(buf, msg.data(), n);
    buf[n] = '\0';
}

ceu_status open_impl(ceu_experiment** out, char* err_buf, size_t err_cap, bool from_file,
                     const char* arg) {
    if (!out || !arg) return CEU_INVALID_ARGUMENT;
    *out = nullptr;
    try {
        auto* exp = new ceu_experiment;
        exp->config = from_file ? ExperimentConfig::from_file(arg)
                                : ExperimentConfig::from_json_text(arg);
        *out = exp;
        return CEU_OK;
    } catch (const std::exception& e) {
        copy_msg(err_buf, err_cap, e.what());
        return CEU_CONFIG_ERROR;
    } catch (...) {
        copy_msg(err_buf, err_cap, "unknown error");
        return CEU_INTERNAL_ERROR;
    }
}

} // namespace

extern "C" {

const char* ceu_version(void) { return "1.0.0"; }

ceu_status ceu_open(const char* config_path, ceu_experiment** out, char* err_buf,
                    size_t err_cap) {
    return open_impl(out, err_buf, err_cap, true, config_path);
}

ceu_status ceu_open_json(const char* json_text, ceu_experiment** out, char* err_buf,
                         size_t err_cap) {
    return open_impl(out, err_buf, err_cap, false, json_text);
}

void ceu_close(ceu_experiment* exp) { delete exp; }

ceu_status ceu_validate(ceu_experiment* exp) {
    if (!exp) return CEU_INVALID_ARGUMENT;
    try {
        ValidationReport rep = validate(exp->config);
        exp->last_error = rep.to_string();
        return rep.ok() ? CEU_OK : CEU_CONFIG_ERROR;
    } catch (const std::exception& e) {
        exp->last_error = e.what();
        return CEU_INTERNAL_ERROR;
    }
}

ceu_status ceu_run(ceu_experiment* exp, const char* out_dir, int threads, double tolerance,
                   const char* format) {
    if (!exp || !out_dir) return CEU_INVALID_ARGUMENT;
    RunOptions opts;
    opts.out_dir = out_dir;
    opts.threads = threads > 0 ? threads : 0;
    if (tolerance >= 0.0) opts.tolerance_override = tolerance;
    if (format) {
        const std::string f = format;
        if (f != "csv" && f != "json" && f != "both") return CEU_INVALID_ARGUMENT;
        opts.format = f;
    }
    try {
        exp->last_run = run(exp->config, opts);
        exp->last_log = exp->last_run.log;
        exp->last_error.clear();
        switch (exp->last_run.exit_code) {
            case exit_ok: return CEU_OK;
            case exit_margin_violation: return CEU_MARGIN_VIOLATION;
            case exit_config_error: return CEU_CONFIG_ERROR;
            case exit_coverage_error: return CEU_COVERAGE_ERROR;
            default: return CEU_IO_ERROR;
        }
    } catch (const std::exception& e) {
        exp->last_error = e.what();
        return CEU_INTERNAL_ERROR;
    }
}

size_t ceu_row_count(const ceu_experiment* exp) {
    return exp ? exp->last_run.rows.size() : 0;
}

ceu_status ceu_get_row(const ceu_experiment* exp, size_t index, ceu_row* out) {
    if (!exp || !out || index >= exp->last_run.rows.size()) return CEU_INVALID_ARGUMENT;
    const ResultRow& r = exp->last_run.rows[index];
    out->index = r.index;
    out->alpha = r.alpha;
    out->beta = r.beta;
    out->width_f = r.width_f;
    out->width_g = r.width_g;
    out->dzeta = r.dzeta;
    out->dxi = r.dxi;
    out->dim = r.dim;
    out->first = r.first;
    out->second = r.second;
    out->bound = r.bound;
    out->margin = r.margin;
    out->discarded = r.discarded;
    out->runtime_ms = r.runtime_ms;
    out->scenario = r.scenario.c_str();
    out->state = r.state.c_str();
    return CEU_OK;
}

const char* ceu_last_log(const ceu_experiment* exp) {
    return exp ? exp->last_log.c_str() : "";
}

const char* ceu_last_error(const ceu_experiment* exp) {
    return exp ? exp->last_error.c_str() : "";
}

ceu_status ceu_renyi_entropy(const double* probs, size_t count, double alpha, double* out) {
    if (!probs || count == 0 || !out) return CEU_INVALID_ARGUMENT;
    try {
        DiscreteDistribution p;
        p.probs.assign(probs, probs + count);
        const double v = renyi(p, alpha);
        if (!std::isfinite(v)) return CEU_INTERNAL_ERROR;
        *out = v;
        return CEU_OK;
    } catch (const std::exception&) {
        return CEU_INVALID_ARGUMENT;
    }
}

ceu_status ceu_kappa(double alpha, double* out) {
    if (!out) return CEU_INVALID_ARGUMENT;
    try {
        *out = EntropyOrderPair::from_alpha(alpha).kappa();
        return CEU_OK;
    } catch (const std::exception&) {
        return CEU_INVALID_ARGUMENT;
    }
}

} // extern "C"
