#ifndef CEU_H
#define CEU_H

/* C interface to the conjugate-entropy uncertainty library. All entry points
 * return a status code; rich results are read back through accessors on an
 * opaque experiment handle. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CEU_API __declspec(dllexport)
#else
#define CEU_API __attribute__((visibility("default")))
#endif

typedef enum ceu_status {
    CEU_OK = 0,
    CEU_MARGIN_VIOLATION = 1,
    CEU_CONFIG_ERROR = 2,
    CEU_COVERAGE_ERROR = 3,
    CEU_IO_ERROR = 4,
    CEU_INVALID_ARGUMENT = 5,
    CEU_INTERNAL_ERROR = 6,
} ceu_status;

typedef struct ceu_experiment ceu_experiment;

typedef struct ceu_row {
    int32_t index;
    double alpha;
    double beta;
    double width_f;
    double width_g;
    double dzeta;
    double dxi;
    int32_t dim;
    double first;
    double second;
    double bound;
    double margin;
    double discarded;
    double runtime_ms;
    const char* scenario; /* owned by the handle, valid until ceu_close */
    const char* state;
} ceu_row;

CEU_API const char* ceu_version(void);

/* Loads a JSON configuration file / parses JSON text. On failure *out is
 * NULL; pass a handle to ceu_last_error afterwards only when it exists, the
 * parse message is returned through err_buf when provided. */
CEU_API ceu_status ceu_open(const char* config_path, ceu_experiment** out, char* err_buf,
                            size_t err_cap);
CEU_API ceu_status ceu_open_json(const char* json_text, ceu_experiment** out, char* err_buf,
                                 size_t err_cap);
CEU_API void ceu_close(ceu_experiment* exp);

/* Schema/constraint validation without computation. Returns CEU_OK or
 * CEU_CONFIG_ERROR; the itemized report is fetched via ceu_last_error. */
CEU_API ceu_status ceu_validate(ceu_experiment* exp);

/* Runs the sweep and writes results.csv / results.json / run.log under
 * out_dir. threads <= 0 defers to the CEU_THREADS environment variable.
 * tolerance < 0 keeps the configured budget. format: "csv", "json", "both"
 * or NULL for both. */
CEU_API ceu_status ceu_run(ceu_experiment* exp, const char* out_dir, int threads,
                           double tolerance, const char* format);

CEU_API size_t ceu_row_count(const ceu_experiment* exp);
CEU_API ceu_status ceu_get_row(const ceu_experiment* exp, size_t index, ceu_row* out);

/* Log text of the last run / validation report; empty string before any. */
CEU_API const char* ceu_last_log(const ceu_experiment* exp);
CEU_API const char* ceu_last_error(const ceu_experiment* exp);

/* Convenience numerics, usable without a handle. Non-finite result reports
 * failure through the status code. */
CEU_API ceu_status ceu_renyi_entropy(const double* probs, size_t count, double alpha,
                                     double* out);
CEU_API ceu_status ceu_kappa(double alpha, double* out);

#ifdef __cplusplus
}
#endif

#endif /* CEU_H */
