#ifndef SFFT_SFFT_H
#define SFFT_SFFT_H

/* Stable C interface to the sparse Fourier library.
 *
 * Every function returns an sfft_status. On failure, sfft_last_error()
 * describes the most recent error on the calling thread. Strings handed out
 * through char** must be released with sfft_string_free; handles with their
 * matching destroy function. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SFFT_API __declspec(dllexport)
#elif defined(SFFT_BUILDING_LIBRARY)
#define SFFT_API __attribute__((visibility("default")))
#else
#define SFFT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sfft_status {
    SFFT_OK = 0,
    SFFT_INVALID_ARGUMENT = 1,
    SFFT_DOMAIN = 2,   /* non-coprime moduli, non-invertible element */
    SFFT_OVERFLOW = 3, /* value does not fit the integer width */
    SFFT_IO = 4,
    SFFT_PARSE = 5,
    SFFT_INVARIANT = 6,
    SFFT_INTERNAL = 7
} sfft_status;

typedef struct sfft_plan sfft_plan;
typedef struct sfft_signal sfft_signal;
typedef struct sfft_result sfft_result;

typedef enum sfft_window { SFFT_WINDOW_UNSIGNED = 0, SFFT_WINDOW_SIGNED = 1 } sfft_window;
typedef enum sfft_domain { SFFT_DOMAIN_SPECTRUM = 0, SFFT_DOMAIN_TIME = 1 } sfft_domain;
typedef enum sfft_mode { SFFT_MODE_VECTOR = 0, SFFT_MODE_FUNCTION = 1, SFFT_MODE_GRID = 2 } sfft_mode;

SFFT_API const char* sfft_last_error(void);
SFFT_API void sfft_string_free(char* s);

/* x in [0, prod moduli) with x = residues[i] mod moduli[i]; the product must fit 64 bits. */
SFFT_API sfft_status sfft_crt_combine(const uint64_t* residues, const uint64_t* moduli, size_t count,
                                      uint64_t* out);

SFFT_API sfft_status sfft_plan_create(uint64_t n, uint64_t sparsity, sfft_plan** out);
SFFT_API void sfft_plan_destroy(sfft_plan* plan);
SFFT_API sfft_status sfft_plan_total_measurements(const sfft_plan* plan, uint64_t* out);
SFFT_API sfft_status sfft_plan_to_json(const sfft_plan* plan, char** json);

/* Validates "exact:B=2", "algebraic:p=3,c=1" or "exponential:alpha=1,c=1" and
 * writes its canonical form. */
SFFT_API sfft_status sfft_model_parse(const char* text, char** canonical);

SFFT_API sfft_status sfft_signal_generate(uint64_t n, const char* model, uint64_t seed, sfft_window window,
                                          sfft_signal** out);
/* Copies n interleaved (re, im) pairs. */
SFFT_API sfft_status sfft_signal_from_arrays(const double* interleaved, uint64_t n, sfft_domain domain,
                                             sfft_window window, sfft_signal** out);
SFFT_API sfft_status sfft_signal_read_csv(const char* path, sfft_signal** out);
SFFT_API sfft_status sfft_signal_write_csv(const sfft_signal* signal, const char* path);
SFFT_API sfft_status sfft_signal_length(const sfft_signal* signal, uint64_t* out);
SFFT_API void sfft_signal_destroy(sfft_signal* signal);

typedef struct sfft_recover_options {
    size_t terms;           /* B, required */
    size_t bprime;          /* 0: derive */
    double c;               /* 0: default */
    double delta;           /* 0: unused; otherwise parameters come from the model class */
    const char* model;      /* class of a generated signal, needed with delta; may be NULL */
    sfft_mode mode;
    unsigned kappa;         /* 0: 8 */
    unsigned threads;       /* 0: 1 */
    int keep_measurements;  /* nonzero keeps the bins for sfft_result_measurements_json */
} sfft_recover_options;

SFFT_API void sfft_recover_options_init(sfft_recover_options* options);
SFFT_API sfft_status sfft_recover(const sfft_signal* signal, const sfft_recover_options* options,
                                  sfft_result** out);
SFFT_API sfft_status sfft_result_term_count(const sfft_result* result, size_t* out);
SFFT_API sfft_status sfft_result_term(const sfft_result* result, size_t index, int64_t* omega, double* re,
                                      double* im);
/* Representation, report and (for signals small enough) the oracle comparison. */
SFFT_API sfft_status sfft_result_to_json(const sfft_result* result, int include_timings, char** json);
SFFT_API sfft_status sfft_result_measurements_json(const sfft_result* result, char** json);
SFFT_API void sfft_result_destroy(sfft_result* result);

/* Whole-command entry points used by the command-line tool. */
typedef struct sfft_recover_request {
    const char* input_path; /* exactly one of input_path and model */
    const char* model;
    uint64_t n;
    uint64_t seed;
    sfft_window window;
    int mode; /* -1: default for the input, else an sfft_mode */
    size_t terms;
    size_t bprime; /* 0: derive */
    double c;      /* 0: default */
    double delta;  /* 0: unused */
    unsigned kappa;
    unsigned threads;
    int include_timings;
    const char* measurements_out; /* may be NULL */
} sfft_recover_request;

SFFT_API void sfft_recover_request_init(sfft_recover_request* request);
SFFT_API sfft_status sfft_recover_report(const sfft_recover_request* request, char** json);

SFFT_API sfft_status sfft_bench_csv(const char* size_list, uint64_t sparsity, size_t trials, uint64_t seed,
                                    unsigned threads, int plan_only, int include_timings, char** csv);
/* Runs the invariant suite; *all_passed is 1 when every suite passed. */
SFFT_API sfft_status sfft_verify(size_t trials, uint64_t seed, unsigned threads, char** summary, int* all_passed);
SFFT_API sfft_status sfft_demo_crt(char** transcript);

#ifdef __cplusplus
}
#endif

#endif
