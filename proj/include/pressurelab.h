/* C interface to the pressurelab library.
 *
 * Every function returns a plab_status. On failure a description of the
 * last error of the calling thread is available from plab_last_error().
 * Strings handed out by the library are released with plab_string_free().
 * Symbols and words are 1-based in all text produced here. */
#ifndef PRESSURELAB_H
#define PRESSURELAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PRESSURELAB_BUILD)
#    define PLAB_API __declspec(dllexport)
#  else
#    define PLAB_API __declspec(dllimport)
#  endif
#else
#  define PLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plab_status {
    PLAB_OK = 0,
    PLAB_E_INPUT = 1,
    PLAB_E_PARSE = 2,
    PLAB_E_PRECONDITION = 3,
    PLAB_E_DEGENERATE = 4,
    PLAB_E_SIZE = 5,
    PLAB_E_UNSUPPORTED = 6,
    PLAB_E_CONVERGENCE = 7,
    PLAB_E_IO = 8,
    PLAB_E_INTERNAL = 9
} plab_status;

typedef struct plab_system plab_system;

typedef struct plab_options {
    unsigned threads;      /* 0 selects PRESSURELAB_THREADS or 1 */
    uint64_t word_budget;  /* 0 selects the default */
} plab_options;

typedef struct plab_pressure {
    double q;
    double estimate;
    double lower;      /* NaN when absent */
    double upper;      /* NaN when absent */
    size_t n_used;
    int method;        /* 0 enumeration, 1 integer oracle, 2 closed form */
    int certified;
} plab_pressure;

typedef struct plab_h2 {
    int satisfied;
    int r;
    double b;
} plab_h2;

PLAB_API const char* plab_version(void);
PLAB_API const char* plab_last_error(void);
PLAB_API const char* plab_status_name(plab_status status);
PLAB_API void plab_string_free(char* s);

/* Systems */
PLAB_API plab_status plab_system_load(const char* path, plab_system** out);
PLAB_API plab_status plab_system_parse(const char* json_text, plab_system** out);
PLAB_API plab_status plab_system_demo(const char* name, plab_system** out);
PLAB_API void plab_system_free(plab_system* sys);
PLAB_API int plab_system_alphabet(const plab_system* sys);
PLAB_API int plab_system_dim(const plab_system* sys);
PLAB_API int plab_system_depth(const plab_system* sys);
PLAB_API plab_status plab_system_to_json(const plab_system* sys, char** out);
/* Comma-separated demo names. Static storage. */
PLAB_API const char* plab_demo_names(void);

/* Checks */
PLAB_API plab_status plab_primitivity(const plab_system* sys, int* primitive, int* exponent);
PLAB_API plab_status plab_check_h2(const plab_system* sys, int r_max, plab_h2* out);
PLAB_API plab_status plab_check_report(const plab_system* sys, const plab_options* opts, char** report,
                                       int* primitive);

/* Pressure */
PLAB_API plab_status plab_partition_sum_log(const plab_system* sys, size_t n, double q, const plab_options* opts,
                                            double* log_value);
PLAB_API plab_status plab_pressure_estimate(const plab_system* sys, size_t n, double q, const plab_options* opts,
                                            plab_pressure* out);
PLAB_API plab_status plab_pressure_exact(const plab_system* sys, int q, plab_pressure* out);
/* Curve over qmin..qmax in steps of qstep; CSV with a trailing discrepancy
 * column at integer q. */
PLAB_API plab_status plab_pressure_csv(const plab_system* sys, double qmin, double qmax, double qstep, size_t n,
                                       const plab_options* opts, char** csv);

/* Gibbs measures */
PLAB_API plab_status plab_gibbs_csv(const plab_system* sys, size_t n, size_t N, double q,
                                    const plab_options* opts, char** table_csv, char** diagnostics_csv);
PLAB_API plab_status plab_sample_csv(const plab_system* sys, size_t n, double q, size_t count, uint64_t seed,
                                     const plab_options* opts, char** csv);

/* Multifractal spectrum */
PLAB_API plab_status plab_spectrum_csv(const plab_system* sys, double qmin, double qmax, double qstep, size_t n,
                                       double h, int closed_form, const plab_options* opts, char** csv);

/* Reports and plots */
PLAB_API plab_status plab_demo_report(const char* name, const plab_options* opts, char** report);
PLAB_API plab_status plab_plot_svg(const char* csv_text, char** svg);

#ifdef __cplusplus
}
#endif

#endif /* PRESSURELAB_H */
